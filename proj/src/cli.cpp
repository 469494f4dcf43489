#include "abeltrans/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "abeltrans/sweeps.hpp"
#include "abeltrans/transversals.hpp"
#include "json.hpp"

namespace abeltrans::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::int64_t parse_integer(const std::string& s) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) throw ParseError("not an integer: '" + s + "'");
  return v;
}

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  const auto n = parse_integer(v);
  if (n < 1) throw ParseError(std::string(name) + " must be positive");
  return static_cast<std::uint64_t>(n);
}

Json element_json(const GroupElement& x) { return Json(x.residues); }

Json elements_json(std::span<const GroupElement> xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(element_json(x));
  return a;
}

Json subgroup_json(const Subgroup& h) {
  Json j;
  j["order"] = h.order();
  j["invariants"] = std::vector<std::int64_t>(h.invariant_factors().begin(), h.invariant_factors().end());
  j["generators"] = elements_json(h.smith_generators());
  return j;
}

struct Problem {
  AbelianGroup group;
  std::vector<Subgroup> targets;
  std::vector<std::string> names;
};

GroupElement element_of(const AbelianGroup& g, const std::vector<std::int64_t>& v) {
  if (v.size() != g.rank()) {
    throw ParseError("element has " + std::to_string(v.size()) + " coordinates, the group has " +
                     std::to_string(g.rank()) + " factors");
  }
  return g.element(v);
}

Problem build(const ProblemSpec& spec) {
  if (spec.orders.empty()) throw ParseError("no group given (--group or --input)");
  for (auto n : spec.orders) {
    if (n < 2) throw ParseError("cyclic factor orders must be at least 2");
  }
  Problem p{AbelianGroup(spec.orders), {}, {}};
  for (const auto& s : spec.subgroups) {
    if (std::find(p.names.begin(), p.names.end(), s.name) != p.names.end()) {
      throw ParseError("subgroup " + s.name + " given twice");
    }
    std::vector<GroupElement> gens;
    for (const auto& v : s.generators) gens.push_back(element_of(p.group, v));
    p.targets.push_back(Subgroup::generated(p.group, gens));
    p.names.push_back(s.name);
  }
  return p;
}

void need_subgroups(const Problem& p, std::size_t n, const std::string& task) {
  if (p.targets.size() != n) {
    throw ParseError(task + " needs exactly " + std::to_string(n) + " subgroup" + (n == 1 ? "" : "s"));
  }
}

void need_some(const Problem& p, const std::string& task) {
  if (p.targets.empty()) throw ParseError(task + " needs at least one subgroup");
}

Json report(const std::string& task) {
  Json r;
  r["task"] = task;
  r["verdict"] = nullptr;
  r["case_tag"] = nullptr;
  r["witness"] = nullptr;
  r["certificate"] = nullptr;
  return r;
}

Json transversal_certificate(std::span<const GroupElement> t, std::span<const Subgroup> targets) {
  auto cert = verify_transversal(t, targets);
  Json c;
  c["verified"] = true;
  c["index"] = targets.front().index();
  c["coset_labels"] = cert.coset_labels;
  return c;
}

Json diagnosis_json(const ThreeCyclicDiagnosis& d) {
  Json c;
  c["order"] = d.order;
  c["n"] = d.n;
  c["m"] = d.m;
  c["k"] = d.k;
  c["sylow_intersection"] = subgroup_json(d.sylow_intersection);
  c["quotient_invariants"] = d.quotient_invariants;
  return c;
}

bool three_cyclic(const std::vector<Subgroup>& t) {
  return t.size() == 3 && std::all_of(t.begin(), t.end(), [&](const Subgroup& h) {
           return h.is_cyclic() && h.order() == t.front().order();
         });
}

struct Construction {
  std::string method;
  std::optional<ThreeCyclicDiagnosis> diagnosis;
  /// Absent when the diagnosis rules a transversal out.
  std::optional<std::vector<GroupElement>> elements;
};

std::vector<GroupElement> pair_transversal(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) throw PreconditionError("the two subgroups have different orders");
  std::vector<Subgroup> pair{a, b};
  auto q = reduce_mod_common(pair, intersect(a, b));
  std::vector<Subgroup> rest{q.targets()[1]};
  std::vector<GroupElement> zero{q.quotient().group().zero()};
  return q.pullback(extend_by_direct_factor(q.targets()[0], rest, zero));
}

bool homocyclic_family(const std::vector<Subgroup>& t) {
  const auto f = t.front().invariant_factors();
  if (f.empty() || f.front() != f.back()) return false;
  for (const auto& h : t) {
    if (!std::ranges::equal(h.invariant_factors(), f)) return false;
  }
  return factorize(static_cast<std::uint64_t>(t.front().order())).front().prime >= t.size();
}

Construction construct_family(const std::vector<Subgroup>& t) {
  Construction c;
  if (three_cyclic(t)) {
    c.method = "three-cyclic";
    c.diagnosis = decide_three_cyclic(t[0], t[1], t[2]);
    if (c.diagnosis->exists) c.elements = construct_three_cyclic(t[0], t[1], t[2]);
  } else if (t.size() == 1) {
    c.method = "single";
    c.elements = lift_transversal(std::vector<GroupElement>{t[0].ambient().zero()}, t[0], t);
  } else if (t.size() == 2) {
    c.method = "pair";
    c.elements = pair_transversal(t[0], t[1]);
  } else if (homocyclic_family(t)) {
    c.method = "homocyclic";
    c.elements = homocyclic_common_transversal(t);
  } else {
    throw PreconditionError("no construction covers this family; the oracle task searches exhaustively");
  }
  return c;
}

int task_decide(const Problem& p, Json& r) {
  need_subgroups(p, 3, "decide");
  const auto d = decide_three_cyclic(p.targets[0], p.targets[1], p.targets[2]);
  r["verdict"] = d.exists ? "exists" : "not-exists";
  r["case_tag"] = d.case_tag;
  if (auto o = detect_obstruction(p.targets[0], p.targets[1], p.targets[2])) {
    r["witness"] = elements_json(o->involutions);
  }
  r["certificate"] = diagnosis_json(d);
  return 0;
}

int task_construct(const Problem& p, Json& r) {
  need_some(p, "construct");
  const auto c = construct_family(p.targets);
  r["method"] = c.method;
  if (c.diagnosis) {
    r["case_tag"] = c.diagnosis->case_tag;
  }
  if (!c.elements) {
    r["verdict"] = "not-exists";
    auto o = detect_obstruction(p.targets[0], p.targets[1], p.targets[2]);
    if (o) r["witness"] = elements_json(o->involutions);
    r["certificate"] = diagnosis_json(*c.diagnosis);
    return 0;
  }
  r["verdict"] = "exists";
  r["size"] = c.elements->size();
  r["witness"] = elements_json(*c.elements);
  r["certificate"] = transversal_certificate(*c.elements, p.targets);
  return 0;
}

int task_construct_complement(const Problem& p, Json& r) {
  need_some(p, "construct-complement");
  const auto k = common_complement(p.targets);
  Json checks = Json::array();
  for (const auto& a : p.targets) {
    ComplementCertificate cert{a, k, p.group};
    if (!cert.check()) throw InternalError("common complement failed its certificate");
    checks.push_back(true);
  }
  r["verdict"] = "exists";
  r["witness"] = elements_json(k.smith_generators());
  Json c;
  c["complement"] = subgroup_json(k);
  c["checks"] = checks;
  r["certificate"] = c;
  return 0;
}

int task_count_complements(const ProblemSpec& spec, const Problem& p, Json& r) {
  need_subgroups(p, 1, "count-complements");
  const auto& a = p.targets[0];
  const auto w = is_complemented(a);
  if (!w) {
    r["verdict"] = "not-complemented";
    r["count"] = 0;
    return 0;
  }
  r["verdict"] = "complemented";
  r["count"] = count_complements(a);
  r["witness"] = elements_json(w->certificate.complement.smith_generators());
  Json c;
  c["projection"] = w->projection.index_set;
  c["complement"] = subgroup_json(w->certificate.complement);
  r["certificate"] = c;
  if (spec.list) {
    Json all = Json::array();
    for (const auto& k : enumerate_complements(a, spec.hom_cap)) all.push_back(subgroup_json(k));
    r["complements"] = all;
  }
  return 0;
}

int task_count_common(const ProblemSpec& spec, const Problem& p, Json& r) {
  need_some(p, "count-common");
  std::int64_t count = 0;
  if (!spec.direct.empty()) {
    const auto it = std::find(p.names.begin(), p.names.end(), spec.direct);
    if (it == p.names.end()) throw ParseError("--direct names no given subgroup: " + spec.direct);
    const auto bi = static_cast<std::size_t>(it - p.names.begin());
    std::vector<Subgroup> as;
    for (std::size_t i = 0; i < p.targets.size(); ++i) {
      if (i != bi) as.push_back(p.targets[i]);
    }
    r["method"] = "direct";
    count = count_common_complements_direct(as, p.targets[bi], spec.hom_cap);
  } else if (p.targets.size() == 2) {
    r["method"] = "two-cyclic-maximal";
    count = count_common_two_cyclic_maximal(p.targets[0], p.targets[1]);
  } else {
    throw PreconditionError("count-common needs --direct or exactly two cyclic subgroups of maximal order");
  }
  r["verdict"] = count > 0 ? "exists" : "not-exists";
  r["count"] = count;
  return 0;
}

std::string kind_name(VerificationError::Kind k) {
  switch (k) {
    case VerificationError::Kind::cardinality: return "cardinality";
    case VerificationError::Kind::unequal_index: return "unequal-index";
    case VerificationError::Kind::outside_universe: return "outside-universe";
    case VerificationError::Kind::duplicate_coset: return "duplicate-coset";
  }
  return "unknown";
}

int task_verify(const ProblemSpec& spec, const Problem& p, Json& r) {
  need_some(p, "verify");
  if (spec.elements.empty()) throw ParseError("verify needs --elements");
  std::vector<GroupElement> t;
  for (const auto& v : spec.elements) t.push_back(element_of(p.group, v));
  r["witness"] = elements_json(t);
  try {
    r["certificate"] = transversal_certificate(t, p.targets);
    r["verdict"] = "valid";
  } catch (const VerificationError& e) {
    r["verdict"] = "invalid";
    Json c;
    c["reason"] = kind_name(e.kind());
    c["message"] = e.what();
    if (e.kind() == VerificationError::Kind::duplicate_coset) {
      c["target"] = p.names[e.target()];
      c["pair"] = elements_json(std::vector<GroupElement>{e.first(), e.second()});
    }
    r["certificate"] = c;
  }
  return 0;
}

int task_oracle(const ProblemSpec& spec, const Problem& p, Json& r) {
  need_some(p, "oracle");
  OracleOptions options;
  options.cap = spec.oracle_cap;
  const auto t = oracle_common_transversal(p.targets, options);
  r["verdict"] = t ? "exists" : "not-exists";
  if (t) {
    r["witness"] = elements_json(*t);
    r["certificate"] = transversal_certificate(*t, p.targets);
  } else {
    Json c;
    c["search"] = "exhausted";
    r["certificate"] = c;
  }
  if (std::all_of(p.targets.begin(), p.targets.end(),
                  [&](const Subgroup& h) { return h.order() == p.targets.front().order(); })) {
    r["common_complements"] = oracle_common_complements(p.targets, spec.oracle_cap).size();
  }
  return 0;
}

int task_compare(const ProblemSpec& spec, const Problem& p, Json& r) {
  need_some(p, "compare");
  const auto c = construct_family(p.targets);
  OracleOptions options;
  options.cap = spec.oracle_cap;
  const auto o = oracle_common_transversal(p.targets, options);
  bool agree = c.elements.has_value() == o.has_value();

  Json constructive;
  constructive["method"] = c.method;
  constructive["verdict"] = c.elements ? "exists" : "not-exists";
  if (c.elements) {
    constructive["size"] = c.elements->size();
    transversal_certificate(*c.elements, p.targets);
    constructive["verified"] = true;
  }
  Json exhaustive;
  exhaustive["verdict"] = o ? "exists" : "not-exists";
  if (o) exhaustive["size"] = o->size();
  Json cert;
  cert["constructive"] = constructive;
  cert["oracle"] = exhaustive;
  if (p.targets.size() == 1) {
    const auto scan = static_cast<std::int64_t>(oracle_common_complements(p.targets, spec.oracle_cap).size());
    const std::int64_t formula = is_complemented(p.targets[0]) ? count_complements(p.targets[0]) : 0;
    Json counts;
    counts["formula"] = formula;
    counts["oracle"] = scan;
    cert["complements"] = counts;
    agree = agree && formula == scan;
  }
  r["verdict"] = agree ? "agree" : "disagree";
  if (c.diagnosis) r["case_tag"] = c.diagnosis->case_tag;
  if (c.elements) r["witness"] = elements_json(*c.elements);
  r["certificate"] = cert;
  return agree ? 0 : 4;
}

int task_sweep(const ProblemSpec& spec, Json& r) {
  SweepReport s;
  if (spec.family == "three-cyclic" || spec.family == "three-cyclic-2-groups") {
    if (spec.max_order < 1) throw ParseError("sweep needs --max-order");
    ThreeCyclicSweepOptions o;
    o.two_groups_only = spec.family == "three-cyclic-2-groups";
    o.construct = spec.construct;
    o.cap = spec.oracle_cap;
    s = sweep_three_cyclic(spec.max_order, o);
  } else if (spec.family == "complements") {
    if (spec.max_order < 1) throw ParseError("sweep needs --max-order");
    ComplementSweepOptions o;
    o.cap = std::max<std::uint64_t>(spec.oracle_cap, static_cast<std::uint64_t>(spec.max_order));
    s = sweep_complements(spec.max_order, o);
  } else if (spec.family == "maximal-cyclic") {
    if (!is_prime(static_cast<std::uint64_t>(spec.prime))) throw ParseError("--prime must be prime");
    if (spec.max_exponent < 1) throw ParseError("sweep needs --max-exponent");
    s = sweep_maximal_cyclic(spec.prime, spec.max_exponent);
  } else {
    throw ParseError("unknown sweep family: " + spec.family);
  }
  r["verdict"] = s.disagreements == 0 ? "agree" : "disagree";
  r["witness"] = s.failures;
  Json c;
  c["family"] = s.family;
  c["max_order"] = s.max_order;
  c["groups"] = s.groups;
  c["instances"] = s.instances;
  c["disagreements"] = s.disagreements;
  c["tally"] = s.tally;
  r["certificate"] = c;
  return s.disagreements == 0 ? 0 : 4;
}

bool is_element_list(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  return std::all_of(v.begin(), v.end(), [](const Json& e) {
    return e.is_array() && std::all_of(e.begin(), e.end(), [](const Json& x) { return x.is_number_integer(); });
  });
}

void render_text(const Json& r, std::ostream& out) {
  for (const auto& [key, value] : r.items()) {
    if (value.is_null()) continue;
    out << key << ":";
    if (value.is_string()) {
      out << " " << value.get<std::string>();
    } else if (is_element_list(value)) {
      for (const auto& e : value) {
        out << " (";
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i].get<std::int64_t>();
        out << ")";
      }
    } else {
      out << " " << value.dump();
    }
    out << "\n";
  }
}

}  // namespace

std::vector<std::int64_t> parse_vector(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_integer(part));
  return out;
}

std::vector<std::vector<std::int64_t>> parse_vectors(const std::string& text) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& part : split(text, ';')) out.push_back(parse_vector(part));
  return out;
}

NamedSubgroup parse_named(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ParseError("subgroup must look like NAME=g1;g2, got '" + text + "'");
  NamedSubgroup s{trim(text.substr(0, eq)), {}};
  if (s.name.empty()) throw ParseError("empty subgroup name in '" + text + "'");
  s.generators = parse_vectors(text.substr(eq + 1));
  return s;
}

void load_document(const std::string& path, ProblemSpec& spec) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    const Json doc = Json::parse(in);
    if (!doc.is_object()) throw ParseError(path + ": expected one object");
    spec.orders = doc.at("orders").get<std::vector<std::int64_t>>();
    if (doc.contains("subgroups")) {
      for (const auto& [name, gens] : doc.at("subgroups").items()) {
        spec.subgroups.push_back({name, gens.get<std::vector<std::vector<std::int64_t>>>()});
      }
    }
    if (doc.contains("elements")) spec.elements = doc.at("elements").get<std::vector<std::vector<std::int64_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

int execute(const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
  Json r = report(spec.task);
  int status = 0;
  try {
    if (spec.task == "sweep") {
      status = task_sweep(spec, r);
    } else {
      const Problem p = build(spec);
      if (spec.task == "decide") status = task_decide(p, r);
      else if (spec.task == "construct") status = task_construct(p, r);
      else if (spec.task == "construct-complement") status = task_construct_complement(p, r);
      else if (spec.task == "count-complements") status = task_count_complements(spec, p, r);
      else if (spec.task == "count-common") status = task_count_common(spec, p, r);
      else if (spec.task == "verify") status = task_verify(spec, p, r);
      else if (spec.task == "oracle") status = task_oracle(spec, p, r);
      else if (spec.task == "compare") status = task_compare(spec, p, r);
      else throw ParseError("unknown task: " + spec.task);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "internal: " << e.what() << "\n";
    return 4;
  }
  if (spec.json) {
    out << r.dump(2) << "\n";
  } else {
    render_text(r, out);
  }
  if (status == 4) err << "internal: constructive and exhaustive results disagree\n";
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ProblemSpec spec;
  std::string group, elements, input;
  std::vector<std::string> subs;

  CLI::App app{"Common transversals and complements in finite abelian groups", "abeltrans"};
  app.require_subcommand(1);
  auto instance = [&](const std::string& name, const std::string& about) {
    auto* sc = app.add_subcommand(name, about);
    sc->add_option("--group", group, "cyclic factor orders, e.g. 4,2");
    sc->add_option("--sub", subs, "named subgroup, e.g. A=1,0;0,1")->take_all();
    sc->add_option("--input", input, "JSON document with orders, subgroups and elements");
    sc->add_flag("--json", spec.json, "machine-readable output");
    return sc;
  };
  instance("decide", "decide whether three cyclic subgroups of equal order share a transversal");
  instance("construct", "build and verify a common transversal");
  instance("construct-complement", "build and verify a common complement");
  instance("count-complements", "count the complements of one subgroup")
      ->add_flag("--list", spec.list, "also list every complement");
  instance("count-common", "count common complements")
      ->add_option("--direct", spec.direct, "name of B in G = A_1 x ... x A_t x B");
  instance("verify", "check a candidate common transversal")
      ->add_option("--elements", elements, "elements, e.g. 0,0;1,1");
  instance("oracle", "exhaustive search for a common transversal");
  instance("compare", "run a construction and the exhaustive search and compare");
  auto* sweep = app.add_subcommand("sweep", "exhaustive family runs");
  sweep->add_option("--family", spec.family, "three-cyclic, three-cyclic-2-groups, complements, maximal-cyclic")
      ->required();
  sweep->add_option("--max-order", spec.max_order, "largest group order");
  sweep->add_option("--prime", spec.prime, "prime for maximal-cyclic");
  sweep->add_option("--max-exponent", spec.max_exponent, "largest exponent for maximal-cyclic");
  bool no_construct = false;
  sweep->add_flag("--no-construct", no_construct, "skip building transversals");
  sweep->add_flag("--json", spec.json, "machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    spec.task = app.get_subcommands().front()->get_name();
    spec.construct = !no_construct;
    spec.oracle_cap = env_cap("ABELTRANS_CAP", kDefaultOracleCap);
    spec.hom_cap = env_cap("ABELTRANS_ENUM_CAP", kDefaultHomCap);
    if (!input.empty()) {
      if (!group.empty() || !subs.empty()) throw ParseError("--input excludes --group and --sub");
      load_document(input, spec);
    } else if (!group.empty()) {
      spec.orders = parse_vector(group);
    }
    for (const auto& s : subs) spec.subgroups.push_back(parse_named(s));
    if (!elements.empty()) spec.elements = parse_vectors(elements);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return execute(spec, out, err);
}

}  // namespace abeltrans::cli
