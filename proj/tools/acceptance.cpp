#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "abeltrans/cli.hpp"
#include "abeltrans/complements.hpp"
#include "abeltrans/families.hpp"
#include "abeltrans/oracle.hpp"
#include "abeltrans/sweeps.hpp"
#include "abeltrans/transversals.hpp"

using namespace abeltrans;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

struct Settings {
  bool quick = false;
  std::int64_t three_cyclic_order = 64;
  std::int64_t complement_order = 256;
  std::size_t subgroup_limit = 5000;
  std::size_t sample_per_type = 16;
  unsigned exponent_2 = 6;
  unsigned exponent_3 = 5;
  int samples = 200;
};

Subgroup cyc(const AbelianGroup& g, const GroupElement& x) { return Subgroup::generated(g, {x}); }

std::int64_t count(const SweepReport& r, const std::string& key) {
  const auto it = r.tally.find(key);
  return it == r.tally.end() ? 0 : it->second;
}

std::string tally(const SweepReport& r) {
  std::ostringstream s;
  s << r.groups << " groups, " << r.instances << " instances, " << r.disagreements << " disagreements";
  return s.str();
}

std::string first_failure(const SweepReport& r) { return r.failures.empty() ? "" : "; first: " + r.failures.front(); }

bool valid(std::span<const GroupElement> t, std::span<const Subgroup> targets) {
  try {
    verify_transversal(t, targets);
    return true;
  } catch (const VerificationError&) {
    return false;
  }
}

struct Triple {
  AbelianGroup g;
  GroupElement a, b, c;
};

/// |<a>| = p^n, pairwise trivial intersections, |<a> & <b,c>| = p^m, G = <a,b,c>.
Triple standard_triple(std::int64_t p, unsigned n, unsigned m) {
  const std::int64_t pn = checked_pow(p, n);
  if (m == n) return {AbelianGroup{pn, pn}, {1, 1}, {1, 0}, {0, 1}};
  if (m == 0) return {AbelianGroup{pn, pn, pn}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  return {AbelianGroup{pn, pn, checked_pow(p, n - m)}, {1, 1, 1}, {1, 0, 0}, {0, 1, 0}};
}

Result klein() {
  const AbelianGroup g{2, 2};
  const std::vector<Subgroup> t{cyc(g, {1, 0}), cyc(g, {0, 1}), cyc(g, {1, 1})};
  const auto start = std::chrono::steady_clock::now();
  const auto d = decide_three_cyclic(t[0], t[1], t[2]);
  const bool oracle = oracle_common_transversal(t).has_value();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream s;
  s << "decide " << (d.exists ? "exists" : "not-exists") << ", oracle " << (oracle ? "exists" : "not-exists") << ", "
    << ms << " ms";
  return {!d.exists && !oracle && ms < 1000, s.str()};
}

Result three_cyclic(const Settings& set) {
  const auto r = sweep_three_cyclic(set.three_cyclic_order);
  std::ostringstream s;
  s << "order <= " << set.three_cyclic_order << ": " << tally(r) << ", " << count(r, "constructed")
    << " constructions verified" << first_failure(r);
  return {r.disagreements == 0, s.str()};
}

Result case_table() {
  Result res;
  int rows = 0;
  auto bad = [&](const std::string& what) {
    res.pass = false;
    if (res.detail.empty()) res.detail = "failed: " + what;
  };
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned m = 0; m <= n; ++m) {
      const auto t = standard_triple(2, n, m);
      const std::vector<Subgroup> abc{cyc(t.g, t.a), cyc(t.g, t.b), cyc(t.g, t.c)};
      const auto d = decide_three_cyclic(abc[0], abc[1], abc[2]);
      const std::string label = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " k=0";
      ++rows;
      if (d.m != m || d.n != n || d.k != 0) bad(label + " diagnosis");
      if (m == 0) {
        const auto k = Subgroup::generated(t.g, {t.g.add(t.a, t.c), t.g.add(t.b, t.c)});
        for (const auto& h : abc) {
          if (!is_complement_pair(h, k)) bad(label + " <a+c, b+c>");
        }
      } else if (m == n) {
        if (d.exists || oracle_common_transversal(abc).has_value()) bad(label + " oracle");
      } else {
        if (!oracle_common_complements(abc).empty()) bad(label + " common complement found");
        const auto y = construct_Y_2group(t.a, t.b, t.c, n, m, t.g);
        if (y.size() != (std::size_t{1} << (2 * n - m)) || !valid(y, abc)) bad(label + " Y");
      }
    }
    // k > 0: G = C_{2^n}^2 x C_{2^(n-k)}, C = <(0,1,1)> meets B in order 2^k.
    for (unsigned k = 1; k <= n; ++k) {
      const std::int64_t pn = std::int64_t{1} << n;
      const AbelianGroup g = k == n ? AbelianGroup{pn, pn} : AbelianGroup{pn, pn, std::int64_t{1} << (n - k)};
      auto e = [&](std::vector<std::int64_t> v) {
        v.resize(g.rank());
        return cyc(g, g.element(v));
      };
      const std::vector<Subgroup> abc{e({1, 0, 0}), e({0, 1, 0}), e({0, 1, 1})};
      const std::string label = "n=" + std::to_string(n) + " m=0 k=" + std::to_string(k);
      ++rows;
      if (static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(intersect(abc[1], abc[2]).order()))) != k) {
        bad(label + " realization");
      }
      if (oracle_common_complements(abc).empty()) bad(label + " no common complement");
      if (!valid(construct_three_cyclic(abc[0], abc[1], abc[2]), abc)) bad(label + " construction");
    }
  }
  if (res.pass) res.detail = std::to_string(rows) + " (n, m, k) rows with n <= 3 reproduced";
  return res;
}

struct MaximalRuns {
  SweepReport two, three;
};

MaximalRuns maximal_runs(const Settings& set) {
  return {sweep_maximal_cyclic(2, set.exponent_2), sweep_maximal_cyclic(3, set.exponent_3)};
}

Result counting(const Settings& set, const MaximalRuns& mr) {
  ComplementSweepOptions o;
  o.subgroup_limit = set.subgroup_limit;
  o.sample_per_type = set.sample_per_type;
  const auto r = sweep_complements(set.complement_order, o);
  const auto pairs = count(mr.two, "pairs") + count(mr.three, "pairs");
  const bool pass = r.disagreements == 0 && mr.two.disagreements == 0 && mr.three.disagreements == 0;
  std::ostringstream s;
  s << "order <= " << set.complement_order << ": " << tally(r) << ", " << count(r, "complemented")
    << " complemented, " << count(r, "complements enumerated") << " complements enumerated";
  if (auto it = r.tally.find("sampled groups"); it != r.tally.end()) {
    s << "; " << it->second << " groups with over " << set.subgroup_limit
      << " subgroups reduced to every complemented isomorphism type plus " << set.sample_per_type
      << " evenly spaced per type ("
      << count(r, "subgroups skipped") << " Aut-equivalent subgroups skipped)";
  }
  s << "; maximal cyclic pairs: " << pairs << " in p-groups up to 2^" << set.exponent_2 << " and 3^"
    << set.exponent_3 << first_failure(r) << first_failure(mr.two) << first_failure(mr.three);
  return {pass, s.str()};
}

Result bounds(const MaximalRuns& mr) {
  Result res;
  res.pass = mr.two.disagreements == 0 && mr.three.disagreements == 0;
  const auto sharp = count(mr.two, "proportion sharp") + count(mr.three, "proportion sharp");
  res.pass = res.pass && sharp > 0;
  std::ostringstream s;
  s << count(mr.two, "families exhaustive") + count(mr.three, "families exhaustive") << " families exhaustive, "
    << count(mr.two, "families sampled") + count(mr.three, "families sampled") << " sampled, "
    << sharp << " pairs at phi(s)";
  for (std::int64_t p : {2, 3}) {
    const AbelianGroup g{p, p};
    std::vector<Subgroup> all = cyclic_subgroups(g, p);
    const bool none = !oracle_common_transversal(all).has_value();
    const auto bound = lower_bound_common_complements(p, p, static_cast<std::int64_t>(all.size()));
    res.pass = res.pass && all.size() == static_cast<std::size_t>(p + 1) && none && bound.num == 0;
    s << "; C" << p << "^2 with " << all.size() << " subgroups: " << (none ? "no transversal" : "transversal found");
  }
  res.detail = s.str();
  return res;
}

GroupElement random_element(const AbelianGroup& g, std::mt19937_64& rng) {
  std::vector<std::int64_t> v;
  for (auto n : g.orders()) v.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)));
  return g.element(v);
}

Subgroup random_subgroup(const AbelianGroup& g, std::size_t gens, std::mt19937_64& rng) {
  std::vector<GroupElement> xs;
  for (std::size_t i = 0; i < gens; ++i) xs.push_back(random_element(g, rng));
  return Subgroup::generated(g, xs);
}

/// t pairwise isomorphic complemented subgroups, or nothing after a bounded search.
std::optional<std::vector<Subgroup>> complemented_family(const AbelianGroup& g, std::size_t t,
                                                         std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    const std::size_t gens = 1 + rng() % g.rank();
    auto first = random_subgroup(g, gens, rng);
    if (first.is_trivial() || first.is_whole() || !is_complemented(first)) continue;
    std::vector<Subgroup> family{first};
    for (int tries = 0; tries < 400 && family.size() < t; ++tries) {
      auto h = random_subgroup(g, gens, rng);
      if (std::ranges::equal(h.invariant_factors(), first.invariant_factors()) &&
          std::find(family.begin(), family.end(), h) == family.end() && is_complemented(h)) {
        family.push_back(std::move(h));
      }
    }
    if (family.size() == t) return family;
  }
  return std::nullopt;
}

Result common_complements(const Settings& set) {
  std::mt19937_64 rng(7);
  std::vector<AbelianGroup> pool;
  for (std::int64_t p : {2, 3, 5}) {
    for (const auto& g : p_groups(p, 9)) {
      if (g.order() <= 729 && g.rank() <= 3) pool.push_back(g);
    }
  }
  int checked = 0, failures = 0;
  std::map<std::int64_t, int> by_prime;
  std::string first;
  while (checked < set.samples) {
    const auto& g = pool[rng() % pool.size()];
    const auto p = factorize(static_cast<std::uint64_t>(g.order())).front().prime;
    const std::size_t t = 1 + rng() % p;
    const auto family = complemented_family(g, t, rng);
    if (!family) continue;
    ++checked;
    ++by_prime[static_cast<std::int64_t>(p)];
    try {
      const auto k = common_complement(*family);
      for (const auto& a : *family) {
        if (!ComplementCertificate{a, k, g}.check()) throw InternalError("certificate failed");
      }
    } catch (const Error& e) {
      ++failures;
      if (first.empty()) first = to_string(g) + ": " + e.what();
    }
  }
  std::ostringstream s;
  s << checked << " instances (p=2: " << by_prime[2] << ", p=3: " << by_prime[3] << ", p=5: " << by_prime[5] << "), "
    << failures << " failures";
  if (!first.empty()) s << "; first: " << first;
  return {failures == 0, s.str()};
}

Result constructions(const Settings& set) {
  int verified = 0, confirmed = 0, failures = 0;
  std::string first;
  auto record = [&](const std::string& label, const std::vector<GroupElement>& t,
                    const std::vector<Subgroup>& targets) {
    bool ok = valid(t, targets);
    ++verified;
    if (ok && targets.front().ambient().order() <= 4096) {
      ok = oracle_common_transversal(targets).has_value();
      ++confirmed;
    }
    if (!ok) {
      ++failures;
      if (first.empty()) first = label;
    }
  };
  auto attempt = [&](const std::string& label, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      ++failures;
      if (first.empty()) first = label + ": " + e.what();
    }
  };

  for (std::int64_t p : {3, 5}) {
    for (unsigned n = 1; n <= 2; ++n) {
      for (unsigned m = 0; m <= n; ++m) {
        const auto t = standard_triple(p, n, m);
        const std::string label = "T_odd p=" + std::to_string(p) + " n=" + std::to_string(n) + " m=" + std::to_string(m);
        attempt(label, [&] {
          record(label, construct_T_odd(t.a, t.b, t.c, p, n, m, t.g), {cyc(t.g, t.a), cyc(t.g, t.b), cyc(t.g, t.c)});
        });
      }
    }
  }
  for (unsigned n = 2; n <= 4; ++n) {
    for (unsigned m = 1; m < n; ++m) {
      const auto t = standard_triple(2, n, m);
      const std::string label = "Y n=" + std::to_string(n) + " m=" + std::to_string(m);
      attempt(label, [&] {
        record(label, construct_Y_2group(t.a, t.b, t.c, n, m, t.g), {cyc(t.g, t.a), cyc(t.g, t.b), cyc(t.g, t.c)});
      });
    }
  }

  // G = C_q x H with A the first factor and B_i inside H.
  std::mt19937_64 rng(11);
  const auto hs = isomorphism_classes(set.quick ? 16 : 64);
  int extended = 0;
  for (const auto& h : hs) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto b1 = random_subgroup(h, 1, rng);
      if (b1.is_trivial()) continue;
      std::vector<Subgroup> downstairs{b1};
      for (int tries = 0; tries < 50 && downstairs.size() < 2; ++tries) {
        auto b = random_subgroup(h, 1, rng);
        if (b.order() == b1.order() && b != b1) downstairs.push_back(b);
      }
      std::vector<std::int64_t> orders{b1.order()};
      orders.insert(orders.end(), h.orders().begin(), h.orders().end());
      const AbelianGroup g(orders);
      auto embed = [&](const GroupElement& x) {
        std::vector<std::int64_t> v{0};
        v.insert(v.end(), x.residues.begin(), x.residues.end());
        return g.element(v);
      };
      std::vector<Subgroup> bs;
      for (const auto& b : downstairs) {
        std::vector<GroupElement> gens;
        for (const auto& x : b.smith_generators()) gens.push_back(embed(x));
        bs.push_back(Subgroup::generated(g, gens));
      }
      const auto a = Subgroup::generated(g, {g.unit(0)});
      const std::string label = "extend " + to_string(g);
      attempt(label, [&] {
        Subgroup x = bs.front();
        for (const auto& b : bs) x = join(x, b);
        // A common transversal of the B_i inside X, cut down from one in G.
        std::vector<GroupElement> tx{g.zero()};
        if (bs.size() == 2) {
          const auto q = reduce_mod_common(bs, intersect(bs[0], bs[1]));
          std::vector<Subgroup> rest{q.targets()[1]};
          std::vector<GroupElement> zero{q.quotient().group().zero()};
          tx = restrict_transversal(q.pullback(extend_by_direct_factor(q.targets()[0], rest, zero)), bs[0], x);
        }
        std::vector<Subgroup> targets{a};
        targets.insert(targets.end(), bs.begin(), bs.end());
        record(label, extend_by_direct_factor(a, bs, tx), targets);
        ++extended;
      });
    }
  }

  int homocyclic = 0;
  for (const auto& g : isomorphism_classes(set.quick ? 64 : 729)) {
    const auto p = factorize(static_cast<std::uint64_t>(g.order())).front().prime;
    for (int trial = 0; trial < 2; ++trial) {
      const std::size_t t = std::min<std::size_t>(p, 4);
      auto first_sub = random_subgroup(g, 1 + rng() % g.rank(), rng);
      const auto f = first_sub.invariant_factors();
      if (f.empty() || f.front() != f.back()) continue;
      std::vector<Subgroup> family{first_sub};
      for (int tries = 0; tries < 300 && family.size() < t; ++tries) {
        auto h = random_subgroup(g, f.size(), rng);
        if (std::ranges::equal(h.invariant_factors(), f) && std::find(family.begin(), family.end(), h) == family.end())
          family.push_back(std::move(h));
      }
      const std::string label = "homocyclic " + to_string(g);
      attempt(label, [&] { record(label, homocyclic_common_transversal(family), family); });
      ++homocyclic;
    }
  }

  std::ostringstream s;
  s << verified << " constructions verified (" << extended << " direct-factor, " << homocyclic
    << " homocyclic), " << confirmed << " confirmed by the oracle, " << failures << " failures";
  if (!first.empty()) s << "; first: " << first;
  return {failures == 0, s.str()};
}

Result sigma() {
  std::int64_t checks = 0;
  bool ok = true;
  for (unsigned n = 2; n <= 6; ++n) {
    for (unsigned m = 1; m < n; ++m) {
      const std::int64_t size = std::int64_t{1} << n, pr = std::int64_t{1} << (n - m);
      std::set<std::int64_t> image;
      for (std::int64_t i = 0; i < size; ++i) image.insert(sigma_permutation(n, m, i));
      ok = ok && image.size() == static_cast<std::size_t>(size) && *image.rbegin() == size - 1 && *image.begin() == 0;
      for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t v = i % pr; v < size; v += pr) {
          const auto lhs = (i - sigma_permutation(n, m, i)) - (v - sigma_permutation(n, m, v));
          ok = ok && lhs * pr == (i - v) * (pr - 1);
          ++checks;
        }
      }
    }
  }
  return {ok, "bijective for all 0 < m < n <= 6, " + std::to_string(checks) + " difference identities exact"};
}

Result determinism(const Settings& set) {
  const std::vector<std::vector<std::string>> runs{
      {"compare", "--json", "--group", "8,8,2", "--sub", "A=1,0,0", "--sub", "B=0,1,0", "--sub", "C=1,1,1"},
      {"compare", "--json", "--group", "4,2,2", "--sub", "A=1,1,0"},
      {"sweep", "--json", "--family", "three-cyclic", "--max-order", set.quick ? "16" : "32"},
      {"sweep", "--json", "--family", "complements", "--max-order", set.quick ? "16" : "64"},
  };
  for (const auto& args : runs) {
    std::ostringstream a, b, err;
    const int sa = cli::run(args, a, err);
    const int sb = cli::run(args, b, err);
    if (sa != 0 || sb != 0 || a.str() != b.str() || a.str().empty()) {
      return {false, "output differs or fails for: " + args[0] + " " + args[3]};
    }
  }
  return {true, std::to_string(runs.size()) + " compare/sweep invocations byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-9"};
  Settings set;
  std::vector<int> only;
  app.add_flag("--quick", set.quick, "smaller sizes, for smoke runs");
  app.add_option("--only", only, "criteria to run");
  CLI11_PARSE(app, argc, argv);
  if (set.quick) {
    set.three_cyclic_order = 16;
    set.complement_order = 32;
    set.exponent_2 = 4;
    set.exponent_3 = 3;
    set.samples = 40;
  }

  std::optional<MaximalRuns> mr;
  auto maximal = [&]() -> const MaximalRuns& {
    if (!mr) mr = maximal_runs(set);
    return *mr;
  };
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"Klein group negativity", [] { return klein(); }},
      {"three cyclic subgroups: decision vs oracle", [&] { return three_cyclic(set); }},
      {"2-group case table", [] { return case_table(); }},
      {"counting formulas", [&] { return counting(set, maximal()); }},
      {"lower and proportion bounds", [&] { return bounds(maximal()); }},
      {"common complement construction", [&] { return common_complements(set); }},
      {"transversal constructions", [&] { return constructions(set); }},
      {"sigma permutation", [] { return sigma(); }},
      {"determinism", [&] { return determinism(set); }},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && r.pass;
    std::cout << "criterion " << number << " " << (r.pass ? "PASS" : "FAIL") << " [" << criteria[i].first << "] "
              << r.detail << " (" << std::fixed << std::setprecision(1) << s << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
