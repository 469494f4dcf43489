#include "abeltrans/transversals.hpp"

#include <algorithm>
#include <map>

#include "abeltrans/complements.hpp"

namespace abeltrans {

namespace {

Subgroup cyclic(const AbelianGroup& g, const GroupElement& x) { return Subgroup::generated(g, {x}); }

std::vector<GroupElement> sorted(std::vector<GroupElement> xs) {
  std::sort(xs.begin(), xs.end());
  return xs;
}

// Verification of our own construction; a failure here is a bug.
void certify(std::span<const GroupElement> t, std::span<const Subgroup> targets,
             const std::optional<Subgroup>& universe = std::nullopt) {
  try {
    verify_transversal(t, targets, universe);
  } catch (const VerificationError& e) {
    throw InternalError(std::string("constructed set failed verification: ") + e.what());
  }
}

unsigned log_p(std::int64_t value, std::int64_t p) {
  unsigned e = 0;
  while (value % p == 0 && value > 1) {
    value /= p;
    ++e;
  }
  return e;
}

void validate_triple(const GroupElement& a, const GroupElement& b, const GroupElement& c, std::int64_t p, unsigned n,
                     unsigned m, const AbelianGroup& g) {
  for (const auto* x : {&a, &b, &c}) g.require(*x);
  const std::int64_t pn = checked_pow(p, n);
  for (const auto* x : {&a, &b, &c}) {
    if (g.element_order(*x) != pn) {
      throw PreconditionError("generator " + to_string(*x) + " does not have order " + std::to_string(pn));
    }
  }
  Subgroup sa = cyclic(g, a), sb = cyclic(g, b), sc = cyclic(g, c);
  if (!intersect(sa, sb).is_trivial() || !intersect(sa, sc).is_trivial() || !intersect(sb, sc).is_trivial()) {
    throw PreconditionError("the three cyclic subgroups must intersect pairwise trivially");
  }
  if (intersect(sa, join(sb, sc)).order() != checked_pow(p, m)) {
    throw PreconditionError("|<a> & <b,c>| is not " + std::to_string(p) + "^" + std::to_string(m));
  }
  if (!join(sa, join(sb, sc)).is_whole()) throw PreconditionError("the group must be generated by a, b and c");
}

struct Normalized {
  GroupElement b;
  GroupElement c;
};

// Generators b' = u b, c' = v c with p^r a = p^r (b' + c'), smallest exponents first.
Normalized normalize(const GroupElement& a, const GroupElement& b, const GroupElement& c, std::int64_t p, unsigned n,
                     unsigned m, const AbelianGroup& g) {
  if (m == 0) return {b, c};
  const std::int64_t pr = checked_pow(p, n - m);
  const std::int64_t pn = checked_pow(p, n);
  const GroupElement x = g.scale(pr, a);
  Subgroup sc = cyclic(g, c);
  for (std::int64_t beta = 0; beta < pn; ++beta) {
    GroupElement y = g.subtract(x, g.scale(beta, b));
    if (!sc.contains(y)) continue;
    std::int64_t gamma = 0;
    while (g.scale(gamma, c) != y) ++gamma;
    if (beta % pr != 0 || gamma % pr != 0 || (beta / pr) % p == 0 || (gamma / pr) % p == 0) {
      throw PreconditionError("normalization impossible: p^r a is not p^r times a sum of generators of B and C");
    }
    return {g.scale(beta / pr, b), g.scale(gamma / pr, c)};
  }
  throw PreconditionError("normalization impossible: p^r a is not in <b> + <c>");
}

std::vector<GroupElement> complement_elements(const Subgroup& h) { return elements_of(h); }

// Common transversal of three cyclic p-subgroups of equal order generating g
// with trivial triple intersection.
std::vector<GroupElement> prime_transversal(const AbelianGroup& g, const std::vector<Subgroup>& t, std::int64_t p) {
  if (t.front().is_trivial()) return {g.zero()};
  const unsigned n = log_p(t[0].order(), p);
  bool pairwise_trivial = true;
  for (std::size_t i = 0; i < 3; ++i) {
    pairwise_trivial = pairwise_trivial && intersect(t[(i + 1) % 3], t[(i + 2) % 3]).is_trivial();
  }
  if (!pairwise_trivial) return complement_elements(common_complement(t));
  const unsigned m = log_p(intersect(t[0], join(t[1], t[2])).order(), p);
  const auto& a = t[0].smith_generators().front();
  const auto& b = t[1].smith_generators().front();
  const auto& c = t[2].smith_generators().front();
  if (p != 2) return construct_T_odd(a, b, c, p, n, m, g);
  if (m == 0) {
    Subgroup h = Subgroup::generated(g, {g.add(a, c), g.add(b, c)});
    for (const auto& x : t) {
      if (!is_complement_pair(x, h)) throw InternalError("<a+c, b+c> is not a common complement");
    }
    return complement_elements(h);
  }
  if (m == n) throw InternalError("three cyclic 2-subgroups with m = n reached the construction");
  return construct_Y_2group(a, b, c, n, m, g);
}

}  // namespace

TransversalCertificate verify_transversal(std::span<const GroupElement> t, std::span<const Subgroup> targets,
                                          const std::optional<Subgroup>& universe) {
  if (targets.empty()) throw PreconditionError("at least one target subgroup required");
  const AbelianGroup& g = targets.front().ambient();
  const Subgroup u = universe ? *universe : Subgroup::whole(g);
  if (!(u.ambient() == g)) throw PreconditionError("universe lives in a different ambient group");
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (!u.contains(targets[j])) throw PreconditionError("target " + std::to_string(j) + " is not inside the universe");
  }
  const std::int64_t index = u.order() / targets.front().order();
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (u.order() / targets[j].order() != index) {
      throw VerificationError(VerificationError::Kind::unequal_index,
                              "target " + std::to_string(j) + " has a different index", j);
    }
  }
  if (static_cast<std::int64_t>(t.size()) != index) {
    throw VerificationError(VerificationError::Kind::cardinality, "expected " + std::to_string(index) +
                                                                      " elements, got " + std::to_string(t.size()));
  }
  for (const auto& x : t) {
    if (!g.contains(x) || !u.contains(x)) {
      throw VerificationError(VerificationError::Kind::outside_universe,
                              "element " + to_string(x) + " is outside the universe", 0, x);
    }
  }
  TransversalCertificate cert{{t.begin(), t.end()}, {targets.begin(), targets.end()}, g, {}};
  for (std::size_t j = 0; j < targets.size(); ++j) {
    std::vector<std::uint64_t> labels;
    std::map<std::uint64_t, std::size_t> first;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto label = targets[j].coset_index(t[i]);
      auto [it, fresh] = first.emplace(label, i);
      if (!fresh) {
        throw VerificationError(VerificationError::Kind::duplicate_coset,
                                "target " + std::to_string(j) + ": " + to_string(t[it->second]) + " and " +
                                    to_string(t[i]) + " lie in the same coset",
                                j, t[it->second], t[i]);
      }
      labels.push_back(label);
    }
    cert.coset_labels.push_back(std::move(labels));
  }
  return cert;
}

std::vector<GroupElement> restrict_transversal(std::span<const GroupElement> x, const Subgroup& a, const Subgroup& h) {
  if (!h.contains(a)) throw PreconditionError("A is not contained in H");
  std::vector<Subgroup> targets{a};
  verify_transversal(x, targets);
  std::vector<GroupElement> out;
  for (const auto& e : x) {
    if (h.contains(e)) out.push_back(e);
  }
  verify_transversal(out, targets, h);
  return out;
}

std::vector<GroupElement> lift_transversal(std::span<const GroupElement> s, const Subgroup& x,
                                           std::span<const Subgroup> targets) {
  if (targets.empty()) throw PreconditionError("at least one target subgroup required");
  Subgroup sum = Subgroup::trivial(x.ambient());
  for (const auto& t : targets) sum = join(sum, t);
  if (sum != x) throw PreconditionError("X must be the join of the targets");
  verify_transversal(s, targets, x);
  const AbelianGroup& g = x.ambient();
  Quotient q(g, x);
  std::vector<GroupElement> out;
  for (const auto& r : elements_of(q.group())) {
    const auto lift = q.section(r);
    for (const auto& e : s) out.push_back(g.add(e, lift));
  }
  out = sorted(std::move(out));
  certify(out, targets);
  return out;
}

QuotientProblem::QuotientProblem(std::span<const Subgroup> targets, const Subgroup& n)
    : original_(targets.begin(), targets.end()), quotient_(n.ambient(), n) {
  if (targets.empty()) throw PreconditionError("at least one target subgroup required");
  for (const auto& t : targets) {
    if (!t.contains(n)) throw PreconditionError("N is not contained in " + to_string(t));
  }
  for (const auto& t : targets) targets_.push_back(quotient_.project(t));
}

std::vector<GroupElement> QuotientProblem::pullback(std::span<const GroupElement> downstairs) const {
  verify_transversal(downstairs, targets_);
  std::vector<GroupElement> out;
  for (const auto& q : downstairs) out.push_back(quotient_.section(q));
  out = sorted(std::move(out));
  certify(out, original_);
  return out;
}

QuotientProblem reduce_mod_common(std::span<const Subgroup> targets, const Subgroup& n) {
  return QuotientProblem(targets, n);
}

std::int64_t sigma_permutation(unsigned n, unsigned m, std::int64_t i) {
  if (!(0 < m && m < n) || n > 62) throw PreconditionError("sigma needs 0 < m < n");
  const std::int64_t size = std::int64_t{1} << n;
  if (i < 0 || i >= size) throw PreconditionError("sigma argument out of range");
  const unsigned r = n - m;
  const std::int64_t t = i % (std::int64_t{1} << r);
  return t * (std::int64_t{1} << m) + (i - t) / (std::int64_t{1} << r);
}

std::vector<GroupElement> construct_Y_2group(const GroupElement& a, const GroupElement& b, const GroupElement& c,
                                             unsigned n, unsigned m, const AbelianGroup& g) {
  if (!(0 < m && m < n)) throw PreconditionError("the Y construction needs 0 < m < n");
  validate_triple(a, b, c, 2, n, m, g);
  const auto [b1, c1] = normalize(a, b, c, 2, n, m, g);
  const unsigned r = n - m;
  std::vector<GroupElement> x;
  for (std::int64_t i = 0; i < (std::int64_t{1} << n); ++i) {
    x.push_back(g.add(g.scale(i, b1), g.scale(sigma_permutation(n, m, i), c1)));
  }
  std::vector<GroupElement> y;
  for (std::int64_t j = 0; j < (std::int64_t{1} << r); ++j) {
    const auto shift = g.add(g.scale(j, a), g.scale(j << m, c1));
    for (const auto& e : x) y.push_back(g.add(shift, e));
  }
  y = sorted(std::move(y));
  std::vector<Subgroup> targets{cyclic(g, a), cyclic(g, b), cyclic(g, c)};
  certify(y, targets);
  return y;
}

std::vector<GroupElement> construct_T_odd(const GroupElement& a, const GroupElement& b, const GroupElement& c,
                                          std::int64_t p, unsigned n, unsigned m, const AbelianGroup& g) {
  if (p == 2 || !is_prime(static_cast<std::uint64_t>(p))) throw PreconditionError("construct_T_odd needs an odd prime");
  if (m > n) throw PreconditionError("m must not exceed n");
  validate_triple(a, b, c, p, n, m, g);
  const auto [b1, c1] = normalize(a, b, c, p, n, m, g);
  const std::int64_t pr = checked_pow(p, n - m);
  const std::int64_t pn = checked_pow(p, n);
  std::vector<GroupElement> t;
  for (std::int64_t i = 0; i < pr; ++i) {
    for (std::int64_t j = 0; j < pn; ++j) {
      t.push_back(g.add(g.add(g.scale(i, a), g.scale(j - i, b1)), g.scale(-j, c1)));
    }
  }
  t = sorted(std::move(t));
  std::vector<Subgroup> targets{cyclic(g, a), cyclic(g, b), cyclic(g, c)};
  certify(t, targets);
  return t;
}

std::vector<GroupElement> extend_by_direct_factor(const Subgroup& a, std::span<const Subgroup> bs,
                                                  std::span<const GroupElement> t) {
  if (bs.empty()) throw PreconditionError("at least one subgroup B_i required");
  const AbelianGroup& g = a.ambient();
  Subgroup x = Subgroup::trivial(g);
  for (const auto& b : bs) {
    if (!(b.ambient() == g)) throw PreconditionError("subgroups live in different ambient groups");
    if (b.order() != a.order()) throw PreconditionError("all B_i must have the order of A");
    x = join(x, b);
  }
  if (!intersect(a, x).is_trivial()) throw PreconditionError("A must meet the join of the B_i trivially");
  verify_transversal(t, bs, x);
  const auto as = elements_of(a);
  const auto b1 = elements_of(bs.front());
  std::vector<GroupElement> d;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto shift = g.add(as[i], b1[i]);
    for (const auto& e : t) d.push_back(g.add(shift, e));
  }
  std::vector<Subgroup> targets{a};
  targets.insert(targets.end(), bs.begin(), bs.end());
  const Subgroup ax = join(a, x);
  d = sorted(std::move(d));
  certify(d, targets, ax);
  if (ax.is_whole()) return d;
  return lift_transversal(d, ax, targets);
}

std::vector<GroupElement> homocyclic_common_transversal(std::span<const Subgroup> as) {
  if (as.empty()) throw PreconditionError("at least one subgroup required");
  const AbelianGroup& g = as.front().ambient();
  const auto inv = as.front().invariant_factors();
  Subgroup k = Subgroup::trivial(g);
  for (const auto& a : as) {
    if (!(a.ambient() == g)) throw PreconditionError("subgroups live in different ambient groups");
    if (!std::ranges::equal(a.invariant_factors(), inv)) throw PreconditionError("subgroups are not isomorphic");
    auto f = a.invariant_factors();
    if (!f.empty() && f.front() != f.back()) throw PreconditionError(to_string(a) + " is not homocyclic");
    k = join(k, a);
  }
  const auto order = static_cast<std::uint64_t>(as.front().order());
  if (order > 1 && factorize(order).front().prime < as.size()) {
    throw PreconditionError("the smallest prime dividing |A_1| is below the number of subgroups");
  }
  Presentation pk(k);
  std::vector<Subgroup> local;
  for (const auto& a : as) local.push_back(pk.to_local(a));
  std::vector<GroupElement> s;
  for (const auto& e : elements_of(common_complement(local))) s.push_back(pk.to_ambient(e));
  return lift_transversal(sorted(std::move(s)), k, as);
}

ThreeCyclicDiagnosis decide_three_cyclic(const Subgroup& a, const Subgroup& b, const Subgroup& c) {
  const AbelianGroup& g = a.ambient();
  if (!(b.ambient() == g) || !(c.ambient() == g)) throw PreconditionError("subgroups live in different ambient groups");
  if (!a.is_cyclic() || !b.is_cyclic() || !c.is_cyclic()) throw PreconditionError("all three subgroups must be cyclic");
  if (a.order() != b.order() || a.order() != c.order()) throw PreconditionError("subgroups have different orders");

  const Subgroup s[3] = {sylow_part(a, 2), sylow_part(b, 2), sylow_part(c, 2)};
  const Subgroup i = intersect(s[0], intersect(s[1], s[2]));
  const Subgroup x = join(s[0], join(s[1], s[2]));
  Quotient q(g, i);
  const Subgroup xq = q.project(x);
  ThreeCyclicDiagnosis d{a.order(), i, {xq.invariant_factors().begin(), xq.invariant_factors().end()}, 0, 0, 0, true, ""};
  if (a.order() % 2 != 0) {
    d.case_tag = "odd";
    return d;
  }
  bool all_direct = true;
  for (int j = 0; j < 3; ++j) {
    const auto& p = s[(j + 1) % 3];
    const auto& r = s[(j + 2) % 3];
    all_direct = all_direct && intersect(p, r) == i && join(p, r) == x;
  }
  d.exists = !(all_direct && x != i);
  d.n = log_p(s[0].order() / i.order(), 2);
  int odd_one = 0;
  for (int j = 0; j < 3; ++j) {
    const unsigned kj = log_p(intersect(s[(j + 1) % 3], s[(j + 2) % 3]).order() / i.order(), 2);
    if (kj > d.k) {
      d.k = kj;
      odd_one = j;
    }
  }
  d.m = log_p(intersect(s[odd_one], join(s[(odd_one + 1) % 3], s[(odd_one + 2) % 3])).order() / i.order(), 2);
  if (d.k > 0) {
    d.case_tag = "k>0";
  } else if (d.m == 0) {
    d.case_tag = "m=0";
  } else if (d.m == d.n) {
    d.case_tag = "m=n";
  } else {
    d.case_tag = "0<m<n";
  }
  if (d.exists == (d.case_tag == "m=n")) throw InternalError("verdict disagrees with the case classification");
  return d;
}

std::vector<GroupElement> construct_three_cyclic(const Subgroup& a, const Subgroup& b, const Subgroup& c) {
  if (!decide_three_cyclic(a, b, c).exists) {
    throw PreconditionError("the three subgroups have no common transversal");
  }
  const std::vector<Subgroup> targets{a, b, c};
  const Subgroup x = join(a, join(b, c));
  Presentation px(x);
  std::vector<Subgroup> local;
  for (const auto& t : targets) local.push_back(px.to_local(t));
  const Subgroup n = intersect(local[0], intersect(local[1], local[2]));
  QuotientProblem reduced = reduce_mod_common(local, n);
  const AbelianGroup& qg = reduced.quotient().group();

  std::vector<GroupElement> product{qg.zero()};
  for (const auto& pp : factorize(static_cast<std::uint64_t>(qg.order()))) {
    const auto p = static_cast<std::int64_t>(pp.prime);
    Presentation sylow(sylow_part(Subgroup::whole(qg), pp.prime));
    std::vector<Subgroup> parts;
    for (const auto& t : reduced.targets()) parts.push_back(sylow.to_local(sylow_part(t, pp.prime)));
    std::vector<GroupElement> next;
    for (const auto& e : prime_transversal(sylow.group(), parts, p)) {
      const auto up = sylow.to_ambient(e);
      for (const auto& s : product) next.push_back(qg.add(s, up));
    }
    product = std::move(next);
  }
  std::vector<GroupElement> inside;
  for (const auto& e : reduced.pullback(product)) inside.push_back(px.to_ambient(e));
  return lift_transversal(sorted(std::move(inside)), x, targets);
}

std::optional<Obstruction> detect_obstruction(const Subgroup& a, const Subgroup& b, const Subgroup& c) {
  const auto d = decide_three_cyclic(a, b, c);
  if (d.exists) return std::nullopt;
  const AbelianGroup& g = a.ambient();
  const std::int64_t half = std::int64_t{1} << (d.n - 1);
  Obstruction out{{}, d.sylow_intersection};
  for (const auto* h : {&a, &b, &c}) {
    const auto gen = sylow_part(*h, 2).smith_generators().front();
    out.involutions.push_back(g.scale(half, gen));
  }
  return out;
}

}  // namespace abeltrans
