#include "abeltrans/complements.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include "abeltrans/errors.hpp"
#include "abeltrans/parallel.hpp"

namespace abeltrans {

using lattice::IntMatrix;
using lattice::IntVector;

bool ComplementCertificate::check() const {
  if (!(subject.ambient() == ambient) || !(complement.ambient() == ambient)) return false;
  return is_complement_pair(subject, complement);
}

namespace {

void require_common_ambient(std::span<const Subgroup> as) {
  for (const auto& a : as) {
    if (!(a.ambient() == as.front().ambient())) throw PreconditionError("subgroups live in different ambient groups");
  }
}

bool isomorphic(const Subgroup& a, const Subgroup& b) {
  return std::ranges::equal(a.invariant_factors(), b.invariant_factors());
}

std::vector<std::int64_t> factors_of(const Subgroup& h) {
  return {h.invariant_factors().begin(), h.invariant_factors().end()};
}

// Calls visit(subset) on every k-subset of pool in lexicographic order until it returns true.
bool for_each_combination(const std::vector<std::size_t>& pool, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == k) return visit(pick);
    for (std::size_t i = from; i + (k - pick.size()) <= pool.size(); ++i) {
      pick.push_back(pool[i]);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

Subgroup project_onto(const Subgroup& h, const std::vector<std::size_t>& coords) {
  const auto& g = h.ambient();
  std::vector<GroupElement> gens;
  for (const auto& x : h.generators()) {
    GroupElement y = g.zero();
    for (auto i : coords) y.residues[i] = x[i];
    gens.push_back(std::move(y));
  }
  return Subgroup::generated(g, gens);
}

std::vector<Subgroup> sorted_unique(std::vector<Subgroup> out) {
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InternalError("complement enumeration produced a duplicate subgroup");
  }
  return out;
}

struct ComplementSpace {
  Subgroup fixed;
  HomSpace homs;
};

ComplementSpace complement_space(const Subgroup& a, std::uint64_t cap) {
  auto w = is_complemented(a);
  if (!w) throw PreconditionError("subgroup " + to_string(a) + " has no complement");
  Subgroup t = w->certificate.complement;
  HomSpace homs(factors_of(t), a, cap);
  return {std::move(t), std::move(homs)};
}

Subgroup complement_from_images(const Subgroup& fixed, const std::vector<GroupElement>& images) {
  const auto& g = fixed.ambient();
  auto tg = fixed.smith_generators();
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < tg.size(); ++j) gens.push_back(g.subtract(images[j], tg[j]));
  return Subgroup::generated(g, gens);
}

std::vector<std::vector<GroupElement>> isomorphisms(const Subgroup& from, const Subgroup& to, std::uint64_t cap) {
  HomSpace homs(factors_of(from), to, cap);
  std::vector<std::vector<GroupElement>> out;
  for (std::uint64_t i = 0; i < homs.size(); ++i) {
    auto im = homs.images(i);
    if (Subgroup::generated(to.ambient(), im).order() == from.order()) out.push_back(std::move(im));
  }
  return out;
}

void validate_direct(std::span<const Subgroup> as, const Subgroup& b) {
  if (as.empty()) throw PreconditionError("at least one subgroup required");
  require_common_ambient(as);
  if (!(b.ambient() == as.front().ambient())) throw PreconditionError("B lives in a different ambient group");
  Subgroup total = b;
  i128 product = b.order();
  for (const auto& a : as) {
    total = join(total, a);
    product *= a.order();
  }
  if (!total.is_whole() || product != b.ambient().order()) {
    throw PreconditionError("subgroups do not form a direct decomposition of the ambient group");
  }
}

// Maximal subgroups of Omega(H) for H spanned by the factors in coords, all of
// order q, paired with the functional cutting them out.
struct Hyperplane {
  Subgroup subgroup;
  std::vector<std::int64_t> functional;
};

std::vector<Hyperplane> omega_hyperplanes(const AbelianGroup& g, const std::vector<std::size_t>& coords,
                                          std::int64_t q, std::int64_t p) {
  const std::size_t s = coords.size();
  std::vector<Hyperplane> out;
  std::vector<std::int64_t> f(s, 0);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < s; ++i) total *= p;
  for (std::int64_t code = 1; code < total; ++code) {
    std::int64_t c = code;
    for (std::size_t i = s; i-- > 0;) {
      f[i] = c % p;
      c /= p;
    }
    std::size_t lead = 0;
    while (f[lead] == 0) ++lead;
    if (f[lead] != 1) continue;
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < s; ++j) {
      if (j == lead) continue;
      GroupElement v = g.zero();
      v.residues[coords[j]] = q / p;
      v.residues[coords[lead]] = floor_mod(-f[j] * (q / p), q);
      gens.push_back(std::move(v));
    }
    out.push_back({Subgroup::generated(g, gens), f});
  }
  std::sort(out.begin(), out.end(), [](const Hyperplane& x, const Hyperplane& y) { return x.subgroup < y.subgroup; });
  return out;
}

// Cyclic base case inside a p-group given in primary coordinates.
Subgroup cyclic_common_complement(const AbelianGroup& g, std::span<const Subgroup> as, std::int64_t p) {
  const std::int64_t q = as.front().order();
  if (q == 1) return Subgroup::whole(g);
  const auto n = g.orders();
  std::vector<std::size_t> picks;
  for (const auto& a : as) {
    const auto& gen = a.smith_generators().front();
    std::size_t i = 0;
    while (i < n.size() && !(n[i] == q && gen[i] % p != 0)) ++i;
    if (i == n.size()) throw InternalError("no primary factor projects isomorphically from " + to_string(a));
    picks.push_back(i);
  }
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());

  std::vector<std::vector<std::int64_t>> bs;
  for (const auto& a : as) {
    std::vector<std::int64_t> b;
    for (auto i : picks) b.push_back(a.smith_generators().front()[i] % p);
    bs.push_back(std::move(b));
  }
  for (const auto& h : omega_hyperplanes(g, picks, q, p)) {
    bool avoids_all = std::all_of(bs.begin(), bs.end(), [&](const std::vector<std::int64_t>& b) {
      std::int64_t v = 0;
      for (std::size_t j = 0; j < b.size(); ++j) v += h.functional[j] * b[j];
      return v % p != 0;
    });
    if (!avoids_all) continue;
    IntVector row(n.size(), 0);
    for (std::size_t j = 0; j < picks.size(); ++j) row[picks[j]] = h.functional[j];
    std::vector<IntVector> rows{row};
    std::vector<i128> mods{q};
    auto kernel = lattice::congruence_kernel(Subgroup::whole(g).basis(), rows, mods, n);
    std::vector<GroupElement> gens;
    for (std::size_t c = 0; c < kernel.cols(); ++c) gens.push_back(g.element_from(kernel.column(c)));
    return Subgroup::generated(g, gens);
  }
  throw InternalError("every maximal subgroup of Omega(H) contains some B_i");
}

Subgroup p_common_complement(const AbelianGroup& g, std::span<const Subgroup> as, std::int64_t p) {
  if (as.front().is_cyclic()) return cyclic_common_complement(g, as, p);
  std::vector<Subgroup> heads;
  for (const auto& a : as) heads.push_back(Subgroup::generated(g, {a.smith_generators().back()}));
  Subgroup h = p_common_complement(g, heads, p);
  Presentation ph(h);
  std::vector<Subgroup> rests;
  for (const auto& a : as) rests.push_back(ph.to_local(intersect(a, h)));
  return ph.to_ambient(p_common_complement(ph.group(), rests, p));
}

}  // namespace

std::optional<ComplementWitness> is_complemented(const Subgroup& a) {
  const auto& g = a.ambient();
  PrimaryDecomposition pd(g);
  const auto& pg = pd.primary();
  Subgroup ap = to_primary(pd, a);
  std::vector<std::size_t> chosen;
  for (auto p : pd.distinct_primes()) {
    Subgroup part = sylow_part(ap, p);
    if (part.is_trivial()) continue;
    auto want = factors_of(part);
    std::vector<std::size_t> pool;
    for (std::size_t f = 0; f < pg.rank(); ++f) {
      if (pd.prime(f) == p) pool.push_back(f);
    }
    bool found = for_each_combination(pool, want.size(), [&](const std::vector<std::size_t>& pick) {
      std::vector<std::int64_t> orders;
      for (auto f : pick) orders.push_back(pg.orders()[f]);
      std::sort(orders.begin(), orders.end());
      if (orders != want) return false;
      if (project_onto(part, pick).order() != part.order()) return false;
      chosen.insert(chosen.end(), pick.begin(), pick.end());
      return true;
    });
    if (!found) return std::nullopt;
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<std::int64_t> target_orders;
  for (auto f : chosen) target_orders.push_back(pg.orders()[f]);
  std::vector<GroupElement> images;
  for (const auto& s : a.smith_generators()) {
    auto y = pd.to_primary(s);
    std::vector<std::int64_t> r;
    for (auto f : chosen) r.push_back(y[f]);
    images.emplace_back(std::move(r));
  }
  Homomorphism iso(factors_of(a), AbelianGroup(target_orders), std::move(images));
  if (!iso.is_injective()) throw InternalError("selected projection is not injective");

  std::vector<GroupElement> rest;
  for (std::size_t f = 0; f < pg.rank(); ++f) {
    if (!std::binary_search(chosen.begin(), chosen.end(), f)) rest.push_back(pg.unit(f));
  }
  ComplementCertificate cert{a, from_primary(pd, Subgroup::generated(pg, rest)), g};
  if (!cert.check()) throw InternalError("complement from projection witness failed its certificate");
  return ComplementWitness{ProjectionWitness{std::move(chosen), std::move(iso)}, std::move(cert)};
}

std::vector<Subgroup> enumerate_complements(const Subgroup& a, std::uint64_t cap) {
  auto space = complement_space(a, cap);
  const auto n = static_cast<std::int64_t>(space.homs.size());
  std::vector<std::optional<Subgroup>> slots(static_cast<std::size_t>(n));
  parallel_for(n, [&](std::int64_t i) {
    slots[static_cast<std::size_t>(i)] =
        complement_from_images(space.fixed, space.homs.images(static_cast<std::uint64_t>(i)));
  });
  std::vector<Subgroup> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return sorted_unique(std::move(out));
}

std::vector<Subgroup> enumerate_complements_serial(const Subgroup& a, std::uint64_t cap) {
  auto space = complement_space(a, cap);
  std::vector<Subgroup> out;
  out.reserve(space.homs.size());
  for (std::uint64_t i = 0; i < space.homs.size(); ++i) {
    out.push_back(complement_from_images(space.fixed, space.homs.images(i)));
  }
  return sorted_unique(std::move(out));
}

std::int64_t count_complements(const Subgroup& a) {
  if (!is_complemented(a)) throw PreconditionError("subgroup " + to_string(a) + " has no complement");
  Quotient q(a.ambient(), a);
  std::int64_t r = 1;
  for (auto n : a.invariant_factors()) r = checked_mul(r, gamma_subgroup(q.group(), n).order());
  return r;
}

std::int64_t count_common_complements_direct(std::span<const Subgroup> as, const Subgroup& b, std::uint64_t cap) {
  validate_direct(as, b);
  for (const auto& a : as) {
    if (!isomorphic(a, as.front())) return 0;
  }
  std::int64_t r = hom_count(as.front().invariant_factors(), b.invariant_factors());
  for (std::size_t i = 1; i < as.size(); ++i) {
    r = checked_mul(r, static_cast<std::int64_t>(isomorphisms(as.front(), as[i], cap).size()));
  }
  return r;
}

std::vector<Subgroup> enumerate_common_complements_direct(std::span<const Subgroup> as, const Subgroup& b,
                                                          std::uint64_t cap) {
  validate_direct(as, b);
  for (const auto& a : as) {
    if (!isomorphic(a, as.front())) return {};
  }
  const auto& g = b.ambient();
  const Subgroup& head = as.front();
  // Source generators of T = A_2 x ... x A_t x B and, per factor, the admissible image tuples.
  std::vector<std::vector<GroupElement>> sources;
  std::vector<std::vector<std::vector<GroupElement>>> choices;
  for (std::size_t i = 1; i < as.size(); ++i) {
    auto gens = as[i].smith_generators();
    sources.emplace_back(gens.begin(), gens.end());
    choices.push_back(isomorphisms(as[i], head, cap));
  }
  {
    auto gens = b.smith_generators();
    sources.emplace_back(gens.begin(), gens.end());
    HomSpace homs(factors_of(b), head, cap);
    std::vector<std::vector<GroupElement>> all;
    for (std::uint64_t i = 0; i < homs.size(); ++i) all.push_back(homs.images(i));
    choices.push_back(std::move(all));
  }
  std::uint64_t total = 1;
  for (const auto& c : choices) {
    if (c.empty()) return {};
    if (total > cap / c.size()) throw CapExceeded("common complement enumeration exceeds cap " + std::to_string(cap));
    total *= c.size();
  }
  std::vector<Subgroup> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    std::vector<GroupElement> gens;
    for (std::size_t f = choices.size(); f-- > 0;) {
      const auto& pick = choices[f][rest % choices[f].size()];
      rest /= choices[f].size();
      for (std::size_t j = 0; j < pick.size(); ++j) gens.push_back(g.subtract(pick[j], sources[f][j]));
    }
    Subgroup u = Subgroup::generated(g, gens);
    for (const auto& a : as) {
      if (!is_complement_pair(a, u)) {
        throw InternalError("map from the fixed complement gave " + to_string(u) + ", not a complement of " +
                            to_string(a));
      }
    }
    out.push_back(std::move(u));
  }
  return sorted_unique(std::move(out));
}

std::int64_t count_common_two_cyclic_maximal(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) throw PreconditionError("subgroups live in different ambient groups");
  const auto& g = a.ambient();
  if (g.order() > 1 && as_prime_power(static_cast<std::uint64_t>(g.order())).prime == 0) {
    throw PreconditionError("ambient group " + to_string(g) + " is not a p-group");
  }
  if (!a.is_cyclic() || !b.is_cyclic()) throw PreconditionError("both subgroups must be cyclic");
  if (a.order() != g.exponent() || b.order() != g.exponent()) {
    throw PreconditionError("both subgroups must have the maximal element order " + std::to_string(g.exponent()));
  }
  const auto s = a.index();
  return intersect(a, b).is_trivial() ? static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(s))) : s;
}

bool Rational::at_most(std::int64_t n) const { return static_cast<i128>(num) <= static_cast<i128>(n) * den; }

Rational lower_bound_common_complements(std::int64_t s, std::int64_t p, std::int64_t omega) {
  if (s < 1 || omega < 1 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw PreconditionError("bound needs s >= 1, omega >= 1 and p prime");
  }
  std::int64_t num = checked_mul(s, p - omega + 1);
  std::int64_t g = std::gcd(num, p);
  if (g == 0) g = 1;
  return {num / g, p / g};
}

std::size_t distinct_omegas(std::span<const Subgroup> as, std::uint64_t p) {
  std::vector<Subgroup> om;
  for (const auto& a : as) om.push_back(omega(sylow_part(a, p), p));
  std::sort(om.begin(), om.end());
  return static_cast<std::size_t>(std::unique(om.begin(), om.end()) - om.begin());
}

Subgroup common_complement(std::span<const Subgroup> as) {
  if (as.empty()) throw PreconditionError("at least one subgroup required");
  require_common_ambient(as);
  for (const auto& a : as) {
    if (!isomorphic(a, as.front())) throw PreconditionError("subgroups are not pairwise isomorphic");
    if (!is_complemented(a)) throw PreconditionError("subgroup " + to_string(a) + " has no complement");
  }
  const auto& g = as.front().ambient();
  const auto whole = Subgroup::whole(g);
  const auto t = static_cast<std::uint64_t>(as.size());
  const auto a_order = static_cast<std::uint64_t>(as.front().order());
  Subgroup result = Subgroup::trivial(g);
  for (const auto& pp : factorize(static_cast<std::uint64_t>(g.order()))) {
    const auto p = pp.prime;
    Subgroup gp = sylow_part(whole, p);
    if (a_order % p != 0) {
      result = join(result, gp);
      continue;
    }
    Presentation pres(gp);
    std::vector<Subgroup> local;
    for (const auto& a : as) local.push_back(pres.to_local(sylow_part(a, p)));
    if (t > p) {
      if (!local.front().is_cyclic()) {
        throw PreconditionError(std::to_string(t) + " non-cyclic subgroups exceed the prime " + std::to_string(p));
      }
      if (distinct_omegas(local, p) > p) {
        throw PreconditionError("more than " + std::to_string(p) + " distinct Omega subgroups at the prime " +
                                std::to_string(p));
      }
    }
    result = join(result, pres.to_ambient(p_common_complement(pres.group(), local, static_cast<std::int64_t>(p))));
  }
  for (const auto& a : as) {
    if (!is_complement_pair(a, result)) {
      throw InternalError("constructed " + to_string(result) + " is not a complement of " + to_string(a));
    }
  }
  return result;
}

}  // namespace abeltrans
