#include <algorithm>
#include <random>
#include <set>

#include "abeltrans/complements.hpp"
#include "abeltrans/errors.hpp"
#include "abeltrans/families.hpp"
#include "abeltrans/oracle.hpp"
#include "abeltrans/transversals.hpp"
#include "doctest.h"

using namespace abeltrans;

namespace {

Subgroup cyc(const AbelianGroup& g, GroupElement x) { return Subgroup::generated(g, {std::move(x)}); }

std::vector<GroupElement> elems(std::initializer_list<GroupElement> xs) { return xs; }

bool valid(std::span<const GroupElement> t, std::span<const Subgroup> targets) {
  try {
    verify_transversal(t, targets);
    return true;
  } catch (const VerificationError&) {
    return false;
  }
}

// <a>, <b>, <c> of order p^n with pairwise trivial intersections and |<a> & <b,c>| = p^m.
struct Triple {
  AbelianGroup g;
  GroupElement a, b, c;
};

Triple standard_triple(std::int64_t p, unsigned n, unsigned m) {
  const std::int64_t pn = checked_pow(p, n);
  if (m == n) return {AbelianGroup{pn, pn}, {1, 1}, {1, 0}, {0, 1}};
  if (m == 0) return {AbelianGroup{pn, pn, pn}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  return {AbelianGroup{pn, pn, checked_pow(p, n - m)}, {1, 1, 1}, {1, 0, 0}, {0, 1, 0}};
}

}  // namespace

TEST_CASE("verify_transversal examples") {
  AbelianGroup klein{2, 2};
  std::vector<Subgroup> two{cyc(klein, {1, 0}), cyc(klein, {0, 1})};
  auto cert = verify_transversal(elems({{0, 0}, {1, 1}}), two);
  CHECK(cert.coset_labels.size() == 2);

  std::vector<Subgroup> one{cyc(klein, {1, 0})};
  try {
    verify_transversal(elems({{0, 0}, {1, 0}}), one);
    FAIL("expected a duplicate coset");
  } catch (const VerificationError& e) {
    CHECK(e.kind() == VerificationError::Kind::duplicate_coset);
    CHECK(e.target() == 0);
    CHECK(e.first() == GroupElement{0, 0});
    CHECK(e.second() == GroupElement{1, 0});
  }
  try {
    verify_transversal(elems({{0, 0}}), one);
    FAIL("expected a cardinality error");
  } catch (const VerificationError& e) {
    CHECK(e.kind() == VerificationError::Kind::cardinality);
  }
  AbelianGroup g{4, 2};
  std::vector<Subgroup> unequal{cyc(g, {1, 0}), cyc(g, {0, 1})};
  CHECK_THROWS_AS(verify_transversal(elems({{0, 0}, {0, 1}}), unequal), VerificationError);

  // A subgroup is a transversal of each of its complements.
  for (const auto& h : oracle_enumerate_subgroups(g, 2)) {
    std::vector<Subgroup> target{h};
    for (const auto& k : oracle_common_complements(target)) CHECK(valid(elements_of(k), target));
  }
}

TEST_CASE("restrict_transversal examples") {
  AbelianGroup c4{4};
  auto a = cyc(c4, {2});
  CHECK(restrict_transversal(elems({{0}, {1}}), a, a) == elems({{0}}));

  AbelianGroup klein{2, 2};
  auto x = elems({{0, 0}, {0, 1}});
  auto a2 = cyc(klein, {1, 0});
  CHECK(restrict_transversal(x, a2, Subgroup::whole(klein)) == x);
  CHECK_THROWS_AS(restrict_transversal(x, a2, cyc(klein, {0, 1})), PreconditionError);
  CHECK_THROWS_AS(restrict_transversal(elems({{0, 0}, {1, 0}}), a2, Subgroup::whole(klein)), VerificationError);
}

TEST_CASE("lift_transversal examples") {
  AbelianGroup g{4, 2};
  std::vector<Subgroup> whole{Subgroup::whole(g)};
  CHECK(lift_transversal(elems({{0, 0}}), whole[0], whole) == elems({{0, 0}}));

  std::vector<Subgroup> factor{cyc(g, {1, 0})};
  CHECK(lift_transversal(elems({{0, 0}}), factor[0], factor) == elems({{0, 0}, {0, 1}}));

  AbelianGroup e8{2, 2, 2};
  std::vector<Subgroup> two{cyc(e8, {1, 0, 0}), cyc(e8, {0, 1, 0})};
  auto x = join(two[0], two[1]);
  auto lifted = lift_transversal(elems({{0, 0, 0}, {1, 1, 0}}), x, two);
  CHECK(lifted.size() == 4);
  CHECK(valid(lifted, two));

  CHECK_THROWS_AS(lift_transversal(elems({{0, 0, 0}}), two[0], two), PreconditionError);
  CHECK_THROWS_AS(lift_transversal(elems({{0, 0, 0}, {1, 0, 0}}), x, two), VerificationError);
}

TEST_CASE("reduce_mod_common examples") {
  AbelianGroup c4{4};
  std::vector<Subgroup> ab{cyc(c4, {2}), cyc(c4, {2})};
  auto trivial = reduce_mod_common(ab, Subgroup::trivial(c4));
  CHECK(trivial.quotient().group().order() == 4);

  auto q = reduce_mod_common(ab, cyc(c4, {2}));
  CHECK(q.quotient().group().order() == 2);
  for (const auto& t : q.targets()) CHECK(t.is_trivial());
  CHECK(q.pullback(elems({{0}, {1}})) == elems({{0}, {1}}));

  AbelianGroup c8{8};
  std::vector<Subgroup> abc(3, cyc(c8, {2}));
  auto r = reduce_mod_common(abc, cyc(c8, {4}));
  CHECK(r.quotient().group().order() == 4);
  auto up = r.pullback(elems({{0}, {1}}));
  CHECK(valid(up, abc));

  CHECK_THROWS_AS(reduce_mod_common(abc, Subgroup::whole(c8)), PreconditionError);
}

TEST_CASE("sigma_permutation examples") {
  CHECK(sigma_permutation(2, 1, 0) == 0);
  CHECK(sigma_permutation(2, 1, 1) == 2);
  CHECK(sigma_permutation(2, 1, 2) == 1);
  CHECK(sigma_permutation(2, 1, 3) == 3);
  CHECK(sigma_permutation(3, 1, 5) == 3);
  CHECK_THROWS_AS(sigma_permutation(2, 2, 0), PreconditionError);
  CHECK_THROWS_AS(sigma_permutation(2, 0, 0), PreconditionError);
  CHECK_THROWS_AS(sigma_permutation(2, 1, 4), PreconditionError);
}

TEST_CASE("property: sigma is a permutation with the difference identity") {
  for (unsigned n = 2; n <= 6; ++n) {
    for (unsigned m = 1; m < n; ++m) {
      const std::int64_t size = std::int64_t{1} << n, pr = std::int64_t{1} << (n - m);
      std::set<std::int64_t> image;
      for (std::int64_t i = 0; i < size; ++i) image.insert(sigma_permutation(n, m, i));
      CHECK(image.size() == static_cast<std::size_t>(size));
      CHECK(*image.rbegin() == size - 1);
      CHECK(sigma_permutation(n, m, 0) == 0);
      for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t v = i % pr; v < size; v += pr) {
          const auto lhs = (i - sigma_permutation(n, m, i)) - (v - sigma_permutation(n, m, v));
          CHECK(lhs * pr == (i - v) * (pr - 1));
        }
      }
    }
  }
}

TEST_CASE("construct_Y_2group examples") {
  auto t = standard_triple(2, 2, 1);
  CHECK(t.g.order() == 32);
  auto y = construct_Y_2group(t.a, t.b, t.c, 2, 1, t.g);
  CHECK(y.size() == 8);
  CHECK(std::is_sorted(y.begin(), y.end()));
  std::vector<Subgroup> targets{cyc(t.g, t.a), cyc(t.g, t.b), cyc(t.g, t.c)};
  CHECK(oracle_common_transversal(targets).has_value());

  auto t3 = standard_triple(2, 3, 1);
  CHECK(t3.g.order() == 256);
  CHECK(construct_Y_2group(t3.a, t3.b, t3.c, 3, 1, t3.g).size() == 32);

  AbelianGroup klein{2, 2};
  CHECK_THROWS_AS(construct_Y_2group({1, 1}, {1, 0}, {0, 1}, 1, 0, klein), PreconditionError);
  // Wrong m for the configuration.
  CHECK_THROWS_AS(construct_Y_2group(t3.a, t3.b, t3.c, 3, 2, t3.g), PreconditionError);
}

TEST_CASE("property: Y constructions for n <= 4 verify and the oracle agrees") {
  for (unsigned n = 2; n <= 4; ++n) {
    for (unsigned m = 1; m < n; ++m) {
      auto t = standard_triple(2, n, m);
      auto y = construct_Y_2group(t.a, t.b, t.c, n, m, t.g);
      CHECK(y.size() == (std::size_t{1} << (2 * n - m)));
      // Non-normalized generators are adjusted internally.
      auto y3 = construct_Y_2group(t.g.scale(3, t.a), t.g.scale(5, t.b), t.g.scale(-1, t.c), n, m, t.g);
      CHECK(y3.size() == y.size());
      std::vector<Subgroup> targets{cyc(t.g, t.a), cyc(t.g, t.b), cyc(t.g, t.c)};
      CHECK(oracle_common_complements(targets).empty());
      if (t.g.order() <= 4096 && n <= 3) CHECK(oracle_common_transversal(targets).has_value());
    }
  }
}

TEST_CASE("construct_T_odd examples") {
  auto t1 = standard_triple(3, 1, 1);
  CHECK(construct_T_odd(t1.a, t1.b, t1.c, 3, 1, 1, t1.g).size() == 3);
  auto t0 = standard_triple(3, 1, 0);
  CHECK(construct_T_odd(t0.a, t0.b, t0.c, 3, 1, 0, t0.g).size() == 9);
  auto t5 = standard_triple(5, 2, 1);
  CHECK(t5.g.order() == 3125);
  CHECK(construct_T_odd(t5.a, t5.b, t5.c, 5, 2, 1, t5.g).size() == 125);

  auto y = standard_triple(2, 2, 1);
  CHECK_THROWS_AS(construct_T_odd(y.a, y.b, y.c, 2, 2, 1, y.g), PreconditionError);
  CHECK_THROWS_AS(construct_T_odd(t1.a, t1.b, t1.c, 3, 1, 0, t1.g), PreconditionError);
}

TEST_CASE("property: odd constructions for small odd p and n verify and the oracle agrees") {
  for (std::int64_t p : {3, 5}) {
    for (unsigned n = 1; n <= 2; ++n) {
      for (unsigned m = 0; m <= n; ++m) {
        auto t = standard_triple(p, n, m);
        auto x = construct_T_odd(t.a, t.b, t.c, p, n, m, t.g);
        CHECK(static_cast<std::int64_t>(x.size()) == checked_pow(p, 2 * n - m));
        std::vector<Subgroup> targets{cyc(t.g, t.a), cyc(t.g, t.b), cyc(t.g, t.c)};
        if (t.g.order() <= 729) CHECK(oracle_common_transversal(targets).has_value());
      }
    }
  }
}

TEST_CASE("extend_by_direct_factor examples") {
  AbelianGroup klein{2, 2};
  std::vector<Subgroup> bs{cyc(klein, {0, 1})};
  CHECK(extend_by_direct_factor(cyc(klein, {1, 0}), bs, elems({{0, 0}})) == elems({{0, 0}, {1, 1}}));

  AbelianGroup e27{3, 3, 3};
  std::vector<Subgroup> bc{cyc(e27, {0, 1, 0}), cyc(e27, {0, 0, 1})};
  auto d = extend_by_direct_factor(cyc(e27, {1, 0, 0}), bc, elems({{0, 0, 0}, {0, 1, 1}, {0, 2, 2}}));
  CHECK(d.size() == 9);

  // A smaller than G: the result is lifted.
  AbelianGroup g{4, 4, 2};
  std::vector<Subgroup> b1{cyc(g, {0, 1, 0})};
  auto lifted = extend_by_direct_factor(cyc(g, {1, 0, 0}), b1, elems({{0, 0, 0}}));
  CHECK(lifted.size() == 8);

  CHECK_THROWS_AS(extend_by_direct_factor(cyc(g, {1, 1, 0}), std::vector<Subgroup>{cyc(g, {2, 0, 0})},
                                          elems({{0, 0, 0}, {1, 0, 0}})),
                  PreconditionError);
  CHECK_THROWS_AS(extend_by_direct_factor(cyc(klein, {1, 0}), bs, elems({{0, 0}, {0, 1}})), VerificationError);
}

TEST_CASE("homocyclic_common_transversal examples") {
  AbelianGroup e9{3, 3};
  std::vector<Subgroup> three{cyc(e9, {1, 0}), cyc(e9, {0, 1}), cyc(e9, {1, 1})};
  CHECK(homocyclic_common_transversal(three).size() == 3);

  AbelianGroup g{4, 4, 2};
  std::vector<Subgroup> pair{cyc(g, {1, 1, 1}), cyc(g, {1, 0, 0})};
  CHECK(homocyclic_common_transversal(pair).size() == 8);

  std::vector<Subgroup> single{cyc(g, {2, 0, 1})};
  CHECK(homocyclic_common_transversal(single).size() == 16);

  AbelianGroup klein{2, 2};
  std::vector<Subgroup> kl{cyc(klein, {1, 0}), cyc(klein, {0, 1}), cyc(klein, {1, 1})};
  CHECK_THROWS_AS(homocyclic_common_transversal(kl), PreconditionError);
  std::vector<Subgroup> mixed{Subgroup::generated(g, {{1, 0, 0}, {0, 0, 1}})};
  CHECK_THROWS_AS(homocyclic_common_transversal(mixed), PreconditionError);
}

TEST_CASE("property: homocyclic pairs always have a constructed common transversal") {
  for (const auto& g : isomorphism_classes(32)) {
    auto subs = oracle_enumerate_subgroups(g, 0);
    if (subs.size() > 200) continue;
    for (const auto& a : subs) {
      auto f = a.invariant_factors();
      if (a.is_trivial() || f.front() != f.back()) continue;
      for (const auto& b : subs) {
        if (!std::ranges::equal(b.invariant_factors(), f) || b < a) continue;
        std::vector<Subgroup> pair{a, b};
        auto t = homocyclic_common_transversal(pair);
        CHECK(valid(t, pair));
      }
    }
  }
}

TEST_CASE("decide_three_cyclic examples") {
  AbelianGroup klein{2, 2};
  auto d = decide_three_cyclic(cyc(klein, {1, 0}), cyc(klein, {0, 1}), cyc(klein, {1, 1}));
  CHECK_FALSE(d.exists);
  CHECK(d.case_tag == "m=n");
  CHECK(d.n == 1);

  AbelianGroup e9{3, 3};
  auto odd = decide_three_cyclic(cyc(e9, {1, 0}), cyc(e9, {0, 1}), cyc(e9, {1, 1}));
  CHECK(odd.exists);
  CHECK(odd.case_tag == "odd");

  auto t = standard_triple(2, 2, 1);
  auto iii = decide_three_cyclic(cyc(t.g, t.a), cyc(t.g, t.b), cyc(t.g, t.c));
  CHECK(iii.exists);
  CHECK(iii.case_tag == "0<m<n");
  CHECK(iii.n == 2);
  CHECK(iii.m == 1);
  CHECK(iii.k == 0);

  AbelianGroup g{4, 2};
  CHECK_THROWS_AS(decide_three_cyclic(cyc(g, {1, 0}), cyc(g, {0, 1}), cyc(g, {1, 1})), PreconditionError);
  CHECK_THROWS_AS(decide_three_cyclic(Subgroup::whole(klein), cyc(klein, {0, 1}), cyc(klein, {1, 1})),
                  PreconditionError);
}

TEST_CASE("construct_three_cyclic examples") {
  AbelianGroup e9{3, 3};
  std::vector<Subgroup> three{cyc(e9, {1, 0}), cyc(e9, {0, 1}), cyc(e9, {1, 1})};
  auto t = construct_three_cyclic(three[0], three[1], three[2]);
  CHECK(t.size() == 3);
  CHECK(valid(t, three));

  auto y = standard_triple(2, 2, 1);
  std::vector<Subgroup> abc{cyc(y.g, y.a), cyc(y.g, y.b), cyc(y.g, y.c)};
  auto ty = construct_three_cyclic(abc[0], abc[1], abc[2]);
  CHECK(ty.size() == 8);

  AbelianGroup c8{8};
  auto a = cyc(c8, {2});
  CHECK(construct_three_cyclic(a, a, a).size() == 2);

  AbelianGroup klein{2, 2};
  CHECK_THROWS_AS(construct_three_cyclic(cyc(klein, {1, 0}), cyc(klein, {0, 1}), cyc(klein, {1, 1})),
                  PreconditionError);
}

TEST_CASE("detect_obstruction examples") {
  AbelianGroup klein{2, 2};
  auto o = detect_obstruction(cyc(klein, {1, 0}), cyc(klein, {0, 1}), cyc(klein, {1, 1}));
  REQUIRE(o.has_value());
  CHECK(o->involutions == elems({{1, 0}, {0, 1}, {1, 1}}));
  CHECK(o->modulo.is_trivial());

  AbelianGroup e9{3, 3};
  CHECK_FALSE(detect_obstruction(cyc(e9, {1, 0}), cyc(e9, {0, 1}), cyc(e9, {1, 1})).has_value());

  AbelianGroup g{8, 8};
  auto a = cyc(g, {1, 1}), b = cyc(g, {1, 5}), c = cyc(g, {0, 1});
  auto diag = decide_three_cyclic(a, b, c);
  auto w = detect_obstruction(a, b, c);
  CHECK(w.has_value() == !diag.exists);
  std::vector<Subgroup> abc{a, b, c};
  CHECK(oracle_common_transversal(abc).has_value() == diag.exists);
}

TEST_CASE("property: case (ii) configurations have no common transversal") {
  for (unsigned n = 1; n <= 3; ++n) {
    auto t = standard_triple(2, n, n);
    auto a = cyc(t.g, t.a), b = cyc(t.g, t.b), c = cyc(t.g, t.c);
    auto d = decide_three_cyclic(a, b, c);
    CHECK(d.case_tag == "m=n");
    CHECK(detect_obstruction(a, b, c).has_value());
    std::vector<Subgroup> abc{a, b, c};
    CHECK_FALSE(oracle_common_transversal(abc).has_value());
  }
}

TEST_CASE("property: decision matches the oracle and constructions verify on 2-groups of order <= 16") {
  int exists = 0, absent = 0;
  for (const auto& g : isomorphism_classes(16)) {
    if (g.order() & (g.order() - 1)) continue;
    for (const auto& a : cyclic_subgroups(g)) {
      if (a.is_trivial()) continue;
      auto same = cyclic_subgroups(g, a.order());
      for (const auto& b : same) {
        for (const auto& c : same) {
          auto d = decide_three_cyclic(a, b, c);
          std::vector<Subgroup> abc{a, b, c};
          const bool oracle = oracle_common_transversal(abc).has_value();
          CHECK_MESSAGE(d.exists == oracle, to_string(g), " ", to_string(a), " ", to_string(b), " ", to_string(c));
          if (d.exists) {
            CHECK(valid(construct_three_cyclic(a, b, c), abc));
            ++exists;
          } else {
            ++absent;
          }
        }
      }
    }
  }
  CHECK(exists > 0);
  CHECK(absent > 0);
}

TEST_CASE("property: three cyclic subgroups of mixed order construct and verify") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (const auto& g : isomorphism_classes(360)) {
    if (g.order() % 2 != 0 || g.order() % 3 != 0) continue;
    auto cyclic = cyclic_subgroups(g);
    for (int trial = 0; trial < 4; ++trial) {
      const auto& a = cyclic[rng() % cyclic.size()];
      auto same = cyclic_subgroups(g, a.order());
      const auto& b = same[rng() % same.size()];
      const auto& c = same[rng() % same.size()];
      std::vector<Subgroup> abc{a, b, c};
      auto d = decide_three_cyclic(a, b, c);
      if (d.exists) CHECK(valid(construct_three_cyclic(a, b, c), abc));
      if (g.order() <= 144) CHECK(oracle_common_transversal(abc).has_value() == d.exists);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("property: any two subgroups of equal order have a constructed common transversal") {
  for (const auto& g : isomorphism_classes(48)) {
    auto subs = oracle_enumerate_subgroups(g, 0);
    for (const auto& a : subs) {
      for (const auto& b : subs) {
        if (b.order() != a.order() || b < a) continue;
        std::vector<Subgroup> pair{a, b};
        auto q = reduce_mod_common(pair, intersect(a, b));
        std::vector<Subgroup> down_b{q.targets()[1]};
        auto down = extend_by_direct_factor(q.targets()[0], down_b, std::vector<GroupElement>{q.quotient().group().zero()});
        CHECK(valid(q.pullback(down), pair));
      }
    }
  }
}

TEST_CASE("property: restriction and lifting round trip") {
  std::mt19937_64 rng(23);
  for (const auto& g : isomorphism_classes(96)) {
    auto subs = oracle_enumerate_subgroups(g, 0);
    for (int trial = 0; trial < 3; ++trial) {
      const auto& h = subs[rng() % subs.size()];
      std::vector<Subgroup> inside;
      for (const auto& s : subs) {
        if (h.contains(s)) inside.push_back(s);
      }
      const auto& a = inside[rng() % inside.size()];
      std::vector<Subgroup> target{a};
      auto full = lift_transversal(std::vector<GroupElement>{g.zero()}, a, target);
      CHECK(valid(full, target));
      auto restricted = restrict_transversal(full, a, h);
      CHECK(static_cast<std::int64_t>(restricted.size()) == h.order() / a.order());
      std::vector<Subgroup> outer{h};
      std::vector<GroupElement> back;
      for (const auto& r : lift_transversal(std::vector<GroupElement>{g.zero()}, h, outer)) {
        for (const auto& s : restricted) back.push_back(g.add(r, s));
      }
      CHECK(valid(back, target));
    }
  }
}
