#include <algorithm>
#include <random>

#include "abeltrans/complements.hpp"
#include "abeltrans/errors.hpp"
#include "abeltrans/families.hpp"
#include "abeltrans/oracle.hpp"
#include "brute.hpp"
#include "doctest.h"

using namespace abeltrans;

namespace {

Subgroup cyc(const AbelianGroup& g, GroupElement x) { return Subgroup::generated(g, {std::move(x)}); }

std::vector<Subgroup> all_subgroups(const AbelianGroup& g) {
  ElementTable table(g);
  std::vector<Subgroup> out;
  for (const auto& h : oracle_subgroup_sets(table)) out.push_back(to_subgroup(table, h));
  return out;
}

}  // namespace

TEST_CASE("is_complemented examples") {
  AbelianGroup g{4, 2};
  auto w = is_complemented(cyc(g, {2, 1}));
  REQUIRE(w.has_value());
  CHECK(w->certificate.check());
  CHECK(w->certificate.complement == cyc(g, {1, 0}));
  CHECK(w->projection.index_set == std::vector<std::size_t>{1});
  CHECK(w->projection.iso.is_injective());

  CHECK_FALSE(is_complemented(cyc(AbelianGroup{4}, {2})).has_value());

  auto t = is_complemented(Subgroup::trivial(g));
  REQUIRE(t.has_value());
  CHECK(t->projection.index_set.empty());
  CHECK(t->certificate.complement.is_whole());
}

TEST_CASE("enumerate_complements examples") {
  AbelianGroup g{4, 2};
  auto c = enumerate_complements(cyc(g, {1, 0}));
  std::vector<Subgroup> expected{cyc(g, {0, 1}), cyc(g, {2, 1})};
  std::sort(expected.begin(), expected.end());
  CHECK(c == expected);

  AbelianGroup klein{2, 2};
  auto k = enumerate_complements(cyc(klein, {1, 0}));
  std::vector<Subgroup> kexp{cyc(klein, {0, 1}), cyc(klein, {1, 1})};
  std::sort(kexp.begin(), kexp.end());
  CHECK(k == kexp);

  auto whole = enumerate_complements(Subgroup::whole(g));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].is_trivial());

  CHECK_THROWS_AS(enumerate_complements(cyc(AbelianGroup{4}, {2})), PreconditionError);
}

TEST_CASE("count_complements examples") {
  AbelianGroup g{4, 2};
  CHECK(count_complements(cyc(g, {1, 0})) == 2);
  CHECK(count_complements(cyc(AbelianGroup{2, 2}, {1, 0})) == 2);
  CHECK(count_complements(Subgroup::whole(g)) == 1);
  CHECK_THROWS_AS(count_complements(cyc(AbelianGroup{4}, {2})), PreconditionError);
}

TEST_CASE("property: complement counts agree with enumeration and subgroup scan") {
  for (const auto& g : isomorphism_classes(48)) {
    auto subs = all_subgroups(g);
    ElementTable table(g);
    for (const auto& a : subs) {
      auto scan = oracle_common_complements(std::vector<Subgroup>{a});
      auto w = is_complemented(a);
      CHECK_MESSAGE(w.has_value() == !scan.empty(), to_string(g), " ", to_string(a));
      if (!w) continue;
      auto listed = enumerate_complements(a);
      CHECK(listed == scan);
      CHECK(enumerate_complements_serial(a) == listed);
      CHECK(count_complements(a) == static_cast<std::int64_t>(listed.size()));
    }
  }
}

TEST_CASE("property: complement counts factor over Sylow subgroups") {
  for (const auto& g : isomorphism_classes(72)) {
    const auto primes = factorize(static_cast<std::uint64_t>(g.order()));
    if (primes.size() < 2) continue;
    for (const auto& a : all_subgroups(g)) {
      if (!is_complemented(a)) continue;
      std::int64_t product = 1;
      for (const auto& pp : primes) {
        Presentation sylow(sylow_part(Subgroup::whole(g), pp.prime));
        product *= count_complements(sylow.to_local(sylow_part(a, pp.prime)));
      }
      CHECK(count_complements(a) == product);
    }
  }
}

TEST_CASE("count_common_complements_direct examples") {
  AbelianGroup klein{2, 2};
  std::vector<Subgroup> two{cyc(klein, {1, 0}), cyc(klein, {0, 1})};
  CHECK(count_common_complements_direct(two, Subgroup::trivial(klein)) == 1);

  AbelianGroup e9{3, 3};
  std::vector<Subgroup> lines{cyc(e9, {1, 0}), cyc(e9, {0, 1})};
  CHECK(count_common_complements_direct(lines, Subgroup::trivial(e9)) == 2);
  CHECK(enumerate_common_complements_direct(lines, Subgroup::trivial(e9)) == oracle_common_complements(lines));

  AbelianGroup g{4, 2};
  std::vector<Subgroup> one{cyc(g, {1, 0})};
  CHECK(count_common_complements_direct(one, cyc(g, {0, 1})) == count_complements(one[0]));

  std::vector<Subgroup> bad{cyc(g, {1, 0}), cyc(g, {1, 1})};
  CHECK_THROWS_AS(count_common_complements_direct(bad, cyc(g, {0, 1})), PreconditionError);
  std::vector<Subgroup> mixed{cyc(AbelianGroup{2, 4}, {1, 0}), cyc(AbelianGroup{2, 4}, {0, 1})};
  CHECK(count_common_complements_direct(mixed, Subgroup::trivial(AbelianGroup{2, 4})) == 0);
}

TEST_CASE("property: direct-decomposition count matches enumeration and scan") {
  struct Case {
    AbelianGroup g;
    std::vector<GroupElement> as;
    GroupElement b;
  };
  std::vector<Case> cases{
      {AbelianGroup{4, 4, 2}, {{1, 0, 0}, {0, 1, 0}}, {0, 0, 1}},
      {AbelianGroup{4, 4, 4}, {{1, 0, 0}, {0, 1, 0}}, {0, 0, 1}},
      {AbelianGroup{3, 3, 3}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {0, 0, 0}},
      {AbelianGroup{6, 6, 2}, {{1, 0, 0}, {1, 1, 0}}, {0, 0, 1}},
      {AbelianGroup{2, 2, 2, 2}, {{1, 0, 0, 0}, {0, 1, 0, 0}}, {0, 0, 1, 0}},
  };
  for (const auto& c : cases) {
    std::vector<Subgroup> as;
    for (const auto& x : c.as) as.push_back(cyc(c.g, x));
    Subgroup b = cyc(c.g, c.b);
    if (c.g.rank() == 4) b = join(b, cyc(c.g, {0, 0, 0, 1}));
    auto listed = enumerate_common_complements_direct(as, b);
    CHECK(count_common_complements_direct(as, b) == static_cast<std::int64_t>(listed.size()));
    CHECK(listed == oracle_common_complements(as));
    // Cyclic specialization: phi(n)^(t-1) |Gamma_n(B)|.
    const auto n = as.front().order();
    std::int64_t expected = static_cast<std::int64_t>(gamma_subgroup(b, n).order());
    for (std::size_t i = 1; i < as.size(); ++i) expected *= static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(n)));
    CHECK(count_common_complements_direct(as, b) == expected);
  }
}

TEST_CASE("count_common_two_cyclic_maximal examples") {
  AbelianGroup klein{2, 2};
  CHECK(count_common_two_cyclic_maximal(cyc(klein, {1, 0}), cyc(klein, {0, 1})) == 1);
  AbelianGroup g{4, 2};
  CHECK(count_common_two_cyclic_maximal(cyc(g, {1, 0}), cyc(g, {1, 1})) == 2);
  CHECK(count_common_two_cyclic_maximal(cyc(g, {1, 1}), cyc(g, {1, 1})) == 2);
  CHECK_THROWS_AS(count_common_two_cyclic_maximal(cyc(g, {2, 0}), cyc(g, {1, 1})), PreconditionError);
  CHECK_THROWS_AS(count_common_two_cyclic_maximal(cyc(AbelianGroup{6}, {1}), cyc(AbelianGroup{6}, {1})),
                  PreconditionError);
}

TEST_CASE("lower_bound_common_complements examples") {
  CHECK(lower_bound_common_complements(3, 3, 2) == Rational{2, 1});
  CHECK(lower_bound_common_complements(7, 5, 1) == Rational{7, 1});
  CHECK(lower_bound_common_complements(9, 3, 4) == Rational{0, 1});
  CHECK(lower_bound_common_complements(4, 2, 2) == Rational{2, 1});
  CHECK(lower_bound_common_complements(2, 3, 3) == Rational{2, 3});
  CHECK(lower_bound_common_complements(9, 3, 4).at_most(0));
  CHECK_FALSE(lower_bound_common_complements(2, 3, 3).at_most(0));
}

TEST_CASE("common_complement examples") {
  AbelianGroup e9{3, 3};
  std::vector<Subgroup> two{cyc(e9, {1, 0}), cyc(e9, {0, 1})};
  auto k = common_complement(two);
  CHECK(k.order() == 3);
  CHECK(k != two[0]);
  CHECK(k != two[1]);
  for (const auto& a : two) CHECK(is_complement_pair(a, k));

  AbelianGroup g{4, 2};
  std::vector<Subgroup> one{cyc(g, {2, 1})};
  CHECK(is_complement_pair(one[0], common_complement(one)));

  AbelianGroup klein{2, 2};
  std::vector<Subgroup> kl{cyc(klein, {1, 0}), cyc(klein, {0, 1})};
  CHECK(common_complement(kl) == cyc(klein, {1, 1}));

  std::vector<Subgroup> three{cyc(klein, {1, 0}), cyc(klein, {0, 1}), cyc(klein, {1, 1})};
  CHECK_THROWS_AS(common_complement(three), PreconditionError);
  std::vector<Subgroup> noncompl{cyc(AbelianGroup{4}, {2})};
  CHECK_THROWS_AS(common_complement(noncompl), PreconditionError);
}

TEST_CASE("property: common_complement succeeds whenever its hypotheses hold") {
  std::mt19937_64 rng(3);
  int built = 0;
  for (const auto& g : isomorphism_classes(200)) {
    auto subs = all_subgroups(g);
    if (subs.size() > 400) continue;
    std::vector<Subgroup> complemented;
    for (const auto& a : subs) {
      if (!a.is_trivial() && is_complemented(a)) complemented.push_back(a);
    }
    for (int trial = 0; trial < 6 && !complemented.empty(); ++trial) {
      const auto& first = complemented[rng() % complemented.size()];
      std::vector<Subgroup> family{first};
      for (const auto& a : complemented) {
        if (family.size() == 1 + rng() % 4) break;
        if (a != first && std::ranges::equal(a.invariant_factors(), first.invariant_factors()) && rng() % 2) {
          family.push_back(a);
        }
      }
      const auto t = family.size();
      bool admissible = true;
      for (const auto& pp : factorize(static_cast<std::uint64_t>(first.order()))) {
        if (t <= pp.prime) continue;
        std::vector<Subgroup> parts;
        for (const auto& a : family) parts.push_back(sylow_part(a, pp.prime));
        admissible = admissible && parts.front().is_cyclic() && distinct_omegas(parts, pp.prime) <= pp.prime;
      }
      if (!admissible) {
        CHECK_THROWS_AS(common_complement(family), PreconditionError);
        continue;
      }
      auto k = common_complement(family);
      for (const auto& a : family) CHECK(is_complement_pair(a, k));
      ++built;
    }
  }
  CHECK(built > 100);
}
