#include "abeltrans/sweeps.hpp"
#include "doctest.h"

using namespace abeltrans;

TEST_CASE("complement sweep agrees on small groups") {
  const auto r = sweep_complements(32);
  CHECK(r.disagreements == 0);
  CHECK(r.tally.count("sampled groups") == 0);
  CHECK(r.tally.at("complemented") > 0);
}

TEST_CASE("complement sweep reduces large groups per isomorphism type") {
  ComplementSweepOptions o;
  o.subgroup_limit = 60;
  o.sample_per_type = 2;
  const auto r = sweep_complements(16, o);
  CHECK(r.disagreements == 0);
  // C2^4 has 67 subgroups in 5 types; C4 x C2 x C2 has 27.
  CHECK(r.tally.at("sampled groups") == 1);
  const auto full = sweep_complements(16);
  CHECK(full.instances - r.instances == r.tally.at("subgroups skipped"));
  CHECK(r.tally.at("subgroups skipped") >= 67 - 5 * 4);
}

TEST_CASE("three cyclic sweep on 2-groups") {
  ThreeCyclicSweepOptions o;
  o.two_groups_only = true;
  const auto r = sweep_three_cyclic(16, o);
  CHECK(r.disagreements == 0);
  CHECK(r.tally.at("not-exists") > 0);
  CHECK(r.tally.at("constructed") > 0);
  CHECK(r.family == "three-cyclic-2-groups");
}

TEST_CASE("maximal cyclic sweep") {
  const auto r = sweep_maximal_cyclic(2, 4);
  CHECK(r.disagreements == 0);
  CHECK(r.tally.at("proportion sharp") > 0);
  CHECK(r.tally.at("pairs") > 0);
}

TEST_CASE("sweep reports merge") {
  SweepReport a, b;
  a.groups = 1;
  a.tally["x"] = 2;
  b.groups = 2;
  b.disagreements = 1;
  b.tally["x"] = 3;
  b.failures = {"f"};
  a.merge(b);
  CHECK(a.groups == 3);
  CHECK(a.disagreements == 1);
  CHECK(a.tally["x"] == 5);
  CHECK(a.failures.size() == 1);
}
