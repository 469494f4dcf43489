#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "abeltrans/group.hpp"
#include "abeltrans/oracle.hpp"

namespace abeltrans {

/// Outcome of an exhaustive family run. Tally keys are stable strings; the
/// report depends only on the inputs.
struct SweepReport {
  std::string family;
  std::int64_t max_order = 0;
  std::int64_t groups = 0;
  std::int64_t instances = 0;
  std::int64_t disagreements = 0;
  std::map<std::string, std::int64_t> tally;
  /// First few disagreements, human readable.
  std::vector<std::string> failures;

  void merge(const SweepReport& other);
};

struct ThreeCyclicSweepOptions {
  bool two_groups_only = false;
  /// Also build and verify a transversal for every unordered triple with one.
  bool construct = true;
  std::uint64_t cap = kDefaultOracleCap;
};

/// Every factorization of every order <= max_order into cyclic factors and
/// every ordered triple of equal-order cyclic subgroups: decision against the
/// exact-cover oracle.
SweepReport sweep_three_cyclic(std::int64_t max_order, const ThreeCyclicSweepOptions& options = {});

struct ComplementSweepOptions {
  /// Groups with more subgroups than this are sampled per isomorphism type.
  std::size_t subgroup_limit = 20000;
  std::size_t sample_per_type = 32;
  std::uint64_t cap = 256;
};

/// For each group of order <= max_order and each complemented subgroup:
/// formula count, enumeration and oracle scan agree; is_complemented agrees
/// with the scan.
SweepReport sweep_complements(std::int64_t max_order, const ComplementSweepOptions& options = {});

struct MaximalCyclicSweepOptions {
  /// Families of size up to this are checked exhaustively.
  std::size_t exhaustive_family_size = 3;
  std::size_t random_families = 2000;
  std::uint64_t seed = 1;
};

/// p-groups of order <= p^max_exponent, cyclic subgroups of maximal order:
/// the two-subgroup count formula and the phi(s) proportion bound on every
/// ordered pair, and the s (1 - (omega - 1) / p) bound on families, all
/// against oracle counts.
SweepReport sweep_maximal_cyclic(std::int64_t p, unsigned max_exponent, const MaximalCyclicSweepOptions& options = {});

}  // namespace abeltrans
