#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abeltrans/group.hpp"
#include "abeltrans/subgroup.hpp"

namespace abeltrans {

/// Largest ambient order the exhaustive searches accept by default.
inline constexpr std::uint64_t kDefaultOracleCap = 4096;

/// Elements of G addressed by their mixed-radix index, with index arithmetic.
/// Nothing here touches the lattice code.
class ElementTable {
 public:
  explicit ElementTable(const AbelianGroup& g, std::uint64_t cap = kDefaultOracleCap);

  const AbelianGroup& group() const { return group_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(order_); }
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t index(const GroupElement& x) const;
  GroupElement element(std::uint32_t i) const { return group_.element_at(i); }

 private:
  AbelianGroup group_;
  std::uint64_t order_;
  std::vector<std::uint32_t> radix_;  // place value of each coordinate
};

/// A subgroup as a bitset over element indices, with the generators it was
/// built from.
struct ElementSubgroup {
  std::vector<std::uint64_t> bits;
  std::vector<std::uint32_t> generators;
  std::uint32_t order = 0;

  bool contains(std::uint32_t x) const { return (bits[x >> 6] >> (x & 63)) & 1; }
  bool meets_trivially(const ElementSubgroup& other) const;
};

/// Closure of the given element indices under addition.
ElementSubgroup closure(const ElementTable& table, std::span<const std::uint32_t> generators);
ElementSubgroup closure(const ElementTable& table, const Subgroup& h);

/// Per target, each element's coset label in [0, index); labels number the
/// cosets by their smallest element.
struct CosetIncidence {
  std::uint32_t universe = 0;
  std::uint32_t classes = 0;
  std::vector<std::vector<std::uint32_t>> labels;
};

CosetIncidence coset_incidence(const ElementTable& table, std::span<const Subgroup> targets);
/// Single-threaded reference for coset_incidence; same output.
CosetIncidence coset_incidence_serial(const ElementTable& table, std::span<const Subgroup> targets);

struct OracleOptions {
  std::uint64_t cap = kDefaultOracleCap;
  /// Always place the smallest element of each search component in the set.
  bool pin_identity = true;
  /// Search each coset of the sum of the targets separately.
  bool split_components = true;
};

/// Exact-cover search for a common transversal. Absence is certified by
/// exhausting the search. Throws if |G| > cap or the indices differ.
std::optional<std::vector<GroupElement>> oracle_common_transversal(std::span<const Subgroup> targets,
                                                                   const OracleOptions& options = {});

/// All subgroups of G (of the given order, or every order when order == 0) as
/// element sets, in bitset order. Found by adjoining coset-minimal elements to
/// smaller subgroups, starting from the trivial one.
std::vector<ElementSubgroup> oracle_subgroup_sets(const ElementTable& table, std::int64_t order = 0);

/// All subgroups of G of the given order, sorted by basis.
std::vector<Subgroup> oracle_enumerate_subgroups(const AbelianGroup& g, std::int64_t order,
                                                 std::uint64_t cap = kDefaultOracleCap);

/// Subgroups that complement every A_i, found by scanning all subgroups of
/// order |G|/|A_1|. Sorted by basis.
std::vector<Subgroup> oracle_common_complements(std::span<const Subgroup> as, std::uint64_t cap = kDefaultOracleCap);

Subgroup to_subgroup(const ElementTable& table, const ElementSubgroup& h);

}  // namespace abeltrans
