#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abeltrans/group.hpp"
#include "abeltrans/lattice.hpp"

namespace abeltrans {

/// Default budget for explicit element enumeration.
inline constexpr std::uint64_t kDefaultElementCap = std::uint64_t{1} << 20;

/// A subgroup stored as its generator lattice in canonical HNF. Two subgroups
/// of the same ambient group are equal iff their basis matrices are equal.
class Subgroup {
 public:
  static Subgroup generated(const AbelianGroup& ambient, std::span<const GroupElement> generators);
  static Subgroup generated(const AbelianGroup& ambient, std::initializer_list<GroupElement> generators) {
    return generated(ambient, std::span<const GroupElement>(generators.begin(), generators.size()));
  }
  static Subgroup trivial(const AbelianGroup& ambient);
  static Subgroup whole(const AbelianGroup& ambient);

  const AbelianGroup& ambient() const { return ambient_; }
  const lattice::IntMatrix& basis() const { return basis_; }
  std::int64_t order() const { return order_; }
  std::int64_t index() const { return ambient_.order() / order_; }
  std::int64_t exponent() const;

  /// d_1 | d_2 | ... with product |H|; empty for the trivial subgroup.
  std::span<const std::int64_t> invariant_factors() const { return invariants_; }
  /// Generators of the cyclic factors; smith_generators()[i] has order invariant_factors()[i].
  std::span<const GroupElement> smith_generators() const { return smith_generators_; }
  /// Nonzero HNF columns as elements.
  std::vector<GroupElement> generators() const;

  bool is_trivial() const { return order_ == 1; }
  bool is_whole() const { return order_ == ambient_.order(); }
  bool is_cyclic() const { return invariants_.size() <= 1; }
  bool contains(const GroupElement& x) const;
  bool contains(const Subgroup& other) const;

  /// Canonical representative of x + H.
  GroupElement coset_representative(const GroupElement& x) const;
  /// Coset number in [0, index()), consistent with coset_representative.
  std::uint64_t coset_index(const GroupElement& x) const;

  /// Coordinates of x in H with respect to smith_generators().
  std::vector<std::int64_t> smith_coordinates(const GroupElement& x) const;
  GroupElement from_smith_coordinates(std::span<const std::int64_t> coords) const;

  bool operator==(const Subgroup& other) const;
  std::strong_ordering operator<=>(const Subgroup& other) const;

 private:
  Subgroup(AbelianGroup ambient, lattice::IntMatrix basis);

  AbelianGroup ambient_;
  lattice::IntMatrix basis_;
  std::int64_t order_ = 1;
  std::vector<std::int64_t> invariants_;
  std::vector<GroupElement> smith_generators_;
  std::vector<lattice::IntVector> coordinate_rows_;  // one per invariant factor
};

std::string to_string(const Subgroup& h);

Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// True iff a + b = ambient and a & b = 0 (checked independently, plus |a||b| = |G|).
bool is_complement_pair(const Subgroup& a, const Subgroup& b);

/// G/N in invariant-factor form with the canonical projection and a section.
class Quotient {
 public:
  Quotient(const AbelianGroup& ambient, const Subgroup& kernel);

  const AbelianGroup& group() const { return group_; }
  const AbelianGroup& ambient() const { return ambient_; }
  const Subgroup& kernel() const { return kernel_; }

  GroupElement project(const GroupElement& x) const;
  GroupElement section(const GroupElement& q) const;
  Subgroup project(const Subgroup& h) const;
  /// Full preimage of a subgroup of the quotient.
  Subgroup preimage(const Subgroup& q) const;

 private:
  AbelianGroup ambient_;
  Subgroup kernel_;
  AbelianGroup group_;
  std::vector<lattice::IntVector> projection_rows_;
  std::vector<GroupElement> section_images_;
};

Quotient quotient_group(const AbelianGroup& ambient, const Subgroup& kernel);

/// Elements of p-power order in H.
Subgroup sylow_part(const Subgroup& h, std::uint64_t p);
/// <g : n g = 0> in G, resp. in H.
Subgroup gamma_subgroup(const AbelianGroup& g, std::int64_t n);
Subgroup gamma_subgroup(const Subgroup& h, std::int64_t n);
/// Gamma_p(H).
Subgroup omega(const Subgroup& h, std::uint64_t p);

/// Image of H under the coordinate change into the refined primary group, and back.
Subgroup to_primary(const PrimaryDecomposition& pd, const Subgroup& h);
Subgroup from_primary(const PrimaryDecomposition& pd, const Subgroup& h);

/// Each element exactly once, lexicographic in Smith coordinates.
/// Throws CapExceeded if |H| > cap.
std::vector<GroupElement> elements_of(const Subgroup& h, std::uint64_t cap = kDefaultElementCap);

/// Elements of the ambient group itself, lexicographic.
std::vector<GroupElement> elements_of(const AbelianGroup& g, std::uint64_t cap = kDefaultElementCap);

/// H viewed as an abstract group Z/d_1 x ... x Z/d_r via its Smith generators.
class Presentation {
 public:
  explicit Presentation(Subgroup image);

  const AbelianGroup& group() const { return group_; }
  const Subgroup& image() const { return image_; }

  GroupElement to_ambient(const GroupElement& local) const;
  GroupElement to_local(const GroupElement& x) const;
  Subgroup to_ambient(const Subgroup& local) const;
  Subgroup to_local(const Subgroup& s) const;

 private:
  Subgroup image_;
  AbelianGroup group_;
};

}  // namespace abeltrans
