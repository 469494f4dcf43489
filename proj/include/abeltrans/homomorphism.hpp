#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "abeltrans/group.hpp"
#include "abeltrans/subgroup.hpp"

namespace abeltrans {

/// A homomorphism from Z/d_1 x ... x Z/d_r (usually a subgroup presented by
/// its Smith generators) into `target`, given by generator images.
class Homomorphism {
 public:
  /// Throws PreconditionError unless d_i * images[i] = 0 for every i.
  Homomorphism(std::vector<std::int64_t> source_orders, AbelianGroup target, std::vector<GroupElement> images);

  std::span<const std::int64_t> source_orders() const { return source_orders_; }
  const AbelianGroup& target() const { return target_; }
  std::span<const GroupElement> images() const { return images_; }

  GroupElement apply(std::span<const std::int64_t> coords) const;
  Subgroup image() const;
  bool is_injective() const;

 private:
  std::vector<std::int64_t> source_orders_;
  AbelianGroup target_;
  std::vector<GroupElement> images_;
};

/// Hom(Z/d_1 x ... x Z/d_r, T) for a subgroup T: generator i ranges over
/// Gamma_{d_i}(T). Homomorphisms are indexed in mixed radix, first generator
/// most significant, each choice list in elements_of order.
class HomSpace {
 public:
  HomSpace(std::vector<std::int64_t> source_orders, const Subgroup& target, std::uint64_t cap = kDefaultElementCap);

  std::uint64_t size() const { return size_; }
  std::span<const std::int64_t> source_orders() const { return source_orders_; }
  /// Generator images of homomorphism number `index`.
  std::vector<GroupElement> images(std::uint64_t index) const;
  Homomorphism at(std::uint64_t index) const;

 private:
  std::vector<std::int64_t> source_orders_;
  AbelianGroup ambient_;
  std::vector<std::vector<GroupElement>> choices_;
  std::uint64_t size_ = 1;
};

/// |Hom(Z/a_1 x ..., Z/b_1 x ...)| = prod gcd(a_i, b_j), overflow-checked.
std::int64_t hom_count(std::span<const std::int64_t> source, std::span<const std::int64_t> target);

}  // namespace abeltrans
