#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "abeltrans/integer.hpp"

namespace abeltrans {

/// An element as a residue vector, one coordinate per cyclic factor. Group
/// operations live on AbelianGroup, which validates arity and reduction.
struct GroupElement {
  std::vector<std::int64_t> residues;

  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> r) : residues(std::move(r)) {}
  GroupElement(std::initializer_list<std::int64_t> r) : residues(r) {}

  std::size_t size() const { return residues.size(); }
  std::int64_t operator[](std::size_t i) const { return residues[i]; }

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& x);

/// Z/n_1 x ... x Z/n_k. Factors of order 1 are dropped; the trivial group
/// has no factors. The factor list is kept in the given order.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<std::int64_t> orders);
  AbelianGroup(std::initializer_list<std::int64_t> orders)
      : AbelianGroup(std::vector<std::int64_t>(orders)) {}

  std::span<const std::int64_t> orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::int64_t order() const { return order_; }
  std::int64_t exponent() const;
  bool is_trivial() const { return orders_.empty(); }

  GroupElement zero() const { return GroupElement(std::vector<std::int64_t>(orders_.size(), 0)); }
  GroupElement unit(std::size_t i) const;

  /// Reduces arbitrary integers into residues; length must match.
  GroupElement element(std::vector<std::int64_t> values) const;
  GroupElement element_from(std::span<const i128> values) const;
  bool contains(const GroupElement& x) const;
  void require(const GroupElement& x) const;

  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement negate(const GroupElement& x) const;
  GroupElement subtract(const GroupElement& x, const GroupElement& y) const;
  GroupElement scale(std::int64_t c, const GroupElement& x) const;
  std::int64_t element_order(const GroupElement& x) const;

  /// Mixed-radix index (first coordinate most significant) and its inverse.
  std::uint64_t index_of(const GroupElement& x) const;
  GroupElement element_at(std::uint64_t index) const;

  /// Visits all elements in lexicographic order.
  void for_each_element(const std::function<void(const GroupElement&)>& fn) const;

  bool operator==(const AbelianGroup&) const = default;

 private:
  std::vector<std::int64_t> orders_;
  std::int64_t order_ = 1;
};

std::string to_string(const AbelianGroup& g);

/// Refinement of every cyclic factor into prime-power factors via CRT, with
/// the coordinate change in both directions. Refined factors appear in source
/// factor order, primes ascending within each source factor.
class PrimaryDecomposition {
 public:
  explicit PrimaryDecomposition(const AbelianGroup& source);

  const AbelianGroup& source() const { return source_; }
  const AbelianGroup& primary() const { return primary_; }
  std::uint64_t prime(std::size_t factor) const { return primes_[factor]; }
  unsigned exponent(std::size_t factor) const { return exponents_[factor]; }
  std::size_t origin(std::size_t factor) const { return origin_[factor]; }
  std::span<const std::uint64_t> primes() const { return primes_; }

  /// Distinct primes dividing |G|, ascending.
  std::vector<std::uint64_t> distinct_primes() const;

  GroupElement to_primary(const GroupElement& x) const;
  GroupElement from_primary(const GroupElement& y) const;

 private:
  AbelianGroup source_;
  AbelianGroup primary_;
  std::vector<std::uint64_t> primes_;
  std::vector<unsigned> exponents_;
  std::vector<std::size_t> origin_;
  std::vector<std::int64_t> crt_coeff_;  // per refined factor, modulo its source order
};

}  // namespace abeltrans
