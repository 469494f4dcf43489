#include "abeltrans/homomorphism.hpp"

#include <numeric>

#include "abeltrans/errors.hpp"

namespace abeltrans {

Homomorphism::Homomorphism(std::vector<std::int64_t> source_orders, AbelianGroup target,
                           std::vector<GroupElement> images)
    : source_orders_(std::move(source_orders)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_orders_.size()) throw PreconditionError("one image per source generator required");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    target_.require(images_[i]);
    if (target_.scale(source_orders_[i], images_[i]) != target_.zero()) {
      throw PreconditionError("image " + to_string(images_[i]) + " of a generator of order " +
                              std::to_string(source_orders_[i]) + " is not killed by that order");
    }
  }
}

GroupElement Homomorphism::apply(std::span<const std::int64_t> coords) const {
  if (coords.size() != images_.size()) throw PreconditionError("coordinate count mismatch");
  GroupElement x = target_.zero();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] != 0) x = target_.add(x, target_.scale(coords[i], images_[i]));
  }
  return x;
}

Subgroup Homomorphism::image() const { return Subgroup::generated(target_, images_); }

bool Homomorphism::is_injective() const {
  i128 source = 1;
  for (auto d : source_orders_) source *= d;
  return image().order() == source;
}

HomSpace::HomSpace(std::vector<std::int64_t> source_orders, const Subgroup& target, std::uint64_t cap)
    : source_orders_(std::move(source_orders)), ambient_(target.ambient()) {
  for (auto d : source_orders_) {
    auto allowed = gamma_subgroup(target, d);
    auto n = static_cast<std::uint64_t>(allowed.order());
    if (n > cap || size_ > cap / n) {
      throw CapExceeded("homomorphism space exceeds enumeration cap " + std::to_string(cap));
    }
    size_ *= n;
    choices_.push_back(elements_of(allowed, cap));
  }
}

std::vector<GroupElement> HomSpace::images(std::uint64_t index) const {
  std::vector<GroupElement> out(choices_.size());
  for (std::size_t i = choices_.size(); i-- > 0;) {
    const auto n = choices_[i].size();
    out[i] = choices_[i][index % n];
    index /= n;
  }
  return out;
}

Homomorphism HomSpace::at(std::uint64_t index) const { return Homomorphism(source_orders_, ambient_, images(index)); }

std::int64_t hom_count(std::span<const std::int64_t> source, std::span<const std::int64_t> target) {
  std::int64_t r = 1;
  for (auto a : source) {
    for (auto b : target) r = checked_mul(r, std::gcd(a, b));
  }
  return r;
}

}  // namespace abeltrans
