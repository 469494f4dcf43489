#include "abeltrans/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "abeltrans/errors.hpp"

namespace abeltrans {

std::string to_string(const GroupElement& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

AbelianGroup::AbelianGroup(std::vector<std::int64_t> orders) {
  for (auto n : orders) {
    if (n < 1) throw PreconditionError("cyclic factor orders must be positive");
    if (n == 1) continue;
    orders_.push_back(n);
    order_ = checked_mul(order_, n);
  }
}

std::int64_t AbelianGroup::exponent() const {
  std::int64_t e = 1;
  for (auto n : orders_) e = checked_lcm(e, n);
  return e;
}

GroupElement AbelianGroup::unit(std::size_t i) const {
  GroupElement e = zero();
  e.residues.at(i) = 1;
  return e;
}

GroupElement AbelianGroup::element(std::vector<std::int64_t> values) const {
  if (values.size() != orders_.size()) {
    throw PreconditionError("element has " + std::to_string(values.size()) + " coordinates, group " +
                            to_string(*this) + " needs " + std::to_string(orders_.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<std::int64_t>(floor_mod(values[i], orders_[i]));
  return GroupElement(std::move(values));
}

GroupElement AbelianGroup::element_from(std::span<const i128> values) const {
  if (values.size() != orders_.size()) throw PreconditionError("element arity mismatch");
  std::vector<std::int64_t> r(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) r[i] = static_cast<std::int64_t>(floor_mod(values[i], orders_[i]));
  return GroupElement(std::move(r));
}

bool AbelianGroup::contains(const GroupElement& x) const {
  if (x.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= orders_[i]) return false;
  }
  return true;
}

void AbelianGroup::require(const GroupElement& x) const {
  if (!contains(x)) throw PreconditionError("element " + to_string(x) + " is not in " + to_string(*this));
}

GroupElement AbelianGroup::add(const GroupElement& x, const GroupElement& y) const {
  require(x);
  require(y);
  GroupElement r = x;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.residues[i] += y[i];
    if (r.residues[i] >= orders_[i] || r.residues[i] < 0) r.residues[i] -= orders_[i];
  }
  return r;
}

GroupElement AbelianGroup::negate(const GroupElement& x) const {
  require(x);
  GroupElement r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r.residues[i] = r[i] == 0 ? 0 : orders_[i] - r[i];
  return r;
}

GroupElement AbelianGroup::subtract(const GroupElement& x, const GroupElement& y) const {
  return add(x, negate(y));
}

GroupElement AbelianGroup::scale(std::int64_t c, const GroupElement& x) const {
  require(x);
  GroupElement r = x;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.residues[i] = static_cast<std::int64_t>(floor_mod(static_cast<i128>(c) * x[i], orders_[i]));
  }
  return r;
}

std::int64_t AbelianGroup::element_order(const GroupElement& x) const {
  require(x);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < x.size(); ++i) ord = checked_lcm(ord, orders_[i] / std::gcd(orders_[i], x[i]));
  return ord;
}

std::uint64_t AbelianGroup::index_of(const GroupElement& x) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx = idx * static_cast<std::uint64_t>(orders_[i]) + static_cast<std::uint64_t>(x[i]);
  return idx;
}

GroupElement AbelianGroup::element_at(std::uint64_t index) const {
  std::vector<std::int64_t> r(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    auto n = static_cast<std::uint64_t>(orders_[i]);
    r[i] = static_cast<std::int64_t>(index % n);
    index /= n;
  }
  return GroupElement(std::move(r));
}

void AbelianGroup::for_each_element(const std::function<void(const GroupElement&)>& fn) const {
  GroupElement x = zero();
  for (;;) {
    fn(x);
    std::size_t i = x.size();
    while (i > 0) {
      --i;
      if (++x.residues[i] < orders_[i]) break;
      x.residues[i] = 0;
      if (i == 0) return;
    }
    if (x.size() == 0) return;
  }
}

std::string to_string(const AbelianGroup& g) {
  if (g.is_trivial()) return "C1";
  std::string s;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) s += "x";
    s += "C" + std::to_string(g.orders()[i]);
  }
  return s;
}

PrimaryDecomposition::PrimaryDecomposition(const AbelianGroup& source) : source_(source) {
  std::vector<std::int64_t> refined;
  for (std::size_t i = 0; i < source.rank(); ++i) {
    const std::int64_t n = source.orders()[i];
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(n))) {
      const auto q = checked_pow(static_cast<std::int64_t>(p), e);
      refined.push_back(q);
      primes_.push_back(p);
      exponents_.push_back(e);
      origin_.push_back(i);
      // c = (n/q) * ((n/q)^{-1} mod q): 1 mod q, 0 mod the other prime powers.
      const std::int64_t cof = n / q;
      const std::int64_t inv = q == 1 ? 0 : mod_inverse(cof % q, q);
      crt_coeff_.push_back(static_cast<std::int64_t>(floor_mod(static_cast<i128>(cof) * inv, n)));
    }
  }
  primary_ = AbelianGroup(refined);
}

std::vector<std::uint64_t> PrimaryDecomposition::distinct_primes() const {
  std::set<std::uint64_t> s(primes_.begin(), primes_.end());
  return {s.begin(), s.end()};
}

GroupElement PrimaryDecomposition::to_primary(const GroupElement& x) const {
  source_.require(x);
  std::vector<std::int64_t> y(primary_.rank());
  for (std::size_t f = 0; f < y.size(); ++f) y[f] = x[origin_[f]] % primary_.orders()[f];
  return GroupElement(std::move(y));
}

GroupElement PrimaryDecomposition::from_primary(const GroupElement& y) const {
  primary_.require(y);
  std::vector<i128> x(source_.rank(), 0);
  for (std::size_t f = 0; f < y.size(); ++f) {
    const std::int64_t n = source_.orders()[origin_[f]];
    x[origin_[f]] = floor_mod(x[origin_[f]] + floor_mod(static_cast<i128>(crt_coeff_[f]) * y[f], n), n);
  }
  return source_.element_from(x);
}

}  // namespace abeltrans
