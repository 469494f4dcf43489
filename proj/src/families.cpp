#include "abeltrans/families.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace abeltrans {

std::vector<AbelianGroup> cyclic_factorizations(std::int64_t max_order) {
  std::vector<AbelianGroup> out;
  std::vector<std::int64_t> factors;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t largest, std::int64_t order) {
    out.emplace_back(factors);
    for (std::int64_t n = 2; n <= largest && order * n <= max_order; ++n) {
      factors.push_back(n);
      rec(n, order * n);
      factors.pop_back();
    }
  };
  rec(max_order, 1);
  std::stable_sort(out.begin(), out.end(), [](const AbelianGroup& a, const AbelianGroup& b) {
    return a.order() < b.order();
  });
  return out;
}

std::vector<AbelianGroup> isomorphism_classes(std::int64_t max_order) {
  std::vector<AbelianGroup> out;
  std::vector<std::int64_t> factors;
  // Invariant factor lists d_1 | d_2 | ... listed largest first while building.
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t bound, std::int64_t order) {
    if (!factors.empty()) out.emplace_back(std::vector<std::int64_t>(factors.rbegin(), factors.rend()));
    for (std::int64_t d = 2; d <= bound && order * d <= max_order; ++d) {
      if (!factors.empty() && factors.back() % d != 0) continue;
      factors.push_back(d);
      rec(d, order * d);
      factors.pop_back();
    }
  };
  rec(max_order, 1);
  std::sort(out.begin(), out.end(), [](const AbelianGroup& a, const AbelianGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return std::ranges::lexicographical_compare(a.orders(), b.orders());
  });
  return out;
}

std::vector<AbelianGroup> p_groups(std::int64_t p, unsigned max_exponent) {
  std::vector<AbelianGroup> out;
  std::vector<std::int64_t> parts;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned largest) {
    if (remaining == 0) {
      std::vector<std::int64_t> orders;
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) orders.push_back(checked_pow(p, static_cast<unsigned>(*it)));
      out.emplace_back(orders);
      return;
    }
    for (unsigned k = std::min(remaining, largest); k >= 1; --k) {
      parts.push_back(k);
      rec(remaining - k, k);
      parts.pop_back();
    }
  };
  for (unsigned e = 1; e <= max_exponent; ++e) rec(e, e);
  return out;
}

std::vector<Subgroup> cyclic_subgroups(const AbelianGroup& g, std::int64_t order) {
  std::set<Subgroup> found;
  g.for_each_element([&](const GroupElement& x) {
    if (order != 0 && g.element_order(x) != order) return;
    found.insert(Subgroup::generated(g, {x}));
  });
  return {found.begin(), found.end()};
}

}  // namespace abeltrans
