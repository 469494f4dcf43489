#pragma once

// Element-set arithmetic used as an independent reference in tests. Nothing
// here touches the lattice code.

#include <random>
#include <set>
#include <vector>

#include "abeltrans/group.hpp"

namespace brute {

using abeltrans::AbelianGroup;
using abeltrans::GroupElement;
using ElementSet = std::set<GroupElement>;

inline ElementSet closure(const AbelianGroup& g, const std::vector<GroupElement>& gens) {
  ElementSet s{g.zero()};
  std::vector<GroupElement> frontier{g.zero()};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier) {
      for (const auto& y : gens) {
        auto z = g.add(x, y);
        if (s.insert(z).second) next.push_back(z);
      }
    }
    frontier = std::move(next);
  }
  return s;
}

inline ElementSet all_elements(const AbelianGroup& g) {
  ElementSet s;
  g.for_each_element([&](const GroupElement& x) { s.insert(x); });
  return s;
}

inline ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet r;
  for (const auto& x : a) {
    if (b.count(x)) r.insert(x);
  }
  return r;
}

inline ElementSet sumset(const AbelianGroup& g, const ElementSet& a, const ElementSet& b) {
  ElementSet r;
  for (const auto& x : a) {
    for (const auto& y : b) r.insert(g.add(x, y));
  }
  return r;
}

inline GroupElement random_element(const AbelianGroup& g, std::mt19937_64& rng) {
  std::vector<std::int64_t> r;
  for (auto n : g.orders()) r.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)));
  return GroupElement(r);
}

inline std::vector<GroupElement> random_elements(const AbelianGroup& g, std::mt19937_64& rng, int count) {
  std::vector<GroupElement> out;
  for (int i = 0; i < count; ++i) out.push_back(random_element(g, rng));
  return out;
}

/// Random group with |G| <= max_order, factors in [2, 12].
inline AbelianGroup random_group(std::mt19937_64& rng, std::int64_t max_order) {
  std::vector<std::int64_t> orders;
  std::int64_t total = 1;
  int rank = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < rank; ++i) {
    std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 11);
    if (total * n > max_order) break;
    total *= n;
    orders.push_back(n);
  }
  if (orders.empty()) orders.push_back(2);
  return AbelianGroup(orders);
}

}  // namespace brute
