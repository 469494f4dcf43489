#include "abeltrans/oracle.hpp"

#include <algorithm>
#include <unordered_set>

#include "abeltrans/errors.hpp"
#include "abeltrans/parallel.hpp"

namespace abeltrans {

ElementTable::ElementTable(const AbelianGroup& g, std::uint64_t cap)
    : group_(g), order_(static_cast<std::uint64_t>(g.order())) {
  if (order_ > cap) {
    throw CapExceeded("group of order " + std::to_string(order_) + " exceeds oracle cap " + std::to_string(cap));
  }
  radix_.assign(g.rank(), 1);
  for (std::size_t i = g.rank(); i-- > 1;) radix_[i - 1] = radix_[i] * static_cast<std::uint32_t>(g.orders()[i]);
}

std::uint32_t ElementTable::add(std::uint32_t x, std::uint32_t y) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    const auto n = static_cast<std::uint32_t>(group_.orders()[i]);
    const std::uint32_t a = (x / radix_[i]) % n;
    const std::uint32_t b = (y / radix_[i]) % n;
    out += ((a + b) % n) * radix_[i];
  }
  return out;
}

std::uint32_t ElementTable::index(const GroupElement& x) const { return static_cast<std::uint32_t>(group_.index_of(x)); }

bool ElementSubgroup::meets_trivially(const ElementSubgroup& other) const {
  if ((bits[0] & other.bits[0]) != 1) return false;
  for (std::size_t w = 1; w < bits.size(); ++w) {
    if (bits[w] & other.bits[w]) return false;
  }
  return true;
}

namespace {

std::size_t words_for(std::uint32_t n) { return (n + 63) / 64; }

void set_bit(std::vector<std::uint64_t>& bits, std::uint32_t x) { bits[x >> 6] |= std::uint64_t{1} << (x & 63); }

std::vector<std::uint32_t> members(const ElementSubgroup& h) {
  std::vector<std::uint32_t> out;
  out.reserve(h.order);
  for (std::size_t w = 0; w < h.bits.size(); ++w) {
    for (std::uint64_t b = h.bits[w]; b; b &= b - 1) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(b))));
    }
  }
  return out;
}

// <h, x>: keep adding x to every coset until the orbit returns to h.
ElementSubgroup adjoin(const ElementTable& table, const ElementSubgroup& h, const std::vector<std::uint32_t>& hm,
                       std::uint32_t x) {
  ElementSubgroup out = h;
  out.generators.push_back(x);
  std::uint32_t shift = x;
  while (!h.contains(shift)) {
    for (auto y : hm) {
      auto z = table.add(y, shift);
      set_bit(out.bits, z);
      ++out.order;
    }
    shift = table.add(shift, x);
  }
  return out;
}

struct BitsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : v) h = (h ^ w) * 1099511628211ull;
    return h;
  }
};

void require_equal_index(std::span<const Subgroup> targets) {
  if (targets.empty()) throw PreconditionError("at least one target subgroup required");
  for (const auto& t : targets) {
    if (!(t.ambient() == targets.front().ambient())) throw PreconditionError("targets live in different ambient groups");
    if (t.index() != targets.front().index()) throw PreconditionError("targets have different indices");
  }
}

// Exact cover of one component: columns are (target, coset) pairs present in it.
class CoverSearch {
 public:
  CoverSearch(const CosetIncidence& inc, const std::vector<std::uint32_t>& elements) : elements_(elements) {
    const std::size_t t = inc.labels.size();
    std::vector<std::vector<std::int32_t>> column_id(t, std::vector<std::int32_t>(inc.classes, -1));
    columns_of_.resize(elements.size());
    for (std::size_t e = 0; e < elements.size(); ++e) {
      for (std::size_t j = 0; j < t; ++j) {
        auto& id = column_id[j][inc.labels[j][elements[e]]];
        if (id < 0) {
          id = static_cast<std::int32_t>(members_.size());
          members_.emplace_back();
        }
        members_[static_cast<std::size_t>(id)].push_back(static_cast<std::uint32_t>(e));
        columns_of_[e].push_back(static_cast<std::uint32_t>(id));
      }
    }
    count_.resize(members_.size());
    for (std::size_t c = 0; c < members_.size(); ++c) count_[c] = static_cast<std::uint32_t>(members_[c].size());
    covered_.assign(members_.size(), 0);
    blocked_.assign(elements.size(), 0);
  }

  std::optional<std::vector<std::uint32_t>> solve(bool pin_first) {
    if (pin_first) select(0);
    if (!search()) return std::nullopt;
    std::vector<std::uint32_t> out;
    for (auto e : chosen_) out.push_back(elements_[e]);
    return out;
  }

 private:
  void cover(std::uint32_t c) {
    covered_[c] = 1;
    ++covered_count_;
    for (auto e : members_[c]) {
      if (blocked_[e]++ == 0) {
        for (auto c2 : columns_of_[e]) --count_[c2];
      }
    }
  }
  void uncover(std::uint32_t c) {
    for (auto it = members_[c].rbegin(); it != members_[c].rend(); ++it) {
      if (--blocked_[*it] == 0) {
        for (auto c2 : columns_of_[*it]) ++count_[c2];
      }
    }
    covered_[c] = 0;
    --covered_count_;
  }
  void select(std::uint32_t e) {
    chosen_.push_back(e);
    for (auto c : columns_of_[e]) cover(c);
  }
  void unselect(std::uint32_t e) {
    for (auto it = columns_of_[e].rbegin(); it != columns_of_[e].rend(); ++it) uncover(*it);
    chosen_.pop_back();
  }

  bool search() {
    if (covered_count_ == members_.size()) return true;
    std::uint32_t best = 0;
    std::uint32_t best_count = UINT32_MAX;
    for (std::uint32_t c = 0; c < members_.size(); ++c) {
      if (!covered_[c] && count_[c] < best_count) {
        best = c;
        best_count = count_[c];
        if (best_count == 0) return false;
      }
    }
    for (auto e : members_[best]) {
      if (blocked_[e] != 0) continue;
      select(e);
      if (search()) return true;
      unselect(e);
    }
    return false;
  }

  const std::vector<std::uint32_t>& elements_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::vector<std::uint32_t>> columns_of_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint8_t> covered_;
  std::vector<std::uint32_t> blocked_;
  std::vector<std::uint32_t> chosen_;
  std::size_t covered_count_ = 0;
};

}  // namespace

ElementSubgroup closure(const ElementTable& table, std::span<const std::uint32_t> generators) {
  ElementSubgroup h;
  h.bits.assign(words_for(table.size()), 0);
  set_bit(h.bits, 0);
  h.order = 1;
  std::vector<std::uint32_t> hm{0};
  for (auto x : generators) {
    if (h.contains(x)) continue;
    h = adjoin(table, h, hm, x);
    hm = members(h);
  }
  h.generators.assign(generators.begin(), generators.end());
  return h;
}

ElementSubgroup closure(const ElementTable& table, const Subgroup& h) {
  std::vector<std::uint32_t> gens;
  for (const auto& g : h.generators()) gens.push_back(table.index(g));
  return closure(table, gens);
}

CosetIncidence coset_incidence(const ElementTable& table, std::span<const Subgroup> targets) {
  const std::uint32_t n = table.size();
  CosetIncidence inc;
  inc.universe = n;
  inc.labels.resize(targets.size());
  std::vector<std::uint32_t> classes(targets.size(), 0);
  parallel_for(static_cast<std::int64_t>(targets.size()), [&](std::int64_t t) {
    const auto hm = members(closure(table, targets[t]));
    std::vector<std::uint32_t> labels(n, UINT32_MAX);
    std::uint32_t c = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (labels[x] != UINT32_MAX) continue;
      for (auto h : hm) labels[table.add(x, h)] = c;
      ++c;
    }
    classes[t] = c;
    inc.labels[t] = std::move(labels);
  });
  if (!targets.empty()) inc.classes = classes.back();
  return inc;
}

CosetIncidence coset_incidence_serial(const ElementTable& table, std::span<const Subgroup> targets) {
  const std::uint32_t n = table.size();
  CosetIncidence inc;
  inc.universe = n;
  for (const auto& target : targets) {
    auto hm = members(closure(table, target));
    std::vector<std::uint32_t> labels(n, UINT32_MAX);
    std::uint32_t classes = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (labels[x] != UINT32_MAX) continue;
      for (auto h : hm) labels[table.add(x, h)] = classes;
      ++classes;
    }
    inc.classes = classes;
    inc.labels.push_back(std::move(labels));
  }
  return inc;
}

std::optional<std::vector<GroupElement>> oracle_common_transversal(std::span<const Subgroup> targets,
                                                                   const OracleOptions& options) {
  require_equal_index(targets);
  ElementTable table(targets.front().ambient(), options.cap);
  const std::uint32_t n = table.size();
  auto inc = coset_incidence(table, targets);

  std::vector<std::vector<std::uint32_t>> components;
  if (options.split_components) {
    std::vector<std::uint32_t> gens;
    for (const auto& t : targets) {
      for (const auto& g : t.generators()) gens.push_back(table.index(g));
    }
    auto sum = members(closure(table, gens));
    std::vector<std::uint8_t> seen(n, 0);
    for (std::uint32_t x = 0; x < n; ++x) {
      if (seen[x]) continue;
      std::vector<std::uint32_t> comp;
      for (auto s : sum) comp.push_back(table.add(x, s));
      std::sort(comp.begin(), comp.end());
      for (auto y : comp) seen[y] = 1;
      components.push_back(std::move(comp));
    }
  } else {
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t x = 0; x < n; ++x) all[x] = x;
    components.push_back(std::move(all));
  }

  std::vector<std::uint32_t> picked;
  for (const auto& comp : components) {
    CoverSearch search(inc, comp);
    auto part = search.solve(options.pin_identity);
    if (!part) return std::nullopt;
    picked.insert(picked.end(), part->begin(), part->end());
  }
  std::sort(picked.begin(), picked.end());
  std::vector<GroupElement> out;
  for (auto x : picked) out.push_back(table.element(x));
  return out;
}

std::vector<ElementSubgroup> oracle_subgroup_sets(const ElementTable& table, std::int64_t order) {
  const std::uint32_t n = table.size();
  std::vector<ElementSubgroup> found;
  std::unordered_set<std::vector<std::uint64_t>, BitsHash> seen;
  found.push_back(closure(table, std::span<const std::uint32_t>{}));
  seen.insert(found.back().bits);
  std::vector<std::uint32_t> coset_mark(n);
  for (std::size_t next = 0; next < found.size(); ++next) {
    const ElementSubgroup h = found[next];
    const auto hm = members(h);
    std::fill(coset_mark.begin(), coset_mark.end(), 0);
    for (std::uint32_t x = 0; x < n; ++x) {
      if (coset_mark[x]) continue;
      for (auto y : hm) coset_mark[table.add(x, y)] = 1;
      if (h.contains(x)) continue;
      ElementSubgroup bigger = adjoin(table, h, hm, x);
      if (order != 0 && order % bigger.order != 0) continue;
      if (seen.insert(bigger.bits).second) found.push_back(std::move(bigger));
    }
  }
  std::vector<ElementSubgroup> out;
  for (auto& h : found) {
    if (order == 0 || h.order == order) out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const ElementSubgroup& a, const ElementSubgroup& b) { return a.bits < b.bits; });
  return out;
}

Subgroup to_subgroup(const ElementTable& table, const ElementSubgroup& h) {
  std::vector<GroupElement> gens;
  for (auto x : h.generators) gens.push_back(table.element(x));
  return Subgroup::generated(table.group(), gens);
}

std::vector<Subgroup> oracle_enumerate_subgroups(const AbelianGroup& g, std::int64_t order, std::uint64_t cap) {
  ElementTable table(g, cap);
  std::vector<Subgroup> out;
  for (const auto& h : oracle_subgroup_sets(table, order)) out.push_back(to_subgroup(table, h));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> oracle_common_complements(std::span<const Subgroup> as, std::uint64_t cap) {
  if (as.empty()) throw PreconditionError("at least one subgroup required");
  for (const auto& a : as) {
    if (!(a.ambient() == as.front().ambient())) throw PreconditionError("subgroups live in different ambient groups");
    if (a.order() != as.front().order()) throw PreconditionError("subgroups have different orders");
  }
  ElementTable table(as.front().ambient(), cap);
  std::vector<ElementSubgroup> sets;
  for (const auto& a : as) sets.push_back(closure(table, a));
  std::vector<Subgroup> out;
  for (const auto& h : oracle_subgroup_sets(table, as.front().index())) {
    bool ok = std::all_of(sets.begin(), sets.end(), [&](const ElementSubgroup& a) { return a.meets_trivially(h); });
    if (ok) out.push_back(to_subgroup(table, h));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace abeltrans
