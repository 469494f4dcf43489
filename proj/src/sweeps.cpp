#include "abeltrans/sweeps.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "abeltrans/complements.hpp"
#include "abeltrans/families.hpp"
#include "abeltrans/parallel.hpp"
#include "abeltrans/transversals.hpp"

namespace abeltrans {

namespace {

constexpr std::size_t kMaxFailures = 20;

void fail(SweepReport& r, std::string message) {
  ++r.disagreements;
  if (r.failures.size() < kMaxFailures) r.failures.push_back(std::move(message));
}

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

using Mask = std::vector<std::uint64_t>;

Mask mask_and(const Mask& a, const Mask& b) {
  Mask r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

std::int64_t popcount(const Mask& m) {
  std::int64_t n = 0;
  for (auto w : m) n += std::popcount(w);
  return n;
}

SweepReport three_cyclic_group(const AbelianGroup& g, const ThreeCyclicSweepOptions& options) {
  SweepReport r;
  r.groups = 1;
  std::map<std::int64_t, std::vector<Subgroup>> buckets;
  for (auto& h : cyclic_subgroups(g)) buckets[h.order()].push_back(std::move(h));
  OracleOptions oracle;
  oracle.cap = options.cap;
  for (const auto& [order, hs] : buckets) {
    const std::size_t b = hs.size();
    // Oracle verdicts per unordered triple i <= j <= k; -1 unknown.
    std::vector<std::int8_t> known(b * b * b, -1);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        for (std::size_t k = 0; k < b; ++k) {
          ++r.instances;
          std::size_t s[3] = {i, j, k};
          std::sort(s, s + 3);
          const std::size_t key = (s[0] * b + s[1]) * b + s[2];
          const std::string label = to_string(g) + " " + to_string(hs[i]) + " " + to_string(hs[j]) + " " +
                                    to_string(hs[k]);
          try {
            const auto d = decide_three_cyclic(hs[i], hs[j], hs[k]);
            ++r.tally[d.exists ? "exists" : "not-exists"];
            ++r.tally["case " + d.case_tag];
            if (known[key] < 0) {
              std::vector<Subgroup> targets{hs[s[0]], hs[s[1]], hs[s[2]]};
              known[key] = oracle_common_transversal(targets, oracle).has_value() ? 1 : 0;
              ++r.tally["oracle searches"];
              if (options.construct && known[key] == 1) {
                auto t = construct_three_cyclic(targets[0], targets[1], targets[2]);
                verify_transversal(t, targets);
                ++r.tally["constructed"];
              }
            }
            if (d.exists != (known[key] == 1)) fail(r, "verdict differs from oracle: " + label);
          } catch (const Error& e) {
            fail(r, label + ": " + e.what());
          }
        }
      }
    }
  }
  return r;
}

struct ComplementOutcome {
  bool complemented = false;
  std::int64_t enumerated = 0;
  std::string failure;
};

ComplementOutcome check_complements(const ElementTable& table, const std::vector<ElementSubgroup>& sets,
                                    const std::map<std::uint32_t, std::vector<std::size_t>>& by_order,
                                    std::size_t index) {
  ComplementOutcome out;
  const auto& h = sets[index];
  const Subgroup a = to_subgroup(table, h);
  const auto want = static_cast<std::uint32_t>(table.size() / h.order);
  std::int64_t scan = 0;
  if (auto it = by_order.find(want); it != by_order.end()) {
    for (auto c : it->second) scan += h.meets_trivially(sets[c]) ? 1 : 0;
  }
  const std::string label = to_string(table.group()) + " " + to_string(a);
  try {
    const auto w = is_complemented(a);
    out.complemented = w.has_value();
    if (out.complemented != (scan > 0)) {
      out.failure = "is_complemented differs from the subgroup scan: " + label;
      return out;
    }
    if (!w) return out;
    const auto formula = count_complements(a);
    const auto listed = enumerate_complements_serial(a);
    out.enumerated = static_cast<std::int64_t>(listed.size());
    if (formula != out.enumerated || formula != scan) {
      out.failure = label + ": formula " + std::to_string(formula) + ", enumerated " +
                    std::to_string(listed.size()) + ", scan " + std::to_string(scan);
    }
  } catch (const Error& e) {
    out.failure = label + ": " + e.what();
  }
  return out;
}

}  // namespace

void SweepReport::merge(const SweepReport& other) {
  groups += other.groups;
  instances += other.instances;
  disagreements += other.disagreements;
  for (const auto& [k, v] : other.tally) tally[k] += v;
  for (const auto& f : other.failures) {
    if (failures.size() < kMaxFailures) failures.push_back(f);
  }
}

SweepReport sweep_three_cyclic(std::int64_t max_order, const ThreeCyclicSweepOptions& options) {
  std::vector<AbelianGroup> groups;
  for (auto& g : cyclic_factorizations(max_order)) {
    if (!options.two_groups_only || is_power_of_two(g.order())) groups.push_back(std::move(g));
  }
  std::vector<SweepReport> slots(groups.size());
  parallel_for(static_cast<std::int64_t>(groups.size()),
               [&](std::int64_t i) { slots[i] = three_cyclic_group(groups[i], options); });
  SweepReport out;
  out.family = options.two_groups_only ? "three-cyclic-2-groups" : "three-cyclic";
  out.max_order = max_order;
  for (const auto& s : slots) out.merge(s);
  return out;
}

SweepReport sweep_complements(std::int64_t max_order, const ComplementSweepOptions& options) {
  SweepReport out;
  out.family = "complements";
  out.max_order = max_order;
  for (const auto& g : isomorphism_classes(max_order)) {
    ++out.groups;
    ElementTable table(g, options.cap);
    const auto sets = oracle_subgroup_sets(table);
    std::map<std::uint32_t, std::vector<std::size_t>> by_order;
    for (std::size_t i = 0; i < sets.size(); ++i) by_order[sets[i].order].push_back(i);

    std::vector<std::size_t> chosen;
    if (sets.size() <= options.subgroup_limit) {
      for (std::size_t i = 0; i < sets.size(); ++i) chosen.push_back(i);
    } else {
      ++out.tally["sampled groups"];
      std::map<std::vector<std::int64_t>, std::vector<std::size_t>> types;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        const Subgroup h = to_subgroup(table, sets[i]);
        types[{h.invariant_factors().begin(), h.invariant_factors().end()}].push_back(i);
      }
      for (const auto& [type, members] : types) {
        const std::size_t step = std::max<std::size_t>(1, members.size() / options.sample_per_type);
        for (std::size_t j = 0; j < members.size(); j += step) chosen.push_back(members[j]);
        // The first complemented member, so every complemented type is covered.
        for (auto m : members) {
          if (is_complemented(to_subgroup(table, sets[m]))) {
            chosen.push_back(m);
            break;
          }
        }
      }
      std::sort(chosen.begin(), chosen.end());
      chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
      out.tally["subgroups skipped"] += static_cast<std::int64_t>(sets.size() - chosen.size());
    }

    std::vector<ComplementOutcome> slots(chosen.size());
    parallel_for(static_cast<std::int64_t>(chosen.size()),
                 [&](std::int64_t i) { slots[i] = check_complements(table, sets, by_order, chosen[i]); });
    for (std::size_t i = 0; i < slots.size(); ++i) {
      ++out.instances;
      if (slots[i].complemented) {
        ++out.tally["complemented"];
        out.tally["complements enumerated"] += slots[i].enumerated;
      }
      if (!slots[i].failure.empty()) fail(out, slots[i].failure);
    }
  }
  return out;
}

SweepReport sweep_maximal_cyclic(std::int64_t p, unsigned max_exponent, const MaximalCyclicSweepOptions& options) {
  SweepReport out;
  out.family = "maximal-cyclic-" + std::to_string(p);
  out.max_order = checked_pow(p, max_exponent);
  std::mt19937_64 rng(options.seed);
  for (const auto& g : p_groups(p, max_exponent)) {
    ++out.groups;
    ElementTable table(g, static_cast<std::uint64_t>(out.max_order));
    const auto ms = cyclic_subgroups(g, g.exponent());
    const std::int64_t s = g.order() / g.exponent();
    const auto candidates = oracle_subgroup_sets(table, s);
    std::vector<Mask> masks;
    std::map<Subgroup, int> omega_ids;
    std::vector<int> omega_of;
    for (const auto& a : ms) {
      const auto bits = closure(table, a);
      Mask m((candidates.size() + 63) / 64, 0);
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (bits.meets_trivially(candidates[c])) m[c >> 6] |= std::uint64_t{1} << (c & 63);
      }
      masks.push_back(std::move(m));
      omega_of.push_back(omega_ids.emplace(omega(a, static_cast<std::uint64_t>(p)), omega_ids.size()).first->second);
    }
    const std::string gname = to_string(g);
    const auto phi = static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(s)));

    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (popcount(masks[i]) != s) fail(out, gname + " " + to_string(ms[i]) + ": complement count is not the index");
      for (std::size_t j = 0; j < ms.size(); ++j) {
        ++out.instances;
        ++out.tally["pairs"];
        const auto scan = popcount(mask_and(masks[i], masks[j]));
        const auto formula = count_common_two_cyclic_maximal(ms[i], ms[j]);
        if (formula != scan) {
          fail(out, gname + " " + to_string(ms[i]) + " " + to_string(ms[j]) + ": formula " + std::to_string(formula) +
                        ", scan " + std::to_string(scan));
        }
        if (scan < phi) fail(out, gname + ": proportion below phi(s)/s");
        if (scan == phi) ++out.tally["proportion sharp"];
      }
    }

    auto check_family = [&](const std::vector<std::size_t>& family) {
      ++out.instances;
      Mask m = masks[family.front()];
      std::vector<int> ids;
      for (auto f : family) {
        m = mask_and(m, masks[f]);
        ids.push_back(omega_of[f]);
      }
      std::sort(ids.begin(), ids.end());
      const auto w = std::unique(ids.begin(), ids.end()) - ids.begin();
      const auto bound = lower_bound_common_complements(s, p, w);
      if (!bound.at_most(popcount(m))) {
        fail(out, gname + ": family of " + std::to_string(family.size()) + " below the lower bound");
      }
    };
    const std::size_t k = std::min(options.exhaustive_family_size, ms.size());
    std::vector<std::size_t> family;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (!family.empty()) {
        check_family(family);
        ++out.tally["families exhaustive"];
      }
      if (family.size() == k) return;
      for (std::size_t i = from; i < ms.size(); ++i) {
        family.push_back(i);
        rec(i + 1);
        family.pop_back();
      }
    };
    rec(0);
    if (ms.size() > k) {
      std::vector<std::size_t> pool(ms.size());
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      for (std::size_t trial = 0; trial < options.random_families; ++trial) {
        const std::size_t t = k + 1 + rng() % (ms.size() - k);
        for (std::size_t i = 0; i < t; ++i) std::swap(pool[i], pool[i + rng() % (pool.size() - i)]);
        check_family({pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(t)});
        ++out.tally["families sampled"];
      }
    }
  }
  return out;
}

}  // namespace abeltrans
