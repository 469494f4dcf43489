#pragma once

#include <cstdint>
#include <vector>

#include "abeltrans/group.hpp"
#include "abeltrans/subgroup.hpp"

namespace abeltrans {

/// Every way of writing a group of order <= max_order as a product of cyclic
/// factors, factor lists non-increasing (so C6 and C3xC2 both appear). Starts
/// with the trivial group.
std::vector<AbelianGroup> cyclic_factorizations(std::int64_t max_order);

/// One group per isomorphism class with 1 < |G| <= max_order, in invariant
/// factor form, ordered by order and then factor list.
std::vector<AbelianGroup> isomorphism_classes(std::int64_t max_order);

/// Abelian p-groups of order p^1 .. p^max_exponent, one per partition.
std::vector<AbelianGroup> p_groups(std::int64_t p, unsigned max_exponent);

/// Distinct cyclic subgroups (of the given order, or all when order == 0),
/// sorted by basis.
std::vector<Subgroup> cyclic_subgroups(const AbelianGroup& g, std::int64_t order = 0);

}  // namespace abeltrans
