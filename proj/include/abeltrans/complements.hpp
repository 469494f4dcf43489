#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abeltrans/group.hpp"
#include "abeltrans/homomorphism.hpp"
#include "abeltrans/subgroup.hpp"

namespace abeltrans {

/// Budget for the number of homomorphisms walked by complement enumeration.
inline constexpr std::uint64_t kDefaultHomCap = std::uint64_t{1} << 20;

struct ComplementCertificate {
  Subgroup subject;
  Subgroup complement;
  AbelianGroup ambient;

  /// Join is the ambient group, intersection is trivial, orders multiply to |G|.
  bool check() const;
};

/// A subset I of primary factors such that projecting A onto them is an
/// isomorphism. Factor indices refer to PrimaryDecomposition(G).primary().
struct ProjectionWitness {
  std::vector<std::size_t> index_set;
  Homomorphism iso;
};

struct ComplementWitness {
  ProjectionWitness projection;
  ComplementCertificate certificate;
};

/// Searches primary-factor subsets, prime by prime, matching A's elementary
/// divisors. Absence is certified by exhausting the search.
std::optional<ComplementWitness> is_complemented(const Subgroup& a);

/// All complements of A, sorted by basis. Throws PreconditionError if A has
/// no complement and CapExceeded if |Hom(G/A, A)| > cap.
std::vector<Subgroup> enumerate_complements(const Subgroup& a, std::uint64_t cap = kDefaultHomCap);
/// Single-threaded reference for enumerate_complements; same output.
std::vector<Subgroup> enumerate_complements_serial(const Subgroup& a, std::uint64_t cap = kDefaultHomCap);

/// prod_i |Gamma_{n_i}(G/A)| over the invariant factors n_i of A.
std::int64_t count_complements(const Subgroup& a);

/// Number of common complements of A_1, ..., A_t when G = A_1 x ... x A_t x B.
/// Zero when the A_i are not pairwise isomorphic.
std::int64_t count_common_complements_direct(std::span<const Subgroup> as, const Subgroup& b,
                                             std::uint64_t cap = kDefaultHomCap);

/// Builds the common complement attached to every admissible map from
/// A_2 x ... x A_t x B to A_1 and checks each one. Sorted by basis.
/// Throws InternalError if a constructed subgroup fails the check.
std::vector<Subgroup> enumerate_common_complements_direct(std::span<const Subgroup> as, const Subgroup& b,
                                                          std::uint64_t cap = kDefaultHomCap);

/// Common complements of two cyclic subgroups of maximal order in a p-group:
/// |G:A| if A and B meet nontrivially, phi(|G:A|) otherwise.
std::int64_t count_common_two_cyclic_maximal(const Subgroup& a, const Subgroup& b);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool operator==(const Rational&) const = default;
  /// value <= n, exactly.
  bool at_most(std::int64_t n) const;
};

/// s (1 - (omega - 1) / p), reduced.
Rational lower_bound_common_complements(std::int64_t s, std::int64_t p, std::int64_t omega);

/// Number of distinct subgroups Omega(A_i) among p-subgroups.
std::size_t distinct_omegas(std::span<const Subgroup> as, std::uint64_t p);

/// A common complement of pairwise isomorphic complemented subgroups. For
/// every prime p dividing |A_1| either t <= p, or the Sylow p-parts are cyclic
/// with at most p distinct Omega subgroups. Throws PreconditionError
/// otherwise; never falls back to search.
Subgroup common_complement(std::span<const Subgroup> as);

}  // namespace abeltrans
