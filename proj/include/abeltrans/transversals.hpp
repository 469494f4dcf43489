#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abeltrans/errors.hpp"
#include "abeltrans/group.hpp"
#include "abeltrans/subgroup.hpp"

namespace abeltrans {

/// A candidate transversal failed a check. For duplicate cosets, `target`
/// names the subgroup and `first`/`second` the two clashing elements.
class VerificationError : public PreconditionError {
 public:
  enum class Kind { cardinality, unequal_index, outside_universe, duplicate_coset };

  VerificationError(Kind kind, std::string message, std::size_t target = 0, GroupElement first = {},
                    GroupElement second = {})
      : PreconditionError(std::move(message)), kind_(kind), target_(target), first_(std::move(first)),
        second_(std::move(second)) {}

  Kind kind() const { return kind_; }
  std::size_t target() const { return target_; }
  const GroupElement& first() const { return first_; }
  const GroupElement& second() const { return second_; }

 private:
  Kind kind_;
  std::size_t target_;
  GroupElement first_;
  GroupElement second_;
};

struct TransversalCertificate {
  std::vector<GroupElement> elements;
  std::vector<Subgroup> targets;
  AbelianGroup ambient;
  /// coset_labels[j][i] is Subgroup::coset_index of elements[i] for
  /// targets[j]; the entries of each row are pairwise distinct.
  std::vector<std::vector<std::uint64_t>> coset_labels;
};

/// Checks that t is a common transversal of the targets inside `universe`
/// (the ambient group when omitted): equal indices |universe : target|,
/// |t| equal to that index, t inside the universe, no two elements in one
/// coset. Throws VerificationError otherwise.
TransversalCertificate verify_transversal(std::span<const GroupElement> t, std::span<const Subgroup> targets,
                                          const std::optional<Subgroup>& universe = std::nullopt);

/// X & H for a transversal X of A in the ambient group; a transversal of A in H.
std::vector<GroupElement> restrict_transversal(std::span<const GroupElement> x, const Subgroup& a, const Subgroup& h);

/// {s + t} for t running over a transversal of X in G taken from the quotient
/// section. X must be the join of the targets and s a common transversal
/// inside X. Sorted, verified.
std::vector<GroupElement> lift_transversal(std::span<const GroupElement> s, const Subgroup& x,
                                           std::span<const Subgroup> targets);

/// The targets pushed into G/N, with the pullback back to G.
class QuotientProblem {
 public:
  QuotientProblem(std::span<const Subgroup> targets, const Subgroup& n);

  const Quotient& quotient() const { return quotient_; }
  std::span<const Subgroup> targets() const { return targets_; }
  /// Section images of a common transversal of targets(); verified upstairs.
  std::vector<GroupElement> pullback(std::span<const GroupElement> downstairs) const;

 private:
  std::vector<Subgroup> original_;
  Quotient quotient_;
  std::vector<Subgroup> targets_;
};

QuotientProblem reduce_mod_common(std::span<const Subgroup> targets, const Subgroup& n);

/// sigma(i) = t 2^m + (i - t) / 2^r with r = n - m and t = i mod 2^r.
std::int64_t sigma_permutation(unsigned n, unsigned m, std::int64_t i);

/// Common transversal of <a>, <b>, <c> (order 2^n, pairwise trivial
/// intersections, |<a> & <b,c>| = 2^m, 0 < m < n, G = <a,b,c>) of size 2^(n+r).
/// b and c are replaced by generators with 2^r a = 2^r (b + c).
std::vector<GroupElement> construct_Y_2group(const GroupElement& a, const GroupElement& b, const GroupElement& c,
                                             unsigned n, unsigned m, const AbelianGroup& g);

/// Common transversal {i a + (j - i) b - j c} of <a>, <b>, <c> (order p^n, p
/// odd, pairwise trivial intersections, |<a> & <b,c>| = p^m, G = <a,b,c>) of
/// size p^(2n-m). b and c are normalized as for construct_Y_2group.
std::vector<GroupElement> construct_T_odd(const GroupElement& a, const GroupElement& b, const GroupElement& c,
                                          std::int64_t p, unsigned n, unsigned m, const AbelianGroup& g);

/// Union of a_i + b_i + T over paired enumerations of A and B_1, for A meeting
/// X = join(Bs) trivially with |A| = |B_i|. Lifted to G when A + X != G.
std::vector<GroupElement> extend_by_direct_factor(const Subgroup& a, std::span<const Subgroup> bs,
                                                  std::span<const GroupElement> t);

/// Common transversal of pairwise isomorphic homocyclic subgroups whose
/// order has smallest prime >= t: a common complement inside their join,
/// lifted to G.
std::vector<GroupElement> homocyclic_common_transversal(std::span<const Subgroup> as);

struct ThreeCyclicDiagnosis {
  std::int64_t order;
  /// I = A_2 & B_2 & C_2 and the invariant factors of A_2 B_2 C_2 / I.
  Subgroup sylow_intersection;
  std::vector<std::int64_t> quotient_invariants;
  /// Exponents of 2 after dividing by I: |A_2/I| = 2^n, the largest pairwise
  /// intersection 2^k, and |A' & B'C'| = 2^m for the subgroup A' outside it.
  unsigned n = 0;
  unsigned m = 0;
  unsigned k = 0;
  bool exists = true;
  /// One of "odd", "k>0", "m=0", "m=n", "0<m<n".
  std::string case_tag;
};

ThreeCyclicDiagnosis decide_three_cyclic(const Subgroup& a, const Subgroup& b, const Subgroup& c);

/// Common transversal of three cyclic subgroups of equal order. Throws
/// PreconditionError when none exists.
std::vector<GroupElement> construct_three_cyclic(const Subgroup& a, const Subgroup& b, const Subgroup& c);

struct Obstruction {
  /// Representatives of the three involutions of A_2B_2C_2 / I.
  std::vector<GroupElement> involutions;
  Subgroup modulo;
};

std::optional<Obstruction> detect_obstruction(const Subgroup& a, const Subgroup& b, const Subgroup& c);

}  // namespace abeltrans
