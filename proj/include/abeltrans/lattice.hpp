#pragma once

// Integer lattice kernels behind subgroup arithmetic. A subgroup of
// Z/n_1 x ... x Z/n_k is a full-rank lattice L with diag(n) Z^k <= L <= Z^k.
//
// HNF convention: basis vectors are the columns of a lower-triangular matrix
// with positive diagonal; in row i every entry left of the diagonal lies in
// [0, H(i,i)). Entries below the diagonal are likewise reduced by the later
// rows, so the basis is the unique canonical representative of L.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "abeltrans/integer.hpp"

namespace abeltrans::lattice {

using IntVector = std::vector<i128>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  i128& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  i128 operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<i128> data_;
};

/// Canonical HNF of the lattice spanned by `generators` together with
/// diag(moduli). Every generator must have moduli.size() entries.
IntMatrix modular_hnf(std::span<const IntVector> generators, std::span<const std::int64_t> moduli);

/// Canonical coset representative of x modulo the lattice with basis `hnf`:
/// the unique y = x (mod L) with 0 <= y_i < hnf(i,i).
IntVector reduce_mod_hnf(const IntMatrix& hnf, std::span<const std::int64_t> moduli, IntVector x);

/// Solves hnf * y = x for x in the lattice (throws PreconditionError if not).
IntVector solve_lower(const IntMatrix& hnf, const IntVector& x);

struct SmithForm {
  std::vector<i128> diagonal;  // d_0 | d_1 | ... (zeros last if singular)
  IntMatrix left;              // P with P * A * Q = D
  IntMatrix left_inverse;      // U = P^{-1}
};

SmithForm smith_form(IntMatrix a);

/// Generators of { x in span(start) : row_r . x = 0 (mod row_moduli[r]) for all r },
/// where span(start) contains diag(moduli) and every row annihilates diag(moduli).
/// The result is returned in canonical HNF.
IntMatrix congruence_kernel(const IntMatrix& start_hnf, std::span<const IntVector> rows,
                            std::span<const i128> row_moduli, std::span<const std::int64_t> moduli);

}  // namespace abeltrans::lattice
