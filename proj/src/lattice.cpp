#include "abeltrans/lattice.hpp"

#include <algorithm>
#include <utility>

#include "abeltrans/errors.hpp"

namespace abeltrans::lattice {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

namespace {

// a := s*a + t*b ; b := u*a + v*b (old a), entries from row `from` on reduced
// modulo the moduli.
void combine(IntVector& a, IntVector& b, i128 s, i128 t, i128 u, i128 v, std::size_t from,
             std::span<const std::int64_t> moduli) {
  for (std::size_t r = from; r < a.size(); ++r) {
    i128 x = checked_add128(checked_mul128(s, a[r]), checked_mul128(t, b[r]));
    i128 y = checked_add128(checked_mul128(u, a[r]), checked_mul128(v, b[r]));
    a[r] = floor_mod(x, moduli[r]);
    b[r] = floor_mod(y, moduli[r]);
  }
}

}  // namespace

IntMatrix modular_hnf(std::span<const IntVector> generators, std::span<const std::int64_t> moduli) {
  const std::size_t k = moduli.size();
  std::vector<IntVector> work;
  work.reserve(generators.size() + k);
  for (const auto& g : generators) {
    if (g.size() != k) throw PreconditionError("generator length does not match group rank");
    IntVector v(k);
    for (std::size_t r = 0; r < k; ++r) v[r] = floor_mod(g[r], moduli[r]);
    work.push_back(std::move(v));
  }

  IntMatrix h(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    IntVector unit(k, 0);
    unit[i] = moduli[i];
    work.push_back(std::move(unit));

    // Row i is reduced mod n_i while n_i e_i is still an explicit generator.
    for (std::size_t w = 0; w + 1 < work.size(); ++w) work[w][i] = floor_mod(work[w][i], moduli[i]);

    std::ptrdiff_t pivot = -1;
    for (std::size_t w = 0; w < work.size(); ++w) {
      if (work[w][i] == 0) continue;
      if (pivot < 0) {
        pivot = static_cast<std::ptrdiff_t>(w);
        continue;
      }
      IntVector& p = work[static_cast<std::size_t>(pivot)];
      IntVector& q = work[w];
      auto e = xgcd(p[i], q[i]);
      i128 a = p[i] / e.g;
      i128 b = q[i] / e.g;
      // [p; q] <- [s t; -b a] [p; q]; determinant s*a + t*b = 1.
      for (std::size_t r = i; r < k; ++r) {
        i128 x = checked_add128(checked_mul128(e.s, p[r]), checked_mul128(e.t, q[r]));
        i128 y = checked_add128(checked_mul128(-b, p[r]), checked_mul128(a, q[r]));
        if (r == i) {
          p[r] = x;
          q[r] = y;
        } else {
          p[r] = floor_mod(x, moduli[r]);
          q[r] = floor_mod(y, moduli[r]);
        }
      }
    }
    // n_i e_i guarantees a pivot.
    IntVector piv = std::move(work[static_cast<std::size_t>(pivot)]);
    work.erase(work.begin() + pivot);
    if (piv[i] < 0) {
      for (std::size_t r = i; r < k; ++r) piv[r] = r == i ? -piv[r] : floor_mod(-piv[r], moduli[r]);
    }
    for (std::size_t r = 0; r < k; ++r) h(r, i) = piv[r];
    std::erase_if(work, [&](const IntVector& v) {
      for (std::size_t r = i + 1; r < k; ++r) {
        if (v[r] != 0) return false;
      }
      return true;
    });
  }

  // Reduce entries left of the diagonal, row by row.
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      i128 q = floor_div(h(i, j), h(i, i));
      if (q == 0) continue;
      for (std::size_t r = i; r < k; ++r) {
        i128 x = checked_add128(h(r, j), checked_mul128(-q, h(r, i)));
        h(r, j) = r == i ? x : floor_mod(x, moduli[r]);
      }
    }
  }
  return h;
}

IntVector reduce_mod_hnf(const IntMatrix& hnf, std::span<const std::int64_t> moduli, IntVector x) {
  const std::size_t k = moduli.size();
  for (std::size_t r = 0; r < k; ++r) x[r] = floor_mod(x[r], moduli[r]);
  for (std::size_t i = 0; i < k; ++i) {
    i128 q = floor_div(x[i], hnf(i, i));
    if (q == 0) continue;
    x[i] -= q * hnf(i, i);
    for (std::size_t r = i + 1; r < k; ++r) {
      x[r] = floor_mod(checked_add128(x[r], checked_mul128(-q, hnf(r, i))), moduli[r]);
    }
  }
  return x;
}

IntVector solve_lower(const IntMatrix& hnf, const IntVector& x) {
  const std::size_t k = hnf.rows();
  IntVector y(k, 0);
  IntVector rest = x;
  for (std::size_t i = 0; i < k; ++i) {
    if (rest[i] % hnf(i, i) != 0) throw PreconditionError("vector is not in the lattice");
    y[i] = rest[i] / hnf(i, i);
    if (y[i] == 0) continue;
    for (std::size_t r = i; r < k; ++r) rest[r] = checked_add128(rest[r], checked_mul128(-y[i], hnf(r, i)));
  }
  return y;
}

SmithForm smith_form(IntMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntMatrix p = IntMatrix::identity(rows);
  IntMatrix u = IntMatrix::identity(rows);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < rows; ++c) std::swap(p(i, c), p(j, c));
    for (std::size_t r = 0; r < rows; ++r) std::swap(u(r, i), u(r, j));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
  };
  // rows (t, i) <- [s t'; -b a'] (rows t, i); U columns get the inverse.
  auto combine_rows = [&](std::size_t t, std::size_t i) {
    if (a(i, t) % a(t, t) == 0) {
      i128 q = a(i, t) / a(t, t);
      for (std::size_t c = 0; c < cols; ++c) a(i, c) = checked_add128(a(i, c), checked_mul128(-q, a(t, c)));
      for (std::size_t c = 0; c < rows; ++c) p(i, c) = checked_add128(p(i, c), checked_mul128(-q, p(t, c)));
      for (std::size_t r = 0; r < rows; ++r) u(r, t) = checked_add128(u(r, t), checked_mul128(q, u(r, i)));
      return;
    }
    auto e = xgcd(a(t, t), a(i, t));
    i128 ca = a(t, t) / e.g;
    i128 cb = a(i, t) / e.g;
    for (std::size_t c = 0; c < cols; ++c) {
      i128 x = checked_add128(checked_mul128(e.s, a(t, c)), checked_mul128(e.t, a(i, c)));
      i128 y = checked_add128(checked_mul128(-cb, a(t, c)), checked_mul128(ca, a(i, c)));
      a(t, c) = x;
      a(i, c) = y;
    }
    for (std::size_t c = 0; c < rows; ++c) {
      i128 x = checked_add128(checked_mul128(e.s, p(t, c)), checked_mul128(e.t, p(i, c)));
      i128 y = checked_add128(checked_mul128(-cb, p(t, c)), checked_mul128(ca, p(i, c)));
      p(t, c) = x;
      p(i, c) = y;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      i128 x = checked_add128(checked_mul128(ca, u(r, t)), checked_mul128(cb, u(r, i)));
      i128 y = checked_add128(checked_mul128(-e.t, u(r, t)), checked_mul128(e.s, u(r, i)));
      u(r, t) = x;
      u(r, i) = y;
    }
  };
  auto combine_cols = [&](std::size_t t, std::size_t j) {
    if (a(t, j) % a(t, t) == 0) {
      i128 q = a(t, j) / a(t, t);
      for (std::size_t r = 0; r < rows; ++r) a(r, j) = checked_add128(a(r, j), checked_mul128(-q, a(r, t)));
      return;
    }
    auto e = xgcd(a(t, t), a(t, j));
    i128 ca = a(t, t) / e.g;
    i128 cb = a(t, j) / e.g;
    for (std::size_t r = 0; r < rows; ++r) {
      i128 x = checked_add128(checked_mul128(e.s, a(r, t)), checked_mul128(e.t, a(r, j)));
      i128 y = checked_add128(checked_mul128(-cb, a(r, t)), checked_mul128(ca, a(r, j)));
      a(r, t) = x;
      a(r, j) = y;
    }
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      std::size_t bi = rows, bj = cols;
      i128 best = 0;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          i128 v = a(i, j) < 0 ? -a(i, j) : a(i, j);
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            bi = i;
            bj = j;
          }
        }
      }
      if (best == 0) break;
      if (a(t, t) == best || a(t, t) == -best) bi = t, bj = t;
      swap_rows(t, bi);
      swap_cols(t, bj);

      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) != 0) combine_rows(t, i);
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) != 0) combine_cols(t, j);
      }
      bool column_clear = true;
      for (std::size_t i = t + 1; i < rows; ++i) column_clear = column_clear && a(i, t) == 0;
      if (!column_clear) continue;

      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      // row t += row bad; U column bad -= U column t.
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = checked_add128(a(t, c), a(bad, c));
      for (std::size_t c = 0; c < rows; ++c) p(t, c) = checked_add128(p(t, c), p(bad, c));
      for (std::size_t r = 0; r < rows; ++r) u(r, bad) = checked_add128(u(r, bad), -u(r, t));
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) p(t, c) = -p(t, c);
      for (std::size_t r = 0; r < rows; ++r) u(r, t) = -u(r, t);
    }
  }

  SmithForm out;
  out.diagonal.resize(diag);
  for (std::size_t t = 0; t < diag; ++t) out.diagonal[t] = a(t, t);
  out.left = std::move(p);
  out.left_inverse = std::move(u);
  return out;
}

IntMatrix congruence_kernel(const IntMatrix& start_hnf, std::span<const IntVector> rows,
                            std::span<const i128> row_moduli, std::span<const std::int64_t> moduli) {
  const std::size_t k = moduli.size();
  std::vector<IntVector> gens;
  for (std::size_t c = 0; c < start_hnf.cols(); ++c) gens.push_back(start_hnf.column(c));
  // Explicit n_i e_i keep the entrywise reductions below span-preserving; they
  // have value zero under every row and are never modified.
  for (std::size_t i = 0; i < k; ++i) {
    IntVector unit(k, 0);
    unit[i] = moduli[i];
    gens.push_back(std::move(unit));
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const i128 d = row_moduli[r];
    if (d == 1) continue;
    auto value = [&](const IntVector& g) {
      i128 acc = 0;
      for (std::size_t i = 0; i < k; ++i) {
        acc = floor_mod(checked_add128(acc, checked_mul128(floor_mod(rows[r][i], d), g[i])), d);
      }
      return acc;
    };
    std::vector<i128> vals(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) vals[j] = value(gens[j]);

    std::ptrdiff_t pivot = -1;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (vals[j] == 0) continue;
      if (pivot < 0) {
        pivot = static_cast<std::ptrdiff_t>(j);
        continue;
      }
      auto pj = static_cast<std::size_t>(pivot);
      auto e = xgcd(vals[pj], vals[j]);
      i128 ca = vals[pj] / e.g;
      i128 cb = vals[j] / e.g;
      combine(gens[pj], gens[j], e.s, e.t, -cb, ca, 0, moduli);
      vals[pj] = e.g;
      vals[j] = 0;
    }
    if (pivot >= 0) {
      auto pj = static_cast<std::size_t>(pivot);
      i128 scale = d / gcd128(vals[pj], d);
      for (std::size_t i = 0; i < k; ++i) gens[pj][i] = floor_mod(checked_mul128(scale, gens[pj][i]), moduli[i]);
    }
  }
  return modular_hnf(gens, moduli);
}

}  // namespace abeltrans::lattice
