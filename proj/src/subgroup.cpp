#include "abeltrans/subgroup.hpp"

#include <algorithm>
#include <numeric>

#include "abeltrans/errors.hpp"

namespace abeltrans {

using lattice::IntMatrix;
using lattice::IntVector;

namespace {

IntVector to_vector(const GroupElement& x) { return IntVector(x.residues.begin(), x.residues.end()); }

std::vector<IntVector> to_vectors(std::span<const GroupElement> xs) {
  std::vector<IntVector> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(to_vector(x));
  return out;
}

void require_same_ambient(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) {
    throw PreconditionError("subgroups live in different ambient groups: " + to_string(a.ambient()) + " vs " +
                            to_string(b.ambient()));
  }
}

// Rows of the projection G -> G/N with their moduli (invariant factors > 1).
struct ProjectionData {
  std::vector<IntVector> rows;
  std::vector<i128> moduli;
  std::vector<IntVector> section_columns;
};

ProjectionData projection_data(const AbelianGroup& g, const IntMatrix& kernel_hnf) {
  auto snf = lattice::smith_form(kernel_hnf);
  ProjectionData out;
  const auto n = g.orders();
  for (std::size_t j = 0; j < snf.diagonal.size(); ++j) {
    const i128 d = snf.diagonal[j];
    if (d == 1) continue;
    IntVector row = snf.left.row(j);
    for (auto& v : row) v = floor_mod(v, d);
    out.rows.push_back(std::move(row));
    out.moduli.push_back(d);
    IntVector col = snf.left_inverse.column(j);
    for (std::size_t r = 0; r < col.size(); ++r) col[r] = floor_mod(col[r], n[r]);
    out.section_columns.push_back(std::move(col));
  }
  return out;
}

}  // namespace

Subgroup::Subgroup(AbelianGroup ambient, IntMatrix basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  const auto n = ambient_.orders();
  const std::size_t k = n.size();
  i128 det = 1;
  for (std::size_t i = 0; i < k; ++i) det *= basis_(i, i);
  order_ = narrow(static_cast<i128>(ambient_.order()) / det);

  // H ~ L / diag(n) Z^k ~ Z^k / M Z^k with M = basis^{-1} diag(n).
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    IntVector target(k, 0);
    target[i] = n[i];
    auto col = lattice::solve_lower(basis_, target);
    for (std::size_t r = 0; r < k; ++r) m(r, i) = col[r];
  }
  auto snf = lattice::smith_form(std::move(m));
  for (std::size_t j = 0; j < snf.diagonal.size(); ++j) {
    const i128 d = snf.diagonal[j];
    if (d == 1) continue;
    invariants_.push_back(narrow(d));
    IntVector u = snf.left_inverse.column(j);
    IntVector gen(k, 0);
    for (std::size_t r = 0; r < k; ++r) {
      i128 acc = 0;
      for (std::size_t c = 0; c <= r; ++c) {
        acc = floor_mod(checked_add128(acc, checked_mul128(basis_(r, c), u[c])), n[r]);
      }
      gen[r] = acc;
    }
    smith_generators_.push_back(ambient_.element_from(gen));
    IntVector row = snf.left.row(j);
    for (auto& v : row) v = floor_mod(v, d);
    coordinate_rows_.push_back(std::move(row));
  }
}

Subgroup Subgroup::generated(const AbelianGroup& ambient, std::span<const GroupElement> generators) {
  for (const auto& g : generators) ambient.require(g);
  auto vecs = to_vectors(generators);
  return Subgroup(ambient, lattice::modular_hnf(vecs, ambient.orders()));
}

Subgroup Subgroup::trivial(const AbelianGroup& ambient) { return generated(ambient, std::span<const GroupElement>{}); }

Subgroup Subgroup::whole(const AbelianGroup& ambient) {
  std::vector<GroupElement> units;
  for (std::size_t i = 0; i < ambient.rank(); ++i) units.push_back(ambient.unit(i));
  return generated(ambient, units);
}

std::int64_t Subgroup::exponent() const { return invariants_.empty() ? 1 : invariants_.back(); }

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> out;
  for (std::size_t c = 0; c < basis_.cols(); ++c) {
    auto g = ambient_.element_from(basis_.column(c));
    if (g != ambient_.zero()) out.push_back(std::move(g));
  }
  return out;
}

bool Subgroup::contains(const GroupElement& x) const {
  if (!ambient_.contains(x)) return false;
  auto r = lattice::reduce_mod_hnf(basis_, ambient_.orders(), to_vector(x));
  return std::all_of(r.begin(), r.end(), [](i128 v) { return v == 0; });
}

bool Subgroup::contains(const Subgroup& other) const {
  if (!(ambient_ == other.ambient_)) return false;
  for (const auto& g : other.generators()) {
    if (!contains(g)) return false;
  }
  return true;
}

GroupElement Subgroup::coset_representative(const GroupElement& x) const {
  ambient_.require(x);
  return ambient_.element_from(lattice::reduce_mod_hnf(basis_, ambient_.orders(), to_vector(x)));
}

std::uint64_t Subgroup::coset_index(const GroupElement& x) const {
  ambient_.require(x);
  auto r = lattice::reduce_mod_hnf(basis_, ambient_.orders(), to_vector(x));
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    idx = idx * static_cast<std::uint64_t>(basis_(i, i)) + static_cast<std::uint64_t>(r[i]);
  }
  return idx;
}

std::vector<std::int64_t> Subgroup::smith_coordinates(const GroupElement& x) const {
  if (!contains(x)) throw PreconditionError("element " + to_string(x) + " is not in subgroup " + to_string(*this));
  auto y = lattice::solve_lower(basis_, to_vector(x));
  std::vector<std::int64_t> c(invariants_.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    const i128 d = invariants_[j];
    i128 acc = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      acc = floor_mod(checked_add128(acc, checked_mul128(coordinate_rows_[j][i], floor_mod(y[i], d))), d);
    }
    c[j] = static_cast<std::int64_t>(acc);
  }
  return c;
}

GroupElement Subgroup::from_smith_coordinates(std::span<const std::int64_t> coords) const {
  if (coords.size() != invariants_.size()) throw PreconditionError("wrong number of Smith coordinates");
  GroupElement x = ambient_.zero();
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] == 0) continue;
    x = ambient_.add(x, ambient_.scale(coords[j], smith_generators_[j]));
  }
  return x;
}

bool Subgroup::operator==(const Subgroup& other) const {
  return ambient_ == other.ambient_ && basis_ == other.basis_;
}

std::strong_ordering Subgroup::operator<=>(const Subgroup& other) const {
  auto ao = ambient_.orders();
  auto bo = other.ambient_.orders();
  if (auto c = std::lexicographical_compare_three_way(ao.begin(), ao.end(), bo.begin(), bo.end()); c != 0) return c;
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    for (std::size_t c = 0; c < basis_.cols(); ++c) {
      if (basis_(r, c) != other.basis_(r, c)) {
        return basis_(r, c) < other.basis_(r, c) ? std::strong_ordering::less : std::strong_ordering::greater;
      }
    }
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Subgroup& h) {
  std::string s = "<";
  auto gens = h.smith_generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ";";
    s += to_string(gens[i]);
  }
  return s + ">";
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  auto gens = a.generators();
  auto more = b.generators();
  gens.insert(gens.end(), more.begin(), more.end());
  return Subgroup::generated(a.ambient(), gens);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  if (a.is_whole()) return b;
  if (b.is_whole()) return a;
  auto proj = projection_data(a.ambient(), a.basis());
  auto kernel = lattice::congruence_kernel(b.basis(), proj.rows, proj.moduli, a.ambient().orders());
  std::vector<GroupElement> gens;
  for (std::size_t c = 0; c < kernel.cols(); ++c) gens.push_back(a.ambient().element_from(kernel.column(c)));
  return Subgroup::generated(a.ambient(), gens);
}

bool is_complement_pair(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) return false;
  if (static_cast<i128>(a.order()) * b.order() != a.ambient().order()) return false;
  return join(a, b).is_whole() && intersect(a, b).is_trivial();
}

Quotient::Quotient(const AbelianGroup& ambient, const Subgroup& kernel) : ambient_(ambient), kernel_(kernel) {
  if (!(kernel.ambient() == ambient)) throw PreconditionError("kernel is not a subgroup of the given group");
  auto data = projection_data(ambient, kernel.basis());
  std::vector<std::int64_t> orders;
  for (auto d : data.moduli) orders.push_back(narrow(d));
  group_ = AbelianGroup(orders);
  projection_rows_ = std::move(data.rows);
  for (auto& col : data.section_columns) section_images_.push_back(ambient.element_from(col));
}

GroupElement Quotient::project(const GroupElement& x) const {
  ambient_.require(x);
  std::vector<std::int64_t> q(projection_rows_.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    const i128 d = group_.orders()[j];
    i128 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc = floor_mod(checked_add128(acc, checked_mul128(projection_rows_[j][i], x[i])), d);
    }
    q[j] = static_cast<std::int64_t>(acc);
  }
  return GroupElement(std::move(q));
}

GroupElement Quotient::section(const GroupElement& q) const {
  group_.require(q);
  GroupElement x = ambient_.zero();
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q[j] != 0) x = ambient_.add(x, ambient_.scale(q[j], section_images_[j]));
  }
  return x;
}

Subgroup Quotient::project(const Subgroup& h) const {
  std::vector<GroupElement> gens;
  for (const auto& g : h.generators()) gens.push_back(project(g));
  return Subgroup::generated(group_, gens);
}

Subgroup Quotient::preimage(const Subgroup& q) const {
  if (!(q.ambient() == group_)) throw PreconditionError("subgroup is not in the quotient group");
  auto gens = kernel_.generators();
  for (const auto& g : q.generators()) gens.push_back(section(g));
  return Subgroup::generated(ambient_, gens);
}

Quotient quotient_group(const AbelianGroup& ambient, const Subgroup& kernel) { return Quotient(ambient, kernel); }

Subgroup sylow_part(const Subgroup& h, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  const auto order = static_cast<std::uint64_t>(h.order());
  const auto cofactor = static_cast<std::int64_t>(order / prime_part(order, p));
  std::vector<GroupElement> gens;
  for (const auto& g : h.generators()) gens.push_back(h.ambient().scale(cofactor, g));
  return Subgroup::generated(h.ambient(), gens);
}

Subgroup gamma_subgroup(const AbelianGroup& g, std::int64_t n) {
  if (n <= 0) throw PreconditionError("Gamma_n needs n >= 1");
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const std::int64_t m = g.orders()[i];
    gens.push_back(g.scale(m / std::gcd(m, n), g.unit(i)));
  }
  return Subgroup::generated(g, gens);
}

Subgroup gamma_subgroup(const Subgroup& h, std::int64_t n) {
  if (n <= 0) throw PreconditionError("Gamma_n needs n >= 1");
  std::vector<GroupElement> gens;
  auto d = h.invariant_factors();
  auto s = h.smith_generators();
  for (std::size_t i = 0; i < d.size(); ++i) gens.push_back(h.ambient().scale(d[i] / std::gcd(d[i], n), s[i]));
  return Subgroup::generated(h.ambient(), gens);
}

Subgroup omega(const Subgroup& h, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  return gamma_subgroup(h, static_cast<std::int64_t>(p));
}

Subgroup to_primary(const PrimaryDecomposition& pd, const Subgroup& h) {
  std::vector<GroupElement> gens;
  for (const auto& g : h.generators()) gens.push_back(pd.to_primary(g));
  return Subgroup::generated(pd.primary(), gens);
}

Subgroup from_primary(const PrimaryDecomposition& pd, const Subgroup& h) {
  std::vector<GroupElement> gens;
  for (const auto& g : h.generators()) gens.push_back(pd.from_primary(g));
  return Subgroup::generated(pd.source(), gens);
}

std::vector<GroupElement> elements_of(const Subgroup& h, std::uint64_t cap) {
  if (static_cast<std::uint64_t>(h.order()) > cap) {
    throw CapExceeded("subgroup of order " + std::to_string(h.order()) + " exceeds enumeration cap " + std::to_string(cap));
  }
  const auto& g = h.ambient();
  auto d = h.invariant_factors();
  auto gens = h.smith_generators();
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(h.order()));
  std::vector<std::int64_t> c(d.size(), 0);
  GroupElement x = g.zero();
  for (;;) {
    out.push_back(x);
    std::size_t i = d.size();
    bool done = true;
    while (i > 0) {
      --i;
      x = g.add(x, gens[i]);
      if (++c[i] < d[i]) {
        done = false;
        break;
      }
      c[i] = 0;  // x wrapped back since d_i * gen_i = 0
    }
    if (done) break;
  }
  return out;
}

std::vector<GroupElement> elements_of(const AbelianGroup& g, std::uint64_t cap) {
  if (static_cast<std::uint64_t>(g.order()) > cap) {
    throw CapExceeded("group of order " + std::to_string(g.order()) + " exceeds enumeration cap " + std::to_string(cap));
  }
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(g.order()));
  g.for_each_element([&](const GroupElement& x) { out.push_back(x); });
  return out;
}

Presentation::Presentation(Subgroup image)
    : image_(std::move(image)),
      group_(std::vector<std::int64_t>(image_.invariant_factors().begin(), image_.invariant_factors().end())) {}

GroupElement Presentation::to_ambient(const GroupElement& local) const {
  group_.require(local);
  return image_.from_smith_coordinates(local.residues);
}

GroupElement Presentation::to_local(const GroupElement& x) const {
  return GroupElement(image_.smith_coordinates(x));
}

Subgroup Presentation::to_ambient(const Subgroup& local) const {
  if (!(local.ambient() == group_)) throw PreconditionError("subgroup is not in the presented group");
  std::vector<GroupElement> gens;
  for (const auto& g : local.generators()) gens.push_back(to_ambient(g));
  return Subgroup::generated(image_.ambient(), gens);
}

Subgroup Presentation::to_local(const Subgroup& s) const {
  if (!image_.contains(s)) throw PreconditionError("subgroup " + to_string(s) + " is not contained in " + to_string(image_));
  std::vector<GroupElement> gens;
  for (const auto& g : s.generators()) gens.push_back(to_local(g));
  return Subgroup::generated(group_, gens);
}

}  // namespace abeltrans
