#include "realcech/exactalg/cochain_complex.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "realcech/errors.hpp"

namespace realcech {

struct IntegerCochainComplex::Cache {
  std::mutex mu;
  std::map<int, InvariantFactors> invariants;
  std::map<int, std::size_t> rational_ranks;
  std::map<int, std::size_t> modp_ranks;
  std::map<int, std::shared_ptr<const CohomologyBasis>> bases;
};

IntegerCochainComplex::IntegerCochainComplex() : IntegerCochainComplex(0, {0}, {}) {}

IntegerCochainComplex::IntegerCochainComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> diffs)
    : lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)), cache_(std::make_shared<Cache>()) {
  if (ranks_.empty()) throw Error(ErrorCode::ShapeMismatch, "a complex needs at least one degree");
  if (diffs_.size() + 1 != ranks_.size())
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(ranks_.size() - 1) + " differentials, got " +
                                              std::to_string(diffs_.size()));
  for (std::size_t i = 0; i < diffs_.size(); ++i)
    if (diffs_[i].cols() != ranks_[i] || diffs_[i].rows() != ranks_[i + 1])
      throw Error(ErrorCode::ShapeMismatch, "d(" + std::to_string(lo_ + static_cast<int>(i)) + ") has the wrong shape");
  zero_edges_.emplace_back(ranks_.front(), 0);
  zero_edges_.emplace_back(0, ranks_.back());
  zero_edges_.emplace_back(0, 0);
  if (!squares_to_zero()) throw Error(ErrorCode::NotAComplex, "d(k+1) d(k) is not zero");
}

std::size_t IntegerCochainComplex::rank(int k) const { return contains(k) ? ranks_[k - lo_] : 0; }

const IntMatrix& IntegerCochainComplex::differential(int k) const {
  if (k >= lo_ && k < hi()) return diffs_[k - lo_];
  if (k == lo_ - 1) return zero_edges_[0];
  if (k == hi()) return zero_edges_[1];
  return zero_edges_[2];
}

bool IntegerCochainComplex::squares_to_zero() const {
  for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
    if (!(diffs_[i + 1] * diffs_[i]).is_zero()) return false;
  return true;
}

const InvariantFactors& IntegerCochainComplex::invariants(int k) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->invariants.find(k);
    if (it != cache_->invariants.end()) return it->second;
  }
  InvariantFactors f = invariant_factors(differential(k));
  std::lock_guard lock(cache_->mu);
  return cache_->invariants.emplace(k, std::move(f)).first->second;
}

std::size_t IntegerCochainComplex::rank_mod_prime_of(int k) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->modp_ranks.find(k);
    if (it != cache_->modp_ranks.end()) return it->second;
  }
  std::size_t r = rank_mod_prime(differential(k), kPrefilterPrime);
  std::lock_guard lock(cache_->mu);
  return cache_->modp_ranks.emplace(k, r).first->second;
}

// The modular rank is a lower bound for the rational one; it is exact when it
// is full, or when it saturates the room left by a neighboring differential
// (r(k) + r(k-1) <= n(k) because d d = 0).
std::size_t IntegerCochainComplex::rational_rank_of(int k) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->rational_ranks.find(k);
    if (it != cache_->rational_ranks.end()) return it->second;
    auto jt = cache_->invariants.find(k);
    if (jt != cache_->invariants.end()) return jt->second.rank;
  }
  const IntMatrix& d = differential(k);
  std::size_t r = rank_mod_prime_of(k);
  bool exact = r == std::min(d.rows(), d.cols());
  if (!exact && r + rank_mod_prime_of(k - 1) == rank(k)) exact = true;
  if (!exact && r + rank_mod_prime_of(k + 1) == rank(k + 1)) exact = true;
  if (!exact) r = rational_rank(d);
  std::lock_guard lock(cache_->mu);
  return cache_->rational_ranks.emplace(k, r).first->second;
}

std::shared_ptr<const CohomologyBasis> IntegerCochainComplex::basis(int k) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->bases.find(k);
    if (it != cache_->bases.end()) return it->second;
  }
  auto b = std::make_shared<const CohomologyBasis>(*this, k);
  std::lock_guard lock(cache_->mu);
  return cache_->bases.emplace(k, std::move(b)).first->second;
}

namespace {

void require_degree(const IntegerCochainComplex& c, int k) {
  if (!c.contains(k))
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(k) + " outside [" + std::to_string(c.lo()) +
                                                 ", " + std::to_string(c.hi()) + "]");
}

}  // namespace

GroupDescriptor complex_cohomology(const IntegerCochainComplex& c, int k) {
  require_degree(c, k);
  const auto& in = c.invariants(k - 1);
  const auto& out = c.invariants(k);
  return {c.rank(k) - in.rank - out.rank, in.nontrivial};
}

std::size_t rational_cohomology_dim(const IntegerCochainComplex& c, int k) {
  require_degree(c, k);
  return c.rank(k) - c.rational_rank_of(k - 1) - c.rational_rank_of(k);
}

GroupDescriptor mod_n_cohomology(const IntegerCochainComplex& c, int k, const Integer& n) {
  require_degree(c, k);
  if (n < 1) throw Error(ErrorCode::UnsupportedCoefficients, "Z/n needs n >= 1");
  GroupDescriptor h = complex_cohomology(c, k);
  std::vector<Integer> orders(h.rank, n);
  auto add = [&](const std::vector<Integer>& es) {
    for (const auto& e : es) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
      orders.push_back(g);
    }
  };
  add(h.torsion);                      // H^k (x) Z/n
  add(c.invariants(k).nontrivial);     // Tor(H^{k+1}, Z/n)
  return GroupDescriptor::from_cyclic(0, std::move(orders));
}

namespace {

bool is_signed_permutation(const IntMatrix& t) {
  for (std::size_t c = 0; c < t.cols(); ++c) {
    auto col = t.column(c);
    if (col.size() != 1) return false;
    if (col[0].value != 1 && col[0].value != -1) return false;
  }
  return true;
}

IntMatrix rows_of(const detail::DenseMatrix<Integer>& m, std::size_t first) {
  std::vector<IntMatrix::Triplet> t;
  for (std::size_t i = first; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) t.push_back({i - first, j, m(i, j)});
  return IntMatrix::from_triplets(m.rows() - first, m.cols(), std::move(t));
}

IntMatrix cols_of(const detail::DenseMatrix<Integer>& m, std::size_t first) {
  std::vector<IntMatrix::Triplet> t;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = first; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) t.push_back({i, j - first, m(i, j)});
  return IntMatrix::from_triplets(m.rows(), m.cols() - first, std::move(t));
}

// Basis of ker(t - 1) and a left inverse.
std::pair<IntMatrix, IntMatrix> fixed_basis(const IntMatrix& t) {
  const std::size_t n = t.cols();
  if (is_signed_permutation(t)) {
    // Orbits {a, b} with t e_a = s e_b: fixed vectors are x (e_a + s e_b); a
    // one-element orbit with s = -1 only admits 0.
    std::vector<IntMatrix::Triplet> b, l;
    std::size_t f = 0;
    for (std::size_t a = 0; a < n; ++a) {
      const auto& e = t.column(a)[0];
      if (e.row < a) continue;
      if (e.row == a) {
        if (e.value == -1) continue;
        b.push_back({a, f, 1});
      } else {
        b.push_back({a, f, 1});
        b.push_back({e.row, f, e.value});
      }
      l.push_back({f, a, 1});
      ++f;
    }
    return {IntMatrix::from_triplets(n, f, std::move(b)), IntMatrix::from_triplets(f, n, std::move(l))};
  }
  auto dec = detail::smith_decomposition(t - IntMatrix::identity(n));
  return {cols_of(dec.transforms.v, dec.rank), rows_of(dec.transforms.v_inv, dec.rank)};
}

}  // namespace

FixedSubcomplex fixed_subcomplex(const IntegerCochainComplex& c, const std::vector<IntMatrix>& t) {
  const int lo = c.lo();
  const int hi = c.hi();
  if (t.size() != static_cast<std::size_t>(hi - lo + 1))
    throw Error(ErrorCode::ShapeMismatch, "one involution matrix per degree is required");
  for (int k = lo; k <= hi; ++k) {
    const IntMatrix& tk = t[k - lo];
    if (tk.rows() != c.rank(k) || tk.cols() != c.rank(k))
      throw Error(ErrorCode::ShapeMismatch, "involution in degree " + std::to_string(k) + " has the wrong shape");
    if (!(tk * tk == IntMatrix::identity(c.rank(k))))
      throw Error(ErrorCode::NotAnInvolution, "t^2 != 1 in degree " + std::to_string(k));
  }
  for (int k = lo; k < hi; ++k)
    if (!(t[k + 1 - lo] * c.differential(k) == c.differential(k) * t[k - lo]))
      throw Error(ErrorCode::NotEquivariant, "t d != d t in degree " + std::to_string(k));

  FixedSubcomplex out;
  std::vector<std::size_t> ranks;
  for (int k = lo; k <= hi; ++k) {
    auto [b, l] = fixed_basis(t[k - lo]);
    ranks.push_back(b.cols());
    out.basis.push_back(std::move(b));
    out.coordinates.push_back(std::move(l));
  }
  std::vector<IntMatrix> diffs;
  for (int k = lo; k < hi; ++k) diffs.push_back(out.coordinates[k + 1 - lo] * (c.differential(k) * out.basis[k - lo]));
  out.complex = IntegerCochainComplex(lo, std::move(ranks), std::move(diffs));
  return out;
}

namespace {

using SparseVec = std::vector<MatrixEntry>;

// dst += a * src, both sorted by row.
void add_multiple(SparseVec& dst, const Integer& a, const SparseVec& src) {
  SparseVec out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].row < src[j].row)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].row < dst[i].row) {
      out.push_back({src[j].row, a * src[j].value});
      ++j;
    } else {
      Integer x = dst[i].value + a * src[j].value;
      if (sgn(x) != 0) out.push_back({dst[i].row, std::move(x)});
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

const Integer* find_row(const SparseVec& v, std::size_t row) {
  auto it = std::lower_bound(v.begin(), v.end(), row, [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
  return it != v.end() && it->row == row ? &it->value : nullptr;
}

IntMatrix from_sparse_columns(std::size_t rows, const std::vector<SparseVec>& cols) {
  std::vector<IntMatrix::Triplet> t;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& e : cols[c]) t.push_back({e.row, c, e.value});
  return IntMatrix::from_triplets(rows, cols.size(), std::move(t));
}

struct ColumnReduction {
  std::size_t rank = 0;
  IntMatrix v, v_inv;
};

// Unimodular v with m v = [b | 0], b of full column rank. Unit pivots are
// eliminated sparsely; whatever is left goes through a dense Smith form.
ColumnReduction column_reduce(const IntMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<SparseVec> a(n), v(n), w(n);  // w: rows of v^-1
  for (std::size_t c = 0; c < n; ++c) {
    a[c].assign(m.column(c).begin(), m.column(c).end());
    v[c] = {{c, 1}};
    w[c] = {{c, 1}};
  }
  std::vector<std::size_t> row_count(m.rows(), 0);
  for (const auto& col : a)
    for (const auto& e : col) ++row_count[e.row];
  std::vector<bool> active(n, true);
  std::vector<std::size_t> pivots;

  while (true) {
    std::size_t best_col = n, best_row = 0, best_cost = SIZE_MAX;
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c]) continue;
      for (const auto& e : a[c]) {
        if (abs(e.value) != 1) continue;
        std::size_t cost = (a[c].size() - 1) * (row_count[e.row] - 1);
        if (cost < best_cost) best_col = c, best_row = e.row, best_cost = cost;
      }
    }
    if (best_col == n) break;
    const std::size_t j = best_col;
    const Integer unit = *find_row(a[j], best_row);
    active[j] = false;
    pivots.push_back(j);
    for (const auto& e : a[j]) --row_count[e.row];
    for (std::size_t l = 0; l < n; ++l) {
      if (!active[l]) continue;
      const Integer* x = find_row(a[l], best_row);
      if (!x) continue;
      Integer f = -(*x) * unit;  // unit^-1 = unit
      for (const auto& e : a[l]) --row_count[e.row];
      add_multiple(a[l], f, a[j]);
      for (const auto& e : a[l]) ++row_count[e.row];
      add_multiple(v[l], f, v[j]);
      add_multiple(w[j], -f, w[l]);
    }
  }

  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < n; ++c)
    if (active[c]) rest.push_back(c);
  std::vector<std::size_t> rows_used;
  for (std::size_t c : rest)
    for (const auto& e : a[c]) rows_used.push_back(e.row);
  std::sort(rows_used.begin(), rows_used.end());
  rows_used.erase(std::unique(rows_used.begin(), rows_used.end()), rows_used.end());

  ColumnReduction out;
  std::vector<SparseVec> vcols, wrows;
  for (std::size_t j : pivots) {
    vcols.push_back(v[j]);
    wrows.push_back(w[j]);
  }
  out.rank = pivots.size();
  if (!rest.empty()) {
    std::vector<IntMatrix::Triplet> t;
    for (std::size_t s = 0; s < rest.size(); ++s)
      for (const auto& e : a[rest[s]]) {
        auto r = std::lower_bound(rows_used.begin(), rows_used.end(), e.row) - rows_used.begin();
        t.push_back({static_cast<std::size_t>(r), s, e.value});
      }
    auto dec = detail::smith_decomposition(IntMatrix::from_triplets(rows_used.size(), rest.size(), std::move(t)));
    out.rank += dec.rank;
    IntMatrix q = detail::to_int_matrix(dec.transforms.v);
    IntMatrix q_inv = detail::to_int_matrix(dec.transforms.v_inv).transpose();  // columns = rows of q^-1
    for (std::size_t t2 = 0; t2 < rest.size(); ++t2) {
      SparseVec col, row;
      for (const auto& e : q.column(t2)) add_multiple(col, e.value, v[rest[e.row]]);
      for (const auto& e : q_inv.column(t2)) add_multiple(row, e.value, w[rest[e.row]]);
      vcols.push_back(std::move(col));
      wrows.push_back(std::move(row));
    }
  }
  out.v = from_sparse_columns(n, vcols);
  out.v_inv = from_sparse_columns(n, wrows).transpose();
  return out;
}

}  // namespace

CohomologyBasis::CohomologyBasis(const IntegerCochainComplex& c, int k) : k_(k) {
  require_degree(c, k);
  n_ = c.rank(k);
  dk_ = c.differential(k);
  auto dec = detail::smith_decomposition(c.differential(k - 1));
  r_ = dec.rank;
  diag_.assign(dec.diagonal.begin(), dec.diagonal.begin() + static_cast<std::ptrdiff_t>(r_));
  for (std::size_t i = 0; i < r_; ++i)
    if (diag_[i] != 1) torsion_at_.push_back(i);
  u_ = detail::to_int_matrix(dec.transforms.u);
  u_inv_ = detail::to_int_matrix(dec.transforms.u_inv);
  v_ = detail::to_int_matrix(dec.transforms.v);

  // d(k) u^-1 vanishes on the first r columns since d(k) d(k-1) = 0.
  IntMatrix m2 = (dk_ * u_inv_).column_block(r_, n_ - r_);
  auto red = column_reduce(m2);
  r2_ = red.rank;
  v2_ = std::move(red.v);
  v2_inv_ = std::move(red.v_inv);

  std::vector<Integer> torsion;
  for (std::size_t i : torsion_at_) torsion.push_back(diag_[i]);
  group_ = GroupDescriptor{n_ - r_ - r2_, std::move(torsion)};
}

ElementCoordinates CohomologyBasis::coordinates(std::span<const Integer> cocycle) const {
  if (cocycle.size() != n_) throw Error(ErrorCode::ShapeMismatch, "cochain has the wrong length");
  if (!is_zero_vector(dk_.apply(cocycle))) throw Error(ErrorCode::NotACocycle, "d(k) v != 0");
  IntVector y = u_.apply(cocycle);
  ElementCoordinates out;
  for (std::size_t i : torsion_at_) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), diag_[i].get_mpz_t());
    out.torsion_part.push_back(r);
  }
  IntVector tail(y.begin() + static_cast<std::ptrdiff_t>(r_), y.end());
  IntVector w = v2_inv_.apply(tail);
  out.free_part.assign(w.begin() + static_cast<std::ptrdiff_t>(r2_), w.end());
  return out;
}

IntVector CohomologyBasis::torsion_generator(std::size_t i) const {
  IntVector e(n_, 0);
  e.at(torsion_at_.at(i)) = 1;
  return u_inv_.apply(e);
}

IntVector CohomologyBasis::free_generator(std::size_t j) const {
  IntVector e(n_ - r_, 0);
  e.at(r2_ + j) = 1;
  IntVector z = v2_.apply(e);
  IntVector y(r_, 0);
  y.insert(y.end(), z.begin(), z.end());
  return u_inv_.apply(y);
}

std::optional<IntVector> CohomologyBasis::solve_coboundary(std::span<const Integer> target) const {
  if (target.size() != n_) throw Error(ErrorCode::ShapeMismatch, "cochain has the wrong length");
  IntVector y = u_.apply(target);
  IntVector m(v_.cols(), 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < r_) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), diag_[i].get_mpz_t())) return std::nullopt;
      m[i] = y[i] / diag_[i];
    } else if (sgn(y[i]) != 0) {
      return std::nullopt;
    }
  }
  return v_.apply(m);
}

IntVector CohomologyBasis::torsion_witness(std::size_t i) const {
  IntVector e(v_.cols(), 0);
  e.at(torsion_at_.at(i)) = 1;
  return v_.apply(e);
}

ElementCoordinates class_coordinates(const IntegerCochainComplex& c, int k, std::span<const Integer> cocycle) {
  return c.basis(k)->coordinates(cocycle);
}

}  // namespace realcech
