#include "szpiro/polymat.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "szpiro/error.hpp"

namespace szpiro {

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring_)) {}

PolyMatrix::PolyMatrix(RingPtr ring, std::vector<std::vector<Poly>> data, std::size_t cols)
    : ring_(std::move(ring)), rows_(data.size()), cols_(data.empty() ? cols : data[0].size()) {
  data_.reserve(rows_ * cols_);
  for (auto& row : data) {
    if (row.size() != cols_)
      throw AlgebraError(ErrorCode::kShapeMismatch, "ragged matrix rows");
    for (auto& p : row) data_.push_back(p.ring() ? std::move(p) : Poly(ring_));
  }
}

PolyMatrix PolyMatrix::identity(const RingPtr& ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::parse(const RingPtr& ring,
                             const std::vector<std::vector<std::string>>& rows, std::size_t cols) {
  std::vector<std::vector<Poly>> data;
  for (const auto& r : rows) {
    std::vector<Poly> row;
    for (const auto& s : r) row.push_back(parse_poly(s, ring));
    data.push_back(std::move(row));
  }
  return PolyMatrix(ring, std::move(data), cols);
}

Vec PolyMatrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec PolyMatrix::column(std::size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

void PolyMatrix::set_column(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p = -p;
  return out;
}

PolyMatrix PolyMatrix::scaled(const Poly& c) const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p = c * p;
  return out;
}

namespace {

void require_same_shape(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw AlgebraError(ErrorCode::kShapeMismatch, "matrix shapes differ");
}

}  // namespace

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_shape(a, b);
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_shape(a, b);
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_)
    throw AlgebraError(ErrorCode::kShapeMismatch,
                       "cannot multiply " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                           " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  PolyMatrix out(a.ring_ ? a.ring_ : b.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Poly& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
    }
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Vec PolyMatrix::operator*(const Vec& v) const {
  if (v.size() != cols_) throw AlgebraError(ErrorCode::kShapeMismatch, "matrix-vector shape");
  Vec out = zero_vec(ring_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rows,
                                 const std::vector<std::size_t>& cols) const {
  PolyMatrix out(ring_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
  return out;
}

PolyMatrix PolyMatrix::column_block(std::size_t first, std::size_t count) const {
  std::vector<std::size_t> r(rows_), c(count);
  for (std::size_t i = 0; i < rows_; ++i) r[i] = i;
  for (std::size_t j = 0; j < count; ++j) c[j] = first + j;
  return submatrix(r, c);
}

PolyMatrix PolyMatrix::hstack(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_) throw AlgebraError(ErrorCode::kShapeMismatch, "hstack row mismatch");
  PolyMatrix out(a.ring_, a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
  }
  return out;
}

PolyMatrix PolyMatrix::vstack(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.cols_) throw AlgebraError(ErrorCode::kShapeMismatch, "vstack column mismatch");
  PolyMatrix out(a.ring_, a.rows_ + b.rows_, a.cols_);
  for (std::size_t j = 0; j < a.cols_; ++j) {
    for (std::size_t i = 0; i < a.rows_; ++i) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i) out(a.rows_ + i, j) = b(i, j);
  }
  return out;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::has_constant_entry() const {
  return std::any_of(data_.begin(), data_.end(), [](const Poly& p) { return p.constant_term() != 0; });
}

Submodule PolyMatrix::column_module() const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < cols_; ++j) cols.push_back(column(j));
  return Submodule(ring_, rows_, std::move(cols));
}

std::vector<std::vector<std::string>> PolyMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
  return out;
}

// ---------------------------------------------------------------- minors

std::vector<std::vector<std::size_t>> subsets_colex(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    // Colex successor: bump the lowest position that can move.
    std::size_t i = 0;
    while (i < k && cur[i] + 1 == (i + 1 < k ? cur[i + 1] : n)) ++i;
    if (i == k) break;
    ++cur[i];
    for (std::size_t j = 0; j < i; ++j) cur[j] = j;
  }
  return out;
}

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols())
    throw AlgebraError(ErrorCode::kNotSquare, "determinant of a " + std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()) + " matrix");
  const std::size_t n = m.rows();
  const RingPtr& ring = m.ring();
  if (n == 0) return Poly::constant(ring, 1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (n == 3)
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  // Bareiss fraction-free elimination.
  std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  bool negate = false;
  Poly prev = Poly::constant(ring, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return Poly(ring);
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

std::vector<Poly> minors(const PolyMatrix& m, std::size_t k) {
  std::vector<Poly> out;
  const auto row_sets = subsets_colex(m.rows(), k);
  for (const auto& cs : subsets_colex(m.cols(), k))
    for (const auto& rs : row_sets) out.push_back(determinant(m.submatrix(rs, cs)));
  return out;
}

Ideal minors_ideal(const PolyMatrix& m, std::size_t k) {
  if (k == 0) return Ideal::unit(m.ring());
  return Ideal(m.ring(), minors(m, k));
}

Ideal fitting_ideal(const PolyMatrix& m, std::size_t k) {
  if (m.rows() <= k) return Ideal::unit(m.ring());
  return minors_ideal(m, m.rows() - k);
}

PolyMatrix erase_first_row(const PolyMatrix& m) {
  if (m.rows() == 0) throw AlgebraError(ErrorCode::kEmptyMatrix, "matrix has no rows");
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 1; i < m.rows(); ++i) rows.push_back(i);
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(j);
  return m.submatrix(rows, cols);
}

namespace {

std::size_t numeric_rank(const PolyRing& ring, std::vector<std::vector<Scalar>> a) {
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Scalar inv = ring.inverse(a[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Scalar f = ring.reduce(a[i][c] * inv);
      for (std::size_t j = c; j < cols; ++j) a[i][j] = ring.reduce(a[i][j] - f * a[r][j]);
    }
    ++r;
  }
  return r;
}

bool has_nonzero_minor(const PolyMatrix& m, std::size_t k) {
  if (k == 0) return true;
  const auto row_sets = subsets_colex(m.rows(), k);
  for (const auto& cs : subsets_colex(m.cols(), k))
    for (const auto& rs : row_sets)
      if (!determinant(m.submatrix(rs, cs)).is_zero()) return true;
  return false;
}

}  // namespace

std::size_t rank(const PolyMatrix& m, std::uint64_t seed) {
  if (m.empty()) return 0;
  const RingPtr& ring = m.ring();
  std::mt19937_64 rng(seed);
  std::size_t probe = 0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Scalar> point;
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
      if (ring->field().is_rational()) {
        point.push_back(Scalar(static_cast<long>(rng() % 2001) - 1000));
      } else {
        point.push_back(ring->reduce(Scalar(static_cast<unsigned long>(rng() % ring->field().modulus))));
      }
    }
    std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).evaluate(point);
    probe = std::max(probe, numeric_rank(*ring, std::move(a)));
  }
  // A nonzero value at a point exhibits a nonzero minor; the upper bound is checked exactly.
  std::size_t r = probe;
  while (!has_nonzero_minor(m, r)) --r;
  while (r < std::min(m.rows(), m.cols()) && has_nonzero_minor(m, r + 1)) ++r;
  return r;
}

Ideal annihilator_of_cokernel(const PolyMatrix& m) {
  if (m.rows() == 0) throw AlgebraError(ErrorCode::kEmptyMatrix, "matrix has no rows");
  return annihilator_of_cokernel(m.column_module());
}

// ---------------------------------------------------------------- Pluecker

namespace {

int permutation_sign(const std::vector<std::size_t>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

}  // namespace

Poly pluecker_sum(const PolyMatrix& m, const std::vector<std::size_t>& a_cols,
                  const std::vector<std::size_t>& b_cols, const std::vector<std::size_t>& c_cols) {
  const std::size_t rows = m.rows();
  const std::size_t p = a_cols.size();
  auto violation = [](const std::string& what) {
    return AlgebraError(ErrorCode::kParameterViolation, what);
  };
  if (rows > m.cols()) throw violation("matrix has more rows than columns");
  if (p >= rows) throw violation("t = M - p must be positive");
  if (p + b_cols.size() > 2 * rows) throw violation("too many fixed columns");
  const std::size_t s = 2 * rows - p - b_cols.size();
  const std::size_t t = rows - p;
  if (s <= rows) throw violation("s = " + std::to_string(s) + " must exceed M = " + std::to_string(rows));
  if (c_cols.size() != s)
    throw violation("expected " + std::to_string(s) + " c-columns, got " + std::to_string(c_cols.size()));
  for (const auto* list : {&a_cols, &b_cols, &c_cols})
    for (std::size_t c : *list)
      if (c < 1 || c > m.cols()) throw violation("column index " + std::to_string(c) + " out of range");

  std::vector<std::size_t> all_rows(rows);
  for (std::size_t i = 0; i < rows; ++i) all_rows[i] = i;
  Poly sum(m.ring());
  for (const auto& first : subsets_colex(s, t)) {
    std::vector<std::size_t> perm = first;
    for (std::size_t i = 0; i < s; ++i)
      if (std::find(first.begin(), first.end(), i) == first.end()) perm.push_back(i);
    std::vector<std::size_t> left, right;
    for (std::size_t c : a_cols) left.push_back(c - 1);
    for (std::size_t i = 0; i < t; ++i) left.push_back(c_cols[perm[i]] - 1);
    for (std::size_t i = t; i < s; ++i) right.push_back(c_cols[perm[i]] - 1);
    for (std::size_t c : b_cols) right.push_back(c - 1);
    Poly term = determinant(m.submatrix(all_rows, left)) * determinant(m.submatrix(all_rows, right));
    if (permutation_sign(perm) < 0) term = -term;
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------- split minors

bool MinorIndex::good() const { return overlap() == 0; }

std::size_t MinorIndex::overlap() const {
  std::size_t k = 0;
  for (std::size_t a : alpha_cols)
    if (std::find(beta_cols.begin(), beta_cols.end(), a) != beta_cols.end()) ++k;
  return k;
}

std::vector<std::size_t> MinorIndex::columns(std::size_t n) const {
  std::vector<std::size_t> out = alpha_cols;
  for (std::size_t b : beta_cols) out.push_back(n + b);
  return out;
}

std::string MinorIndex::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < alpha_cols.size(); ++i) os << (i ? "," : "") << alpha_cols[i];
  os << ";";
  for (std::size_t i = 0; i < beta_cols.size(); ++i) os << (i ? "," : "") << beta_cols[i];
  os << "]";
  return os.str();
}

Poly split_minor(const PolyMatrix& m, const MinorIndex& idx) {
  const std::size_t n = m.rows();
  if (m.cols() != 2 * n || idx.alpha_cols.size() + idx.beta_cols.size() != n)
    throw AlgebraError(ErrorCode::kShapeMismatch, "minor " + idx.to_string() + " on a " +
                                                      std::to_string(m.rows()) + "x" +
                                                      std::to_string(m.cols()) + " matrix");
  std::vector<std::size_t> rows(n), cols;
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  for (std::size_t c : idx.columns(n)) cols.push_back(c - 1);
  return determinant(m.submatrix(rows, cols));
}

PolyMatrix symplectic_form(const RingPtr& ring, std::size_t n) {
  PolyMatrix j(ring, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = Poly::constant(ring, 1);
    j(n + i, i) = Poly::constant(ring, -1);
  }
  return j;
}

bool is_symmetric_split(const PolyMatrix& m) {
  if (m.cols() != 2 * m.rows()) throw AlgebraError(ErrorCode::kShapeMismatch, "not an n x 2n matrix");
  return (m * symplectic_form(m.ring(), m.rows()) * m.transpose()).is_zero();
}

bool is_symplectic(const PolyMatrix& e) {
  if (e.rows() != e.cols() || e.rows() % 2) return false;
  const PolyMatrix j = symplectic_form(e.ring(), e.rows() / 2);
  return e.transpose() * j * e == j;
}

// ---------------------------------------------------------------- BaseChange

BaseChange BaseChange::identity(const RingPtr& ring, std::size_t size, bool symplectic) {
  if (symplectic && size % 2)
    throw AlgebraError(ErrorCode::kShapeMismatch, "symplectic base change needs even size");
  BaseChange e;
  e.matrix_ = PolyMatrix::identity(ring, size);
  e.symplectic_ = symplectic;
  return e;
}

BaseChange BaseChange::from_matrix(PolyMatrix matrix, const std::string& kind) {
  if (matrix.rows() != matrix.cols())
    throw AlgebraError(ErrorCode::kNotSquare, "base change must be square");
  BaseChange e;
  e.symplectic_ = is_symplectic(matrix);
  e.log_.push_back({kind, {}, Poly(matrix.ring())});
  e.matrix_ = std::move(matrix);
  return e;
}

bool BaseChange::is_identity() const {
  return matrix_ == PolyMatrix::identity(matrix_.ring(), matrix_.rows());
}

void BaseChange::add_column(std::size_t target0, std::size_t source0, const Poly& b) {
  if (b.is_zero()) return;
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    if (!matrix_(i, source0).is_zero()) matrix_(i, target0) += b * matrix_(i, source0);
}

namespace {

void check_pair_index(std::size_t i, std::size_t n) {
  if (i < 1 || i > n)
    throw AlgebraError(ErrorCode::kShapeMismatch,
                       "pair index " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

}  // namespace

void BaseChange::paired(std::size_t h, std::size_t l, const Poly& zeta) {
  const std::size_t n = size() / 2;
  check_pair_index(h, n);
  check_pair_index(l, n);
  if (h == l) throw AlgebraError(ErrorCode::kParameterViolation, "paired operation needs H != L");
  add_column(n + l - 1, h - 1, zeta);
  add_column(n + h - 1, l - 1, zeta);
  log_.push_back({"paired", {h, l}, zeta});
}

void BaseChange::alpha_plus_beta(std::size_t j, const Poly& b) {
  const std::size_t n = size() / 2;
  check_pair_index(j, n);
  add_column(j - 1, n + j - 1, b);
  log_.push_back({"alpha_plus_beta", {j}, b});
}

void BaseChange::beta_plus_alpha(std::size_t j, const Poly& b) {
  const std::size_t n = size() / 2;
  check_pair_index(j, n);
  add_column(n + j - 1, j - 1, b);
  log_.push_back({"beta_plus_alpha", {j}, b});
}

void BaseChange::swap_pair(std::size_t i) {
  const std::size_t n = size() / 2;
  check_pair_index(i, n);
  Vec a = matrix_.column(i - 1);
  Vec b = matrix_.column(n + i - 1);
  for (auto& p : a) p = -p;
  matrix_.set_column(i - 1, b);
  matrix_.set_column(n + i - 1, a);
  log_.push_back({"swap", {i}, Poly::constant(matrix_.ring(), 1)});
}

void BaseChange::column_add(std::size_t target, std::size_t source, const Poly& b) {
  const std::size_t size2 = size();
  if (target < 1 || target > size2 || source < 1 || source > size2 || target == source)
    throw AlgebraError(ErrorCode::kShapeMismatch, "column_add indices out of range");
  add_column(target - 1, source - 1, b);
  symplectic_ = false;
  log_.push_back({"column_add", {target, source}, b});
}

void BaseChange::then(const BaseChange& other) {
  matrix_ = matrix_ * other.matrix_;
  log_.insert(log_.end(), other.log_.begin(), other.log_.end());
  symplectic_ = symplectic_ && other.symplectic_;
}

PolyMatrix apply_base_change(const PolyMatrix& m, const BaseChange& e) {
  if (m.cols() != e.size())
    throw AlgebraError(ErrorCode::kShapeMismatch, "matrix has " + std::to_string(m.cols()) +
                                                      " columns, base change acts on " +
                                                      std::to_string(e.size()));
  PolyMatrix out = m * e.matrix();
  if (e.symplectic()) {
    if (m.cols() != 2 * m.rows())
      throw AlgebraError(ErrorCode::kShapeMismatch, "symplectic base change needs an n x 2n matrix");
    if (!is_symmetric_split(m))
      throw AlgebraError(ErrorCode::kSymmetryBroken, "input matrix is not symmetric");
    if (!is_symplectic(e.matrix()))
      throw AlgebraError(ErrorCode::kSymmetryBroken, "base change is not symplectic");
    if (!is_symmetric_split(out))
      throw AlgebraError(ErrorCode::kSymmetryBroken, "symmetry lost after base change");
  }
  return out;
}

}  // namespace szpiro
