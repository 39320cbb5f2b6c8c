#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "szpiro/groebner.hpp"
#include "szpiro/poly.hpp"

namespace szpiro {

/// Dense row-major matrix over a polynomial ring. Entry access is 0-based.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  /// `cols` is only consulted when `data` has no rows.
  PolyMatrix(RingPtr ring, std::vector<std::vector<Poly>> data, std::size_t cols = 0);

  static PolyMatrix identity(const RingPtr& ring, std::size_t n);
  static PolyMatrix parse(const RingPtr& ring, const std::vector<std::vector<std::string>>& rows,
                          std::size_t cols = 0);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);

  PolyMatrix transpose() const;
  PolyMatrix operator-() const;
  PolyMatrix scaled(const Poly& c) const;
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
  Vec operator*(const Vec& v) const;

  /// Rows and columns selected by 0-based index lists, in the given order.
  PolyMatrix submatrix(const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) const;
  PolyMatrix column_block(std::size_t first, std::size_t count) const;
  static PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b);
  static PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b);

  bool is_zero() const;
  bool has_constant_entry() const;
  /// Column space as a submodule of A^rows.
  Submodule column_module() const;
  std::vector<std::vector<std::string>> to_strings() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

/// k-subsets of {0..n-1} in colexicographic order.
std::vector<std::vector<std::size_t>> subsets_colex(std::size_t n, std::size_t k);

Poly determinant(const PolyMatrix& m);
/// All k x k minors: column sets in colex order, row sets in colex order within each.
std::vector<Poly> minors(const PolyMatrix& m, std::size_t k);
/// Ideal of k x k minors; k = 0 gives the unit ideal, k > min(rows, cols) the zero ideal.
Ideal minors_ideal(const PolyMatrix& m, std::size_t k);
/// Ideal of (rows - k)-minors; unit ideal when rows - k <= 0.
Ideal fitting_ideal(const PolyMatrix& m, std::size_t k);
PolyMatrix erase_first_row(const PolyMatrix& m);
/// Largest k with a nonzero k-minor; evaluation probe, then exact confirmation.
std::size_t rank(const PolyMatrix& m, std::uint64_t seed = 0x5eed);

/// Ann of coker(m) as an ideal; needs at least one row.
Ideal annihilator_of_cokernel(const PolyMatrix& m);

/// Signed Pluecker sum for an M x N matrix; column lists are 1-based, minors keep the
/// given column order. Zero for every matrix when the parameters are admissible.
Poly pluecker_sum(const PolyMatrix& m, const std::vector<std::size_t>& a_cols,
                  const std::vector<std::size_t>& b_cols, const std::vector<std::size_t>& c_cols);

/// 1-based minor of an n x 2n split matrix (alpha beta).
struct MinorIndex {
  std::vector<std::size_t> alpha_cols;
  std::vector<std::size_t> beta_cols;

  bool good() const;
  std::size_t overlap() const;
  /// 1-based columns of the full matrix: alpha_cols then n + beta_cols.
  std::vector<std::size_t> columns(std::size_t n) const;
  std::string to_string() const;
  friend bool operator==(const MinorIndex&, const MinorIndex&) = default;
};

/// Minor [alpha_cols; beta_cols] of the split matrix m.
Poly split_minor(const PolyMatrix& m, const MinorIndex& idx);

/// J' = ((0, I_n), (-I_n, 0)).
PolyMatrix symplectic_form(const RingPtr& ring, std::size_t n);
/// M J' M^T = 0 for an n x 2n matrix M, i.e. alpha beta^T = beta alpha^T.
bool is_symmetric_split(const PolyMatrix& m);
/// E^T J' E = J'.
bool is_symplectic(const PolyMatrix& e);

struct OpRecord {
  std::string kind;
  std::vector<std::size_t> indices;  // 1-based
  Poly scalar;
};

/// Accumulated column operations on A^{2n}; M is transformed as M * matrix().
/// Indices of the pair operations run over 1..n.
class BaseChange {
 public:
  static BaseChange identity(const RingPtr& ring, std::size_t size, bool symplectic = true);
  /// Wraps an explicit matrix; `symplectic` is checked, not trusted.
  static BaseChange from_matrix(PolyMatrix matrix, const std::string& kind);

  const PolyMatrix& matrix() const { return matrix_; }
  const std::vector<OpRecord>& log() const { return log_; }
  bool symplectic() const { return symplectic_; }
  std::size_t size() const { return matrix_.rows(); }
  bool is_identity() const;

  /// beta_L += zeta alpha_H and beta_H += zeta alpha_L (H != L).
  void paired(std::size_t h, std::size_t l, const Poly& zeta);
  /// alpha_j += b beta_j.
  void alpha_plus_beta(std::size_t j, const Poly& b);
  /// beta_j += b alpha_j.
  void beta_plus_alpha(std::size_t j, const Poly& b);
  /// (alpha_i, beta_i) -> (beta_i, -alpha_i).
  void swap_pair(std::size_t i);
  /// Column `target` += b * column `source` over 1..2n; not symplectic in general.
  void column_add(std::size_t target, std::size_t source, const Poly& b);

  /// this followed by other.
  void then(const BaseChange& other);

 private:
  void add_column(std::size_t target0, std::size_t source0, const Poly& b);

  PolyMatrix matrix_;
  std::vector<OpRecord> log_;
  bool symplectic_ = true;
};

/// M * E; asserts the symmetry of M is preserved when E is symplectic.
PolyMatrix apply_base_change(const PolyMatrix& m, const BaseChange& e);

}  // namespace szpiro
