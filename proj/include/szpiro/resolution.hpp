#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szpiro/groebner.hpp"
#include "szpiro/polymat.hpp"

namespace szpiro {

/// Generator degrees of F0, F1, F2 and optional per-variable weights (default 1).
struct GradedData {
  std::vector<int> q_degrees;
  std::vector<int> r_degrees;
  std::vector<int> s_degrees;
  std::vector<int> weights;
  std::optional<int> twist;
};

/// 0 -> F2 --psi--> F1 --phi--> F0.
struct FreeResolution {
  PolyMatrix phi;
  PolyMatrix psi;
  std::optional<GradedData> grading;

  /// Validates shapes and grading lengths (not phi * psi = 0).
  static FreeResolution make(PolyMatrix phi, PolyMatrix psi,
                             std::optional<GradedData> grading = std::nullopt);

  const RingPtr& ring() const { return phi.ring(); }
  std::size_t n0() const { return phi.rows(); }
  std::size_t n1() const { return phi.cols(); }
  std::size_t n2() const { return psi.cols(); }
  bool is_complex() const { return (phi * psi).is_zero(); }
};

/// phi = (alpha beta), psi = (-beta^T; alpha^T).
struct SymmetricResolution {
  std::size_t n = 0;
  PolyMatrix alpha;
  PolyMatrix beta;
  FreeResolution base;

  static SymmetricResolution from_pair(const PolyMatrix& alpha, const PolyMatrix& beta,
                                       std::optional<GradedData> grading = std::nullopt);
  /// Requires alpha beta^T = beta alpha^T.
  static SymmetricResolution from_phi(const PolyMatrix& phi,
                                      std::optional<GradedData> grading = std::nullopt);
};

PolyMatrix stacked_psi(const PolyMatrix& alpha, const PolyMatrix& beta);

struct AcyclicityReport {
  bool acyclic = false;
  bool minimal = false;
  bool codim2 = false;
  std::size_t rank_phi = 0;
  std::size_t rank_psi = 0;
  int depth_phi = 0;  // depth of I_{rank phi}(phi)
  int depth_psi = 0;  // depth of I_{rank psi}(psi)
  int depth_ann = 0;  // depth of Ann coker phi
  Ideal annihilator;
};
AcyclicityReport check_acyclic_minimal(const FreeResolution& res);

struct HeartReport {
  bool holds = false;
  int depth = 0;
  Ideal i_prime;
};
HeartReport heart_check(const PolyMatrix& phi);

struct SymmetryOutcome {
  std::optional<SymmetricResolution> sym;
  std::string reason;
  /// First violated entry (0-based) of alpha beta^T - beta alpha^T or of psi.
  std::optional<std::pair<std::size_t, std::size_t>> entry;
  std::string matrix;  // "alpha*beta^T" or "psi"
};
SymmetryOutcome symmetry_check(const FreeResolution& res);

struct KoszulCertificate {
  Poly det_alpha;
  Poly det_beta;
  Poly gcd;
  Scalar lambda_unit;
  bool lambda_ok = false;
  bool regular_sequence = false;
};
KoszulCertificate koszul_check(const SymmetricResolution& sym);

FreeResolution dualize(const FreeResolution& res);

struct TwistReport {
  bool homogeneous = false;
  std::optional<int> twist;
  /// Candidates that satisfied every twist equation (at most one).
  std::vector<int> candidates;
  std::string detail;
};
TwistReport graded_twist_check(const FreeResolution& res);

struct SymmetrizeResult {
  SymmetricResolution sym;
  PolyMatrix f1, f2, f3;
  PolyMatrix skew;
  PolyMatrix inverse_u;
  BaseChange normal_form;
};
SymmetrizeResult symmetrize(const FreeResolution& res, const PolyMatrix& u);

/// B with B^T S B = J for a skew S of even size with constant nonzero determinant.
BaseChange skew_normal_form(const PolyMatrix& s);

/// Lifts each column of `target` through the columns of `through`; nullopt if some column fails.
std::optional<PolyMatrix> lift_columns(const PolyMatrix& target, const PolyMatrix& through);

}  // namespace szpiro
