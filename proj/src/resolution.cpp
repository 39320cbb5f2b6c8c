#include "szpiro/resolution.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "szpiro/error.hpp"

namespace szpiro {

namespace {

void check_grading(const GradedData& g, std::size_t n0, std::size_t n1, std::size_t n2,
                   std::size_t nvars) {
  if (g.q_degrees.size() != n0 || g.r_degrees.size() != n1 || g.s_degrees.size() != n2)
    throw AlgebraError(ErrorCode::kShapeMismatch, "grading lengths do not match the ranks");
  if (!g.weights.empty() && g.weights.size() != nvars)
    throw AlgebraError(ErrorCode::kShapeMismatch, "one weight per variable expected");
}

int depth_of(const Ideal& i) { return dimension_and_depth(i).depth; }

std::vector<int> weights_of(const GradedData& g, std::size_t nvars) {
  return g.weights.empty() ? std::vector<int>(nvars, 1) : g.weights;
}

}  // namespace

FreeResolution FreeResolution::make(PolyMatrix phi, PolyMatrix psi,
                                    std::optional<GradedData> grading) {
  if (phi.cols() != psi.rows())
    throw AlgebraError(ErrorCode::kShapeMismatch,
                       "phi has " + std::to_string(phi.cols()) + " columns but psi has " +
                           std::to_string(psi.rows()) + " rows");
  if (phi.ring() && psi.ring() && !phi.ring()->same_as(*psi.ring()))
    throw AlgebraError(ErrorCode::kRingMismatch, "phi and psi live over different rings");
  if (grading) check_grading(*grading, phi.rows(), phi.cols(), psi.cols(), phi.ring()->nvars());
  return FreeResolution{std::move(phi), std::move(psi), std::move(grading)};
}

PolyMatrix stacked_psi(const PolyMatrix& alpha, const PolyMatrix& beta) {
  return PolyMatrix::vstack(-beta.transpose(), alpha.transpose());
}

SymmetricResolution SymmetricResolution::from_pair(const PolyMatrix& alpha, const PolyMatrix& beta,
                                                   std::optional<GradedData> grading) {
  if (alpha.rows() != alpha.cols() || beta.rows() != beta.cols() || alpha.rows() != beta.rows())
    throw AlgebraError(ErrorCode::kShapeMismatch, "alpha and beta must be n x n");
  PolyMatrix phi = PolyMatrix::hstack(alpha, beta);
  if (!is_symmetric_split(phi))
    throw AlgebraError(ErrorCode::kSymmetryBroken, "alpha*beta^T differs from beta*alpha^T");
  SymmetricResolution out;
  out.n = alpha.rows();
  out.alpha = alpha;
  out.beta = beta;
  out.base = FreeResolution::make(phi, stacked_psi(alpha, beta), std::move(grading));
  return out;
}

SymmetricResolution SymmetricResolution::from_phi(const PolyMatrix& phi,
                                                  std::optional<GradedData> grading) {
  if (phi.cols() != 2 * phi.rows())
    throw AlgebraError(ErrorCode::kShapeMismatch, "symmetric phi must be n x 2n");
  const std::size_t n = phi.rows();
  return from_pair(phi.column_block(0, n), phi.column_block(n, n), std::move(grading));
}

AcyclicityReport check_acyclic_minimal(const FreeResolution& res) {
  if (!res.is_complex()) throw AlgebraError(ErrorCode::kComplexNotZero, "phi*psi is not zero");
  AcyclicityReport r{.annihilator = res.n0() > 0 ? annihilator_of_cokernel(res.phi)
                                                : Ideal::unit(res.ring())};
  r.rank_phi = rank(res.phi);
  r.rank_psi = rank(res.psi);
  r.depth_phi = depth_of(minors_ideal(res.phi, r.rank_phi));
  r.depth_psi = depth_of(minors_ideal(res.psi, r.rank_psi));
  r.acyclic = r.rank_psi == res.n2() && r.rank_phi + r.rank_psi == res.n1() && r.depth_psi >= 2 &&
              r.depth_phi >= 1;
  r.minimal = !res.phi.has_constant_entry() && !res.psi.has_constant_entry();
  r.depth_ann = depth_of(r.annihilator);
  r.codim2 = r.depth_ann == 2;
  return r;
}

HeartReport heart_check(const PolyMatrix& phi) {
  if (phi.rows() == 0) throw AlgebraError(ErrorCode::kEmptyMatrix, "heart check needs a row");
  HeartReport h{.i_prime = fitting_ideal(erase_first_row(phi), 0)};
  h.depth = depth_of(h.i_prime);
  h.holds = h.depth >= 4;
  return h;
}

SymmetryOutcome symmetry_check(const FreeResolution& res) {
  const std::size_t n = res.n0();
  if (res.n1() != 2 * n || res.n2() != n)
    throw AlgebraError(ErrorCode::kShapeMismatch, "symmetric shape needs ranks n, 2n, n");
  SymmetryOutcome out;
  PolyMatrix alpha = res.phi.column_block(0, n);
  PolyMatrix beta = res.phi.column_block(n, n);
  PolyMatrix defect = alpha * beta.transpose() - beta * alpha.transpose();
  for (std::size_t i = 0; i < n && !out.entry; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!defect(i, j).is_zero()) {
        out.entry = {i, j};
        out.matrix = "alpha*beta^T";
        out.reason = "alpha*beta^T differs from beta*alpha^T at (" + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + "): " + (alpha * beta.transpose())(i, j).to_string() +
                     " vs " + (beta * alpha.transpose())(i, j).to_string();
        break;
      }
  if (out.entry) return out;
  PolyMatrix expect = stacked_psi(alpha, beta);
  for (std::size_t i = 0; i < 2 * n && !out.entry; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(expect(i, j) == res.psi(i, j))) {
        out.entry = {i, j};
        out.matrix = "psi";
        out.reason = "psi differs from (-beta^T; alpha^T) at (" + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + "): " + res.psi(i, j).to_string() + " vs " +
                     expect(i, j).to_string();
        break;
      }
  if (out.entry) return out;
  out.sym = SymmetricResolution::from_pair(alpha, beta, res.grading);
  return out;
}

KoszulCertificate koszul_check(const SymmetricResolution& sym) {
  const RingPtr& ring = sym.alpha.ring();
  const std::size_t n = sym.n;
  KoszulCertificate c;
  c.det_alpha = determinant(sym.alpha);
  c.det_beta = determinant(sym.beta);
  c.gcd = multivariate_gcd(c.det_alpha, c.det_beta);
  c.regular_sequence = !c.det_alpha.is_zero() && c.gcd.is_unit();

  // psi = (rho1; rho2) with tau1 = alpha, tau2 = beta.
  const PolyMatrix& psi = sym.base.psi;
  std::vector<std::size_t> lower(n), all(n);
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = n + i;
    all[i] = i;
  }
  Poly rho1 = determinant(psi.submatrix(all, all));
  Poly rho2 = determinant(psi.submatrix(lower, all));
  Poly sign_tau2 = (n % 2 == 0 ? c.det_beta : -c.det_beta);

  c.lambda_unit = 1;
  std::optional<Scalar> lam;
  auto candidate = [&](const Poly& num, const Poly& den) {
    if (den.is_zero() || lam) return;
    auto q = try_divide(num, den);
    if (q && q->is_unit()) lam = q->leading_coeff();
  };
  candidate(rho2, c.det_alpha);
  candidate(rho1, sign_tau2);
  if (lam) c.lambda_unit = *lam;
  Poly l = Poly::constant(ring, c.lambda_unit);
  c.lambda_ok = rho1 == l * sign_tau2 && rho2 == l * c.det_alpha;
  return c;
}

FreeResolution dualize(const FreeResolution& res) {
  std::optional<GradedData> g;
  if (res.grading) {
    GradedData d;
    for (int s : res.grading->s_degrees) d.q_degrees.push_back(-s);
    for (int r : res.grading->r_degrees) d.r_degrees.push_back(-r);
    for (int q : res.grading->q_degrees) d.s_degrees.push_back(-q);
    d.weights = res.grading->weights;
    g = d;
  }
  return FreeResolution::make(res.psi.transpose(), res.phi.transpose(), std::move(g));
}

TwistReport graded_twist_check(const FreeResolution& res) {
  if (!res.grading) throw AlgebraError(ErrorCode::kInvalidInput, "no grading data supplied");
  const GradedData& g = *res.grading;
  const auto w = weights_of(g, res.ring()->nvars());
  TwistReport t;
  t.homogeneous = true;

  auto scan = [&](const PolyMatrix& m, const std::vector<int>& target, const std::vector<int>& source,
                  const char* name) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Poly& e = m(i, j);
        if (e.is_zero()) continue;
        std::string where = std::string(name) + "(" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")";
        auto d = e.homogeneous_degree(w);
        if (!d)
          throw AlgebraError(ErrorCode::kInhomogeneousEntry,
                             where + " = " + e.to_string() + " is not homogeneous",
                             nlohmann::json{{"matrix", name}, {"row", i + 1}, {"col", j + 1}});
        if (*d != source[j] - target[i] && t.homogeneous) {
          t.homogeneous = false;
          t.detail = where + " has degree " + std::to_string(*d) + ", expected " +
                     std::to_string(source[j] - target[i]);
        }
      }
  };
  scan(res.phi, g.q_degrees, g.r_degrees, "phi");
  scan(res.psi, g.r_degrees, g.s_degrees, "psi");

  const std::size_t n = res.n0();
  if (res.n1() != 2 * n || res.n2() != n || n == 0) {
    if (t.detail.empty()) t.detail = "not of symmetric shape";
    return t;
  }
  std::vector<int> sums;
  for (std::size_t k = 0; k < n; ++k) {
    sums.push_back(g.r_degrees[k] + g.r_degrees[n + k]);
    sums.push_back(g.q_degrees[k] + g.s_degrees[k]);
  }
  const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
  for (int c = *lo; c <= *hi; ++c)
    if (std::all_of(sums.begin(), sums.end(), [c](int s) { return s == c; })) t.candidates.push_back(c);
  if (t.candidates.size() > 1)
    throw AlgebraError(ErrorCode::kVerificationFailed, "twist is not unique");
  if (t.homogeneous && t.candidates.size() == 1) t.twist = t.candidates.front();
  if (!t.twist && t.detail.empty()) t.detail = "no twist fits the degree pattern";
  return t;
}

std::optional<PolyMatrix> lift_columns(const PolyMatrix& target, const PolyMatrix& through) {
  if (target.rows() != through.rows())
    throw AlgebraError(ErrorCode::kShapeMismatch, "lift needs matching row counts");
  Submodule m = through.column_module();
  PolyMatrix out(target.ring(), through.cols(), target.cols());
  for (std::size_t j = 0; j < target.cols(); ++j) {
    auto c = m.lift(target.column(j));
    if (!c) return std::nullopt;
    out.set_column(j, *c);
  }
  return out;
}

BaseChange skew_normal_form(const PolyMatrix& s) {
  const RingPtr& ring = s.ring();
  const std::size_t size = s.rows();
  if (s.rows() != s.cols()) throw AlgebraError(ErrorCode::kNotSkew, "skew matrix must be square");
  if (size % 2 != 0) throw AlgebraError(ErrorCode::kNotSkew, "skew matrix must have even size");
  if (!(s.transpose() == -s)) throw AlgebraError(ErrorCode::kNotSkew, "S^T differs from -S");
  if (!determinant(s).is_unit())
    throw AlgebraError(ErrorCode::kNotUnimodular, "det S is not a nonzero constant");

  auto omega = [&](const Vec& u, const Vec& v) {
    Poly acc(ring);
    for (std::size_t i = 0; i < size; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < size; ++j)
        if (!v[j].is_zero() && !s(i, j).is_zero()) acc += u[i] * s(i, j) * v[j];
    }
    return acc;
  };

  std::vector<Vec> pool;
  for (std::size_t i = 0; i < size; ++i) pool.push_back(unit_vec(ring, size, i));
  const std::size_t n = size / 2;
  std::vector<Vec> bs, cs;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    Poly w(ring);
    for (std::size_t a = 0; a < pool.size() && !pick; ++a)
      for (std::size_t b = a + 1; b < pool.size(); ++b) {
        w = omega(pool[a], pool[b]);
        if (w.is_unit()) {
          pick = {a, b};
          break;
        }
      }
    if (!pick) throw AlgebraError(ErrorCode::kNoUnitPivot, "no unit pairing left");
    Vec b = pool[pick->first];
    Vec c = Poly::constant(ring, ring->inverse(w.leading_coeff())) * pool[pick->second];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick->second));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick->first));
    for (auto& v : pool) v = v - omega(v, c) * b + omega(v, b) * c;
    bs.push_back(std::move(b));
    cs.push_back(std::move(c));
  }
  PolyMatrix m(ring, size, size);
  for (std::size_t k = 0; k < n; ++k) {
    m.set_column(k, bs[k]);
    m.set_column(n + k, cs[k]);
  }
  if (!(m.transpose() * s * m == symplectic_form(ring, n)))
    throw AlgebraError(ErrorCode::kVerificationFailed, "B^T S B differs from J");
  return BaseChange::from_matrix(std::move(m), "skew_normal_form");
}

SymmetrizeResult symmetrize(const FreeResolution& res, const PolyMatrix& u) {
  const RingPtr& ring = res.ring();
  const std::size_t n = res.n0();
  if (res.n1() != 2 * n || res.n2() != n)
    throw AlgebraError(ErrorCode::kShapeMismatch, "symmetrize needs ranks n, 2n, n");
  if (u.rows() != n || u.cols() != n)
    throw AlgebraError(ErrorCode::kShapeMismatch, "u must be n0 x n0");
  if (ring->field().modulus == 2) throw AlgebraError(ErrorCode::kCharTwo, "1/2 is unavailable");
  if (!res.is_complex()) throw AlgebraError(ErrorCode::kComplexNotZero, "phi*psi is not zero");

  const PolyMatrix psi_t = res.psi.transpose();
  // Well-definedness: u * im(phi) inside im(psi^T); the lift is f2.
  auto f2 = lift_columns(u * res.phi, psi_t);
  if (!f2) throw AlgebraError(ErrorCode::kNotAnIsomorphism, "u does not map im(phi) into im(psi^T)");
  // Surjectivity: e_j = u v_j + psi^T w_j.
  auto vw = lift_columns(PolyMatrix::identity(ring, n), PolyMatrix::hstack(u, psi_t));
  if (!vw) throw AlgebraError(ErrorCode::kNotAnIsomorphism, "u is not surjective onto coker(psi^T)");
  std::vector<std::size_t> top(n), rows_all(n);
  for (std::size_t i = 0; i < n; ++i) top[i] = rows_all[i] = i;
  PolyMatrix v = vw->submatrix(top, rows_all);
  // v must be well defined and a left inverse modulo im(phi).
  Submodule im_phi = res.phi.column_module();
  PolyMatrix vpsi = v * psi_t;
  PolyMatrix vu = v * u - PolyMatrix::identity(ring, n);
  for (std::size_t j = 0; j < vpsi.cols(); ++j)
    if (!im_phi.contains(vpsi.column(j)))
      throw AlgebraError(ErrorCode::kNotAnIsomorphism, "inverse candidate is not well defined");
  for (std::size_t j = 0; j < n; ++j)
    if (!im_phi.contains(vu.column(j)))
      throw AlgebraError(ErrorCode::kNotAnIsomorphism, "u is not injective on coker(phi)");

  auto f3 = lift_columns(*f2 * res.psi, res.phi.transpose());
  if (!f3) throw AlgebraError(ErrorCode::kNotAnIsomorphism, "chain lift f3 does not exist");

  PolyMatrix skew = (*f2 - f2->transpose()).scaled(Poly::constant(ring, ring->inverse(Scalar(2))));
  if (!determinant(skew).is_unit())
    throw AlgebraError(ErrorCode::kSkewDegenerate, "(f2 - f2^T)/2 is not invertible");
  BaseChange b = skew_normal_form(skew);
  PolyMatrix phi_new = res.phi * b.matrix();
  if (!is_symmetric_split(phi_new))
    throw AlgebraError(ErrorCode::kVerificationFailed, "phi*B is not symmetric");

  Submodule im_new = phi_new.column_module();
  for (std::size_t j = 0; j < res.n1(); ++j)
    if (!im_new.contains(res.phi.column(j)) || !im_phi.contains(phi_new.column(j)))
      throw AlgebraError(ErrorCode::kVerificationFailed, "cokernel changed under B");

  std::optional<GradedData> grading;
  SymmetrizeResult out{SymmetricResolution::from_phi(phi_new, grading), u, *f2, *f3, skew, v, b};
  return out;
}

}  // namespace szpiro
