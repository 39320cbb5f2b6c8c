#include <random>

#include "commands.hpp"
#include "oracles/truncated_homology.hpp"
#include "szpiro/error.hpp"
#include "szpiro/fixtures.hpp"
#include "szpiro/polymat.hpp"

namespace szpiro::cli {

namespace {

void record(SuiteResult& s, bool ok, const std::string& what) {
  ++s.cases;
  if (ok) return;
  if (s.failures++ == 0) s.first_failure = what;
}

Poly random_linear(const RingPtr& r, std::mt19937_64& rng, std::uint64_t p) {
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  Poly f = Poly::constant(r, Scalar(mpz_class(std::to_string(dist(rng)))));
  for (std::size_t v = 0; v < r->nvars(); ++v)
    f += Poly::variable(r, v).scaled(Scalar(mpz_class(std::to_string(dist(rng)))));
  return f;
}

/// E^T J' E = J' by plain arithmetic.
bool symplectic_identity(const PolyMatrix& e) {
  const std::size_t n = e.rows() / 2;
  return e.transpose() * symplectic_form(e.ring(), n) * e == symplectic_form(e.ring(), n);
}

bool symmetric_pair(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  PolyMatrix a = m.column_block(0, n), b = m.column_block(n, n);
  return a * b.transpose() == b * a.transpose();
}

}  // namespace

SuiteResult pluecker_suite(std::size_t per_shape, std::uint64_t seed, bool inject_fault) {
  constexpr std::uint64_t p = 2147483647ULL;
  SuiteResult s{"pluecker", 0, 0, ""};
  auto ring = PolyRing::create({"x", "y"}, CoefficientField::prime(p));
  std::mt19937_64 rng(seed);
  struct Shape {
    std::size_t rows, cols, a, b;
  };
  const std::vector<Shape> shapes{{2, 4, 0, 0}, {2, 4, 0, 1}, {2, 4, 1, 0}, {3, 6, 0, 0},
                                  {3, 6, 1, 1}, {3, 5, 2, 0}, {3, 6, 0, 2}};
  for (const auto& sh : shapes) {
    const std::size_t c_count = 2 * sh.rows - sh.a - sh.b;
    std::uniform_int_distribution<std::size_t> col(1, sh.cols);
    for (std::size_t k = 0; k < per_shape; ++k) {
      PolyMatrix m(ring, sh.rows, sh.cols);
      for (std::size_t i = 0; i < sh.rows; ++i)
        for (std::size_t j = 0; j < sh.cols; ++j) m(i, j) = random_linear(ring, rng, p);
      std::vector<std::size_t> a, b, c;
      for (std::size_t i = 0; i < sh.a; ++i) a.push_back(col(rng));
      for (std::size_t i = 0; i < sh.b; ++i) b.push_back(col(rng));
      for (std::size_t i = 0; i < c_count; ++i) c.push_back(col(rng));
      Poly sum = pluecker_sum(m, a, b, c);
      if (inject_fault) sum += Poly::constant(ring, 1);
      record(s, sum.is_zero(),
             "shape " + std::to_string(sh.rows) + "x" + std::to_string(sh.cols) + " sum = " + sum.to_string());
    }
  }
  return s;
}

SuiteResult pluecker_numeric() {
  SuiteResult s{"pluecker_numeric", 0, 0, ""};
  auto ring = fixtures::qxyzw();
  PolyMatrix m = PolyMatrix::parse(ring, {{"1", "2", "3", "5"}, {"7", "11", "13", "17"}});
  auto minor = [&](std::size_t i, std::size_t j) {
    return m(0, i - 1) * m(1, j - 1) - m(0, j - 1) * m(1, i - 1);
  };
  // [12] = -3, [34] = -14, [13] = -8, [24] = -21, [14] = -18, [23] = -13.
  record(s, minor(1, 2) == Poly::constant(ring, -3), "[12]");
  record(s, minor(3, 4) == Poly::constant(ring, -14), "[34]");
  Poly three = minor(1, 2) * minor(3, 4) - minor(1, 3) * minor(2, 4) + minor(1, 4) * minor(2, 3);
  record(s, three.is_zero(), "three-term relation = " + three.to_string());
  record(s, pluecker_sum(m, {}, {}, {1, 2, 3, 4}).is_zero(), "pluecker_sum on the 2 x 4 instance");
  return s;
}

SuiteResult symplectic_suite(std::size_t pairs, std::uint64_t seed, bool inject_fault) {
  SuiteResult s{"symplectic", 0, 0, ""};
  auto ring = PolyRing::create({"x", "y", "z", "w"}, CoefficientField::prime(32003));
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> small(-4, 4);
  auto scalar = [&]() -> Poly {
    switch (rng() % 3) {
      case 0: return Poly::variable(ring, rng() % 4);
      case 1: return Poly::constant(ring, small(rng) == 0 ? 1 : small(rng));
      default: return Poly::variable(ring, rng() % 4) + Poly::constant(ring, small(rng));
    }
  };
  auto linear = [&] {
    Poly f(ring);
    for (std::size_t v = 0; v < 4; ++v) f += Poly::variable(ring, v).scaled(small(rng));
    return f;
  };
  for (std::size_t trial = 0; trial < pairs; ++trial) {
    const std::size_t n = 1 + trial % 3;
    // (S | I) with S symmetric, or a diagonal pair.
    PolyMatrix alpha(ring, n, n), beta(ring, n, n);
    bool diagonal = rng() % 2 == 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (diagonal) {
          if (i == j) {
            alpha(i, i) = linear();
            beta(i, i) = linear();
          }
        } else {
          alpha(i, j) = alpha(j, i) = linear();
          if (i == j) beta(i, i) = Poly::constant(ring, 1);
        }
      }
    PolyMatrix m = PolyMatrix::hstack(alpha, beta);
    const PolyMatrix start = m;
    BaseChange total = BaseChange::identity(ring, 2 * n, true);
    bool ok = symmetric_pair(m);
    const std::size_t ops = 2 + rng() % 4;
    for (std::size_t k = 0; k < ops && ok; ++k) {
      BaseChange op = BaseChange::identity(ring, 2 * n, !inject_fault);
      std::size_t i = 1 + rng() % n, l = 1 + rng() % n;
      if (inject_fault && k == 0) {
        op.column_add(1, 2 * n, Poly::constant(ring, 1));
      } else {
        switch (rng() % 4) {
          case 0:
            if (n > 1 && i != l) {
              op.paired(i, l, scalar());
              break;
            }
            [[fallthrough]];
          case 1: op.alpha_plus_beta(i, scalar()); break;
          case 2: op.beta_plus_alpha(i, scalar()); break;
          default: op.swap_pair(i); break;
        }
      }
      total.then(op);
      m = m * op.matrix();
      ok = symplectic_identity(total.matrix()) && symmetric_pair(m);
    }
    if (ok) ok = m == start * total.matrix();
    if (ok) ok = minors_ideal(m, n).equals(minors_ideal(start, n));
    record(s, ok, "trial " + std::to_string(trial) + " (n = " + std::to_string(n) + ")");
  }
  return s;
}

SuiteResult oracle_equivalence_suite(int max_degree) {
  SuiteResult s{"oracle_equivalence", 0, 0, ""};
  for (const auto& f : fixtures::all()) {
    bool acyclic = check_acyclic_minimal(f.res).acyclic;
    bool exact = oracles::truncated_homology(f.res, max_degree).exact;
    record(s, acyclic == exact,
           f.name + ": checker says " + (acyclic ? "acyclic" : "not acyclic") + ", truncation says " +
               (exact ? "exact" : "not exact"));
  }
  return s;
}

}  // namespace szpiro::cli
