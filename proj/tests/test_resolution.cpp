#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles/truncated_homology.hpp"
#include "szpiro/error.hpp"
#include "szpiro/fixtures.hpp"
#include "szpiro/resolution.hpp"

using namespace szpiro;
namespace fx = szpiro::fixtures;

namespace {

Poly P(const char* s) { return parse_poly(s, fx::qxyzw()); }

PolyMatrix M(const std::vector<std::vector<std::string>>& rows) {
  return PolyMatrix::parse(fx::qxyzw(), rows);
}

Ideal I(std::initializer_list<const char*> gens) {
  std::vector<Poly> g;
  for (auto s : gens) g.push_back(P(s));
  return Ideal(fx::qxyzw(), g);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const AlgebraError& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidInput;
}

bool same_image(const PolyMatrix& a, const PolyMatrix& b) {
  Submodule ia = a.column_module(), ib = b.column_module();
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!ib.contains(a.column(j))) return false;
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (!ia.contains(b.column(j))) return false;
  return true;
}

// Random constant unimodular n x n matrix and its inverse transpose.
std::pair<PolyMatrix, PolyMatrix> random_unimodular(std::size_t n, std::mt19937& rng) {
  auto r = fx::qxyzw();
  PolyMatrix p = PolyMatrix::identity(r, n), q = PolyMatrix::identity(r, n);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (int step = 0; step < 6 && n > 1; ++step) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    Poly k = Poly::constant(r, coef(rng));
    // column a += k column b on p; the inverse transpose gets column b -= k column a.
    for (std::size_t i = 0; i < n; ++i) p(i, a) += k * p(i, b);
    for (std::size_t i = 0; i < n; ++i) q(i, b) -= k * q(i, a);
  }
  return {p, q};
}

}  // namespace

TEST_CASE("check_acyclic_minimal on the fixtures") {
  auto a1 = check_acyclic_minimal(fx::e1().res);
  CHECK(a1.acyclic);
  CHECK(a1.minimal);
  CHECK(a1.codim2);
  CHECK(a1.annihilator.equals(I({"x", "y"})));

  auto a3 = check_acyclic_minimal(fx::e3().res);
  CHECK(a3.acyclic);
  CHECK(a3.minimal);
  CHECK(a3.codim2);
  CHECK(a3.rank_psi == 2);
  CHECK(a3.rank_phi == 2);
  CHECK(a3.depth_psi == 2);

  auto an = check_acyclic_minimal(fx::nonexact().res);
  CHECK_FALSE(an.acyclic);
  CHECK(an.depth_psi == 1);

  auto a2 = check_acyclic_minimal(fx::e2().res);
  CHECK(a2.acyclic);
  CHECK(a2.codim2);
}

TEST_CASE("non-symmetric alpha with stacked psi is not a complex") {
  auto res = FreeResolution::make(M({{"x", "x", "w", "0"}, {"y", "y", "0", "w"}}),
                                  stacked_psi(M({{"x", "x"}, {"y", "y"}}), M({{"w", "0"}, {"0", "w"}})));
  CHECK(code_of([&] { check_acyclic_minimal(res); }) == ErrorCode::kComplexNotZero);
  CHECK(code_of([&] { FreeResolution::make(M({{"x", "y"}}), M({{"x"}})); }) ==
        ErrorCode::kShapeMismatch);
}

TEST_CASE("acyclicity agrees with truncated homology over F_p up to degree 6") {
  for (const auto& f : fx::all()) {
    CAPTURE(f.name);
    auto report = check_acyclic_minimal(f.res);
    auto oracle = oracles::truncated_homology(f.res, 6);
    CHECK(report.acyclic == oracle.exact);
  }
}

TEST_CASE("heart_check examples") {
  auto h1 = heart_check(fx::e1().res.phi);
  CHECK(h1.holds);
  CHECK(h1.depth == kInfiniteDepth);
  CHECK(h1.i_prime.is_unit());

  auto h2 = heart_check(fx::e2().res.phi);
  CHECK(h2.holds);
  CHECK(h2.depth == 4);
  CHECK(h2.i_prime.equals(I({"y", "z", "x", "w"})));

  auto h3 = heart_check(fx::e3().res.phi);
  CHECK_FALSE(h3.holds);
  CHECK(h3.depth == 3);
  CHECK(h3.i_prime.equals(I({"y", "z", "w"})));

  CHECK(code_of([] { heart_check(PolyMatrix(fx::qxyzw(), 0, 2)); }) == ErrorCode::kEmptyMatrix);
}

TEST_CASE("symmetry_check examples") {
  auto s1 = symmetry_check(fx::e1().res);
  REQUIRE(s1.sym);
  CHECK(s1.sym->alpha == M({{"x"}}));
  CHECK(s1.sym->beta == M({{"y"}}));

  auto s3 = symmetry_check(fx::e3().res);
  REQUIRE(s3.sym);
  CHECK(s3.sym->alpha == M({{"x", "y"}, {"y", "z"}}));
  CHECK(s3.sym->beta == M({{"w", "0"}, {"0", "w"}}));

  // alpha beta^T has (1,2) entry 2zw and (2,1) entry 2xy^2.
  auto s2 = symmetry_check(fx::e2().res);
  CHECK_FALSE(s2.sym);
  REQUIRE(s2.entry);
  CHECK(s2.entry->first == 0);
  CHECK(s2.entry->second == 1);
  CHECK(s2.matrix == "alpha*beta^T");
  auto alpha = fx::e2().res.phi.column_block(0, 2), beta = fx::e2().res.phi.column_block(2, 2);
  CHECK((alpha * beta.transpose())(0, 1) == P("2*z*w"));
  CHECK((beta * alpha.transpose())(0, 1) == P("2*x*y^2"));

  CHECK(symmetry_check(fx::e2_symmetric().res).sym);

  auto bad_psi = FreeResolution::make(fx::e3().res.phi, -fx::e3().res.psi);
  auto sp = symmetry_check(bad_psi);
  CHECK_FALSE(sp.sym);
  CHECK(sp.matrix == "psi");

  auto wrong = FreeResolution::make(M({{"x", "y", "z"}}), M({{"0"}, {"0"}, {"0"}}));
  CHECK(code_of([&] { symmetry_check(wrong); }) == ErrorCode::kShapeMismatch);
}

TEST_CASE("every symmetric fixture satisfies both identities") {
  for (const auto& f : fx::all()) {
    auto s = symmetry_check(f.res);
    if (!s.sym) continue;
    CAPTURE(f.name);
    const auto& phi = s.sym->base.phi;
    CHECK((phi * symplectic_form(phi.ring(), s.sym->n) * phi.transpose()).is_zero());
    CHECK((phi * s.sym->base.psi).is_zero());
  }
}

TEST_CASE("koszul_check examples against a depth oracle") {
  struct Case {
    fx::Fixture f;
    bool expect;
  };
  for (const auto& c : {Case{fx::e1(), true}, Case{fx::e3(), true}, Case{fx::diagonal(), true},
                        Case{fx::scrambled(), false}, Case{fx::degenerate(), false}}) {
    CAPTURE(c.f.name);
    auto sym = symmetry_check(c.f.res).sym;
    REQUIRE(sym);
    auto k = koszul_check(*sym);
    CHECK(k.regular_sequence == c.expect);
    CHECK(k.lambda_ok);
    CHECK(k.lambda_unit == 1);
    // Two elements of a polynomial ring form a regular sequence iff they cut out codim 2.
    bool oracle = !k.det_alpha.is_zero() &&
                  dimension_and_depth(Ideal(fx::qxyzw(), {k.det_alpha, k.det_beta})).depth == 2;
    CHECK(oracle == c.expect);
  }
  auto k1 = koszul_check(*symmetry_check(fx::e1().res).sym);
  CHECK(k1.det_alpha == P("x"));
  CHECK(k1.det_beta == P("y"));
  auto k3 = koszul_check(*symmetry_check(fx::e3().res).sym);
  CHECK(k3.det_alpha == P("x*z - y^2"));
  CHECK(k3.det_beta == P("w^2"));

  BaseChange e = BaseChange::identity(fx::qxyzw(), 4);
  e.paired(1, 2, P("1"));
  auto sym = SymmetricResolution::from_phi(apply_base_change(fx::diagonal().res.phi, e));
  CHECK(sym.beta == M({{"z", "x"}, {"y", "w"}}));
  auto kp = koszul_check(sym);
  CHECK(kp.det_beta == P("z*w - x*y"));
  CHECK(kp.regular_sequence);
}

TEST_CASE("koszul verdict is invariant under constant changes diag(P, P^-T)") {
  std::mt19937 rng(2024);
  for (const auto& f : {fx::e3(), fx::diagonal(), fx::scrambled(), fx::degenerate()}) {
    auto sym = *symmetry_check(f.res).sym;
    bool verdict = koszul_check(sym).regular_sequence;
    for (int trial = 0; trial < 20; ++trial) {
      auto [p, q] = random_unimodular(sym.n, rng);
      REQUIRE(p.transpose() * q == PolyMatrix::identity(fx::qxyzw(), sym.n));
      PolyMatrix e = PolyMatrix::vstack(PolyMatrix::hstack(p, PolyMatrix(fx::qxyzw(), sym.n, sym.n)),
                                        PolyMatrix::hstack(PolyMatrix(fx::qxyzw(), sym.n, sym.n), q));
      REQUIRE(is_symplectic(e));
      auto moved = SymmetricResolution::from_phi(sym.base.phi * e);
      CHECK(koszul_check(moved).regular_sequence == verdict);
    }
  }
}

TEST_CASE("a constant symplectic transvection can change the koszul verdict") {
  auto sym = *symmetry_check(fx::scrambled().res).sym;
  CHECK_FALSE(koszul_check(sym).regular_sequence);
  BaseChange e = BaseChange::identity(fx::qxyzw(), 4);
  e.beta_plus_alpha(2, P("1"));
  auto moved = SymmetricResolution::from_phi(apply_base_change(sym.base.phi, e));
  CHECK(koszul_check(moved).regular_sequence);
}

TEST_CASE("dualize") {
  auto d1 = dualize(fx::e1().res);
  CHECK(d1.phi == M({{"-y", "x"}}));
  CHECK(d1.psi == M({{"x"}, {"y"}}));
  CHECK(d1.is_complex());

  auto e3 = fx::e3().res;
  auto dd = dualize(dualize(e3));
  CHECK(dd.phi == e3.phi);
  CHECK(dd.psi == e3.psi);
  CHECK(dd.grading->q_degrees == e3.grading->q_degrees);

  auto d2 = dualize(fx::e2().res);
  CHECK(d2.phi.rows() == 2);
  CHECK(d2.phi.cols() == 4);
  CHECK(d2.psi.rows() == 4);
  CHECK(d2.psi.cols() == 2);
  CHECK(graded_twist_check(d1).homogeneous);
}

TEST_CASE("graded_twist_check examples") {
  auto t1 = graded_twist_check(fx::e1().res);
  CHECK(t1.homogeneous);
  REQUIRE(t1.twist);
  CHECK(*t1.twist == 2);
  auto t3 = graded_twist_check(fx::e3().res);
  REQUIRE(t3.twist);
  CHECK(*t3.twist == 2);
  auto t2 = graded_twist_check(fx::e2_symmetric().res);
  CHECK(t2.homogeneous);
  REQUIRE(t2.twist);
  CHECK(*t2.twist == 6);

  auto inhom = FreeResolution::make(M({{"x + x^2", "y"}}), M({{"-y"}, {"x + x^2"}}),
                                    GradedData{{0}, {1, 1}, {2}, {}, std::nullopt});
  CHECK(code_of([&] { graded_twist_check(inhom); }) == ErrorCode::kInhomogeneousEntry);

  auto shifted = FreeResolution::make(M({{"x", "y"}}), M({{"-y"}, {"x"}}),
                                      GradedData{{0}, {1, 2}, {2}, {}, std::nullopt});
  auto ts = graded_twist_check(shifted);
  CHECK_FALSE(ts.homogeneous);
  CHECK_FALSE(ts.twist);
}

TEST_CASE("inferred twist is the only integer candidate") {
  for (const auto& f : fx::all()) {
    CAPTURE(f.name);
    auto t = graded_twist_check(f.res);
    if (!t.homogeneous || !symmetry_check(f.res).sym) continue;
    const auto& g = *f.res.grading;
    const std::size_t n = f.res.n0();
    int hits = 0;
    for (int c = -50; c <= 50; ++c) {
      bool ok = true;
      for (std::size_t k = 0; k < n; ++k)
        ok = ok && g.r_degrees[k] + g.r_degrees[n + k] == c && g.q_degrees[k] + g.s_degrees[k] == c;
      if (ok) {
        ++hits;
        REQUIRE(t.twist);
        CHECK(*t.twist == c);
      }
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("symmetrize E1 with u = 1") {
  auto e1 = fx::e1();
  auto out = symmetrize(e1.res, *e1.u);
  CHECK(out.f2 == M({{"0", "-1"}, {"1", "0"}}));
  CHECK(out.skew == M({{"0", "-1"}, {"1", "0"}}));
  CHECK(out.normal_form.matrix() == M({{"1", "0"}, {"0", "-1"}}));
  CHECK(out.sym.alpha == M({{"x"}}));
  CHECK(out.sym.beta == M({{"-y"}}));
  CHECK(symmetry_check(out.sym.base).sym);
  CHECK(same_image(out.sym.base.phi, e1.res.phi));
}

TEST_CASE("symmetrize E3 and the naive cusp presentation") {
  auto e3 = fx::e3();
  auto o3 = symmetrize(e3.res, *e3.u);
  CHECK(o3.f2 == M({{"0", "0", "-1", "0"}, {"0", "0", "0", "-1"}, {"1", "0", "0", "0"}, {"0", "1", "0", "0"}}));
  CHECK(o3.sym.alpha == e3.res.phi.column_block(0, 2));
  CHECK(o3.sym.beta == -e3.res.phi.column_block(2, 2));

  auto e2 = fx::e2();
  REQUIRE_FALSE(symmetry_check(e2.res).sym);
  auto o2 = symmetrize(e2.res, PolyMatrix::identity(fx::qxyzw(), 2));
  CHECK(symmetry_check(o2.sym.base).sym);
  CHECK(same_image(o2.sym.base.phi, e2.res.phi));
  CHECK(check_acyclic_minimal(o2.sym.base).acyclic);
}

TEST_CASE("symmetrize rejects maps that are not isomorphisms") {
  auto e1 = fx::e1();
  CHECK(code_of([&] { symmetrize(e1.res, M({{"0"}})); }) == ErrorCode::kNotAnIsomorphism);
  CHECK(code_of([&] { symmetrize(e1.res, M({{"z"}})); }) == ErrorCode::kNotAnIsomorphism);
}

TEST_CASE("skew_normal_form examples") {
  auto r = fx::qxyzw();
  auto j = symplectic_form(r, 2);
  CHECK(skew_normal_form(j).matrix() == PolyMatrix::identity(r, 4));
  auto b = skew_normal_form(M({{"0", "2"}, {"-2", "0"}}));
  CHECK(b.matrix() == M({{"1", "0"}, {"0", "1/2"}}));

  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-4, 4), idx(0, 3);
  for (int trial = 0; trial < 25; ++trial) {
    PolyMatrix p = PolyMatrix::identity(r, 4);
    for (int s = 0; s < 8; ++s) {
      int a = idx(rng), c = idx(rng);
      if (a == c) continue;
      Poly k = Poly::constant(r, coef(rng));
      for (std::size_t row = 0; row < 4; ++row) p(row, a) += k * p(row, c);
    }
    PolyMatrix s = p.transpose() * j * p;
    REQUIRE(determinant(s) == P("1"));
    auto bc = skew_normal_form(s);
    CHECK(bc.matrix().transpose() * s * bc.matrix() == j);
  }
}

TEST_CASE("skew_normal_form errors") {
  CHECK(code_of([] { skew_normal_form(M({{"0", "1"}, {"1", "0"}})); }) == ErrorCode::kNotSkew);
  CHECK(code_of([] { skew_normal_form(M({{"0", "1", "0"}, {"-1", "0", "0"}, {"0", "0", "0"}})); }) ==
        ErrorCode::kNotSkew);
  CHECK(code_of([] { skew_normal_form(M({{"0", "x"}, {"-x", "0"}})); }) == ErrorCode::kNotUnimodular);
  // Pfaffian (1+x)(1-x) + x*x = 1 but no entry is a unit.
  auto s = M({{"0", "1 + x", "x", "0"},
              {"-1 - x", "0", "0", "-x"},
              {"-x", "0", "0", "1 - x"},
              {"0", "x", "-1 + x", "0"}});
  REQUIRE(determinant(s) == P("1"));
  CHECK(code_of([&] { skew_normal_form(s); }) == ErrorCode::kNoUnitPivot);
}
