#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include <nlohmann/json.hpp>

#include "szpiro/error.hpp"
#include "szpiro/fixtures.hpp"
#include "szpiro/regularizer.hpp"

using namespace szpiro;
namespace fx = szpiro::fixtures;

namespace {

Poly P(const char* s) { return parse_poly(s, fx::qxyzw()); }

PolyMatrix M(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<std::string>> r;
  for (auto row : rows) r.emplace_back(row.begin(), row.end());
  return PolyMatrix::parse(fx::qxyzw(), r);
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

bool same_up_to_unit(const Poly& a, const Poly& b) { return a.monic() == b.monic(); }

SymmetricResolution sym_of(const fx::Fixture& f) { return SymmetricResolution::from_phi(f.res.phi); }

SymmetricResolution sym_pair(const PolyMatrix& alpha, const PolyMatrix& beta) {
  return SymmetricResolution::from_pair(alpha, beta);
}

// Checks every invariant a report must satisfy, recomputing from the input matrix.
void check_report(const PolyMatrix& input, const RegularizeReport& r) {
  const std::size_t n = input.rows();
  CHECK(is_symplectic(r.base_change.matrix()));
  PolyMatrix out = input * r.base_change.matrix();
  CHECK(out == r.matrix);
  CHECK(is_symmetric_split(out));
  CHECK(minors_ideal(out, n).equals(minors_ideal(input, n)));
  CHECK(determinant(out.column_block(0, n)) == r.det_alpha);
  CHECK(determinant(out.column_block(n, n)) == r.det_beta);
  CHECK(r.verified);
  CHECK_FALSE(r.det_alpha.is_zero());
  // Coprimality by a second route: (det alpha) : det beta = (det alpha).
  Ideal a(r.det_alpha.ring(), {r.det_alpha});
  CHECK(quotient(a, r.det_beta).equals(a));
}

std::string log_text(const RegularizeReport& r) {
  std::string s;
  for (const auto& st : r.steps) {
    s += st.kind + "|" + std::to_string(st.phase) + "|" + st.oracle + "|";
    for (auto i : st.indices) s += std::to_string(i) + ",";
    s += "|" + st.scalar.to_string() + "|" + st.minor_before + "=" + st.value_before.to_string() + "|" +
         st.minor_after + "=" + st.value_after.to_string() + "\n";
  }
  return s;
}

}  // namespace

TEST_CASE("default oracles") {
  auto r = fx::qxyzw();
  auto phase1 = default_oracles(std::nullopt, std::nullopt, r);
  REQUIRE(phase1.size() == 1);
  CHECK(phase1[0].membership(P("0")));
  CHECK_FALSE(phase1[0].membership(P("1")));
  CHECK_FALSE(phase1[0].membership(P("x*y")));

  auto sq = default_oracles(P("w^2"));
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].block == P("w"));
  CHECK(sq[0].membership(P("0")));
  CHECK_FALSE(sq[0].membership(P("1")));
  CHECK(sq[0].membership(P("x*w+w^3")));
  CHECK_FALSE(sq[0].membership(P("x+w")));
  // Primality spot checks on products.
  for (const char* f : {"x+w", "y^2-z", "x*y+1"})
    for (const char* g : {"x-2*w", "z", "y*w+x"}) {
      bool prod = sq[0].membership(P(f) * P(g));
      CHECK(prod == (sq[0].membership(P(f)) || sq[0].membership(P(g))));
    }

  auto two = default_oracles(P("x*(y^3-z^2)"), std::vector<Poly>{P("x"), P("y^3-z^2")});
  REQUIRE(two.size() == 2);
  CHECK(coprime(two[0].block, two[1].block));
  CHECK(two[0].membership(P("x*z")));
  CHECK_FALSE(two[0].membership(P("y^3-z^2")));
  CHECK(two[1].membership(P("y^3-z^2")));

  CHECK(code_of([] { default_oracles(P("x*y"), std::vector<Poly>{P("x"), P("z")}); }) ==
        ErrorCode::kHintProductMismatch);
  CHECK(code_of([] { default_oracles(P("x^2"), std::vector<Poly>{P("x"), P("x")}); }) ==
        ErrorCode::kHintsNotCoprime);
}

TEST_CASE("find_good_minor examples") {
  auto zero = zero_oracle(fx::qxyzw());
  auto m = M({{"x", "x", "w", "0"}, {"y", "y", "0", "w"}});
  auto g = find_good_minor(m, zero, false);
  CHECK(g.minor == MinorIndex{{1}, {2}});
  CHECK(g.value == P("x*w"));
  CHECK(g.steps.empty());
  CHECK(g.change.is_identity());

  auto one = find_good_minor(M({{"x", "y"}}), zero, true);
  CHECK(one.minor == MinorIndex{{1}, {}});
  CHECK(one.steps.empty());

  CHECK(code_of([&] { find_good_minor(M({{"x", "0", "y", "0"}, {"0", "0", "0", "0"}}), zero, false); }) ==
        ErrorCode::kNoMinorOutsideIdeal);
}

TEST_CASE("find_good_minor descends through a paired operation") {
  // Every good minor vanishes; only [1;1] = x y does not.
  auto zero = zero_oracle(fx::qxyzw());
  auto m = M({{"x", "0", "0", "0"}, {"0", "0", "y", "0"}});
  RegularizeOptions opts;
  opts.check_pluecker = true;
  auto g = find_good_minor(m, zero, false, Poly(), opts);
  REQUIRE(g.steps.size() == 1);
  CHECK(g.steps[0].kind == "paired");
  CHECK(g.steps[0].indices == std::vector<std::size_t>{1, 2});
  CHECK(g.steps[0].minor_before == MinorIndex{{1}, {1}}.to_string());
  CHECK(g.minor.good());
  CHECK_FALSE(g.value.is_zero());
  // Direct recomputation on M * E.
  PolyMatrix out = m * g.change.matrix();
  CHECK(split_minor(out, g.minor) == g.value);
  CHECK(is_symplectic(g.change.matrix()));
}

TEST_CASE("regularize_tau1 on the lemma example") {
  auto zero = zero_oracle(fx::qxyzw());
  auto m = fx::lemma_matrix();
  CHECK(full_minor(m, {1, 2}).is_zero());
  auto r = regularize_tau1(m, {zero});
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].kind == "column_add");
  CHECK(r.steps[0].selection == std::vector<std::size_t>{3, 1});
  CHECK(r.steps[0].indices == std::vector<std::size_t>{2, 3});
  CHECK(r.steps[0].scalar == P("1"));
  CHECK(r.det_alpha == P("x*w"));
  CHECK(r.verified);
  // Exhaustive minor enumeration: [1,3] is the first nonzero minor in colex order.
  CHECK(full_minor(m, {1, 3}) == P("x*w"));
  CHECK(determinant((m * r.base_change.matrix()).column_block(0, 2)) == P("x*w"));
  CHECK(minors_ideal(r.matrix, 2).equals(minors_ideal(m, 2)));

  auto already = regularize_tau1(M({{"x", "0", "z", "0"}, {"0", "y", "0", "w"}}), {zero});
  CHECK(already.steps.empty());
  CHECK(already.base_change.is_identity());

  CHECK(code_of([&] { regularize_tau1(M({{"x", "y", "z", "w"}, {"0", "0", "0", "0"}}), {zero}); }) ==
        ErrorCode::kNoMinorOutsideIdeal);
}

TEST_CASE("regularize_tau1 with two block oracles") {
  // det tau_1 = x z lies in both (x) and (z).
  auto m = M({{"x", "0", "y", "0"}, {"0", "z", "0", "w"}});
  std::vector<PrimeOracle> o{block_oracle(P("x"), "x"), block_oracle(P("z"), "z")};
  auto r = regularize_tau1(m, o);
  CHECK(r.verified);
  CHECK(coprime(r.det_alpha, P("x*z")));
  CHECK(minors_ideal(r.matrix, 2).equals(minors_ideal(m, 2)));
}

TEST_CASE("regularize_symmetric identity cases") {
  auto d = sym_of(fx::diagonal());
  auto r = regularize_symmetric(d);
  CHECK(r.base_change.is_identity());
  CHECK(r.steps.empty());
  CHECK(r.gcd.is_unit());
  check_report(d.base.phi, r);

  auto paired = sym_pair(M({{"x", "0"}, {"0", "y"}}), M({{"z", "x"}, {"y", "w"}}));
  auto rp = regularize_symmetric(paired);
  CHECK(rp.base_change.is_identity());
  CHECK(rp.det_beta == P("z*w-x*y"));
  check_report(paired.base.phi, rp);

  for (const char* name : {"e1", "e2s", "e3"}) {
    CAPTURE(name);
    auto s = sym_of(*fx::by_name(name));
    auto rs = regularize_symmetric(s);
    CHECK(rs.base_change.is_identity());
    check_report(s.base.phi, rs);
  }
}

TEST_CASE("regularize_symmetric on the scrambled pair") {
  auto s = sym_of(fx::scrambled());
  CHECK(determinant(s.alpha) == P("w*z"));
  CHECK(determinant(s.beta) == P("-x*w"));
  auto r = regularize_symmetric(s);
  REQUIRE_FALSE(r.steps.empty());
  CHECK(r.steps.back().kind == "beta_plus_alpha");
  CHECK(r.steps.back().selection == std::vector<std::size_t>{2, 3});
  CHECK(r.steps.back().indices == std::vector<std::size_t>{2});
  CHECK(r.det_alpha == P("w*z"));
  CHECK(same_up_to_unit(r.det_beta, P("y^2-x*w-x*z")));
  check_report(s.base.phi, r);
}

TEST_CASE("phase 1 repairs a singular alpha") {
  auto s = sym_pair(M({{"0", "0"}, {"0", "0"}}), M({{"1", "0"}, {"0", "1"}}));
  auto r = regularize_symmetric(s);
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].kind == "alpha_plus_beta");
  CHECK(r.steps[0].selection == std::vector<std::size_t>{4, 3});
  CHECK(r.det_alpha == P("1"));
  check_report(s.base.phi, r);

  auto deg = sym_of(fx::degenerate());
  CHECK(determinant(deg.alpha).is_zero());
}

TEST_CASE("phase 2 uses zeta from processed blocks") {
  auto s = sym_pair(M({{"x", "0"}, {"0", "y^3-z^2"}}), M({{"z", "0"}, {"0", "x"}}));
  auto hinted = regularize_symmetric(s, std::vector<Poly>{P("x"), P("y^3-z^2")});
  REQUIRE(hinted.steps.size() == 1);
  CHECK(hinted.steps[0].scalar == P("y^3-z^2"));
  CHECK(hinted.refinements == 0);
  check_report(s.base.phi, hinted);

  // The single square-free block x (y^3 - z^2) is reducible; one refinement recovers the split.
  auto plain = regularize_symmetric(s);
  CHECK(plain.refinements == 1);
  check_report(s.base.phi, plain);
}

TEST_CASE("degenerate pair fails with gcd w") {
  auto s = sym_of(fx::degenerate());
  try {
    regularize_symmetric(s);
    FAIL("expected failure");
  } catch (const AlgebraError& e) {
    CHECK(e.code() == ErrorCode::kVerificationFailed);
    CHECK(e.detail().at("gcd").get<std::string>() == "w");
  }
  // Minor enumeration: every 2-minor of the phase-1 output is divisible by w.
  auto zero = zero_oracle(fx::qxyzw());
  auto after = regularize_tau1(s.base.phi, {zero});
  for (const auto& v : minors(after.matrix, 2)) CHECK(try_divide(v, P("w")).has_value());
}

TEST_CASE("step log is deterministic and Pluecker-checked") {
  RegularizeOptions opts;
  opts.check_pluecker = true;
  auto s = sym_of(fx::scrambled());
  auto a = regularize_symmetric(s, std::nullopt, opts);
  auto b = regularize_symmetric(s, std::nullopt, opts);
  CHECK(log_text(a) == log_text(b));
  CHECK(a.base_change.matrix() == b.base_change.matrix());
}

TEST_CASE("random symmetric pairs regularize with symplectic base changes") {
  auto r = fx::qxyzw();
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto linear = [&] {
    Poly p(r);
    for (std::size_t v = 0; v < 4; ++v) p += Poly::variable(r, v).scaled(coef(rng));
    if (p.is_zero()) p = Poly::variable(r, 0);
    return p;
  };
  auto scalar = [&] {
    int kind = static_cast<int>(rng() % 3);
    if (kind == 0) return Poly::constant(r, coef(rng) == 0 ? 1 : coef(rng) + 4);
    if (kind == 1) return Poly::variable(r, rng() % 4);
    return Poly::constant(r, 1);
  };
  RegularizeOptions opts;
  opts.check_pluecker = true;
  int verified = 0;
  for (int trial = 0; trial < 100; ++trial) {
    CAPTURE(trial);
    PolyMatrix alpha(r, 2, 2), beta(r, 2, 2);
    alpha(0, 0) = linear();
    alpha(1, 1) = linear();
    beta(0, 0) = linear();
    beta(1, 1) = linear();
    PolyMatrix m = PolyMatrix::hstack(alpha, beta);
    BaseChange e = BaseChange::identity(r, 4, true);
    for (int k = 0; k < 3; ++k) {
      std::size_t i = 1 + rng() % 2;
      switch (rng() % 4) {
        case 0: e.paired(1, 2, scalar()); break;
        case 1: e.alpha_plus_beta(i, scalar()); break;
        case 2: e.beta_plus_alpha(i, scalar()); break;
        default: e.swap_pair(i); break;
      }
    }
    m = apply_base_change(m, e);
    REQUIRE(is_symmetric_split(m));
    auto s = SymmetricResolution::from_phi(m);
    auto rep = regularize_symmetric(s, std::nullopt, opts);
    check_report(m, rep);
    if (rep.verified) ++verified;
  }
  CHECK(verified == 100);
}
