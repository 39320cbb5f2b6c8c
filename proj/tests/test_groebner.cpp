#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "szpiro/error.hpp"
#include "szpiro/groebner.hpp"

using namespace szpiro;

namespace {

RingPtr qxyzw(MonomialOrder order = MonomialOrder::kGrevlex) {
  return PolyRing::create({"x", "y", "z", "w"}, CoefficientField::rationals(), order);
}

Poly P(const char* s, const RingPtr& r) { return parse_poly(s, r); }

Ideal I(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Poly> g;
  for (auto s : gens) g.push_back(P(s, r));
  return Ideal(r, g);
}

Submodule columns(const RingPtr& r, std::vector<std::vector<const char*>> rows) {
  std::vector<Vec> cols(rows[0].size(), Vec(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) cols[j][i] = P(rows[i][j], r);
  return Submodule(r, rows.size(), cols);
}

// Ring map into k[s,t] given by images of x, y, z, w.
Poly substitute(const Poly& f, const std::vector<Poly>& images) {
  Poly out(images[0].ring());
  for (const auto& t : f.terms()) {
    Poly m = Poly::constant(images[0].ring(), t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i) m *= images[i].pow(static_cast<unsigned>(t.mono[i]));
    out += m;
  }
  return out;
}

std::vector<Poly> cusp_images() {
  static auto st = PolyRing::create({"s", "t"});
  return {parse_poly("s", st), parse_poly("t^2", st), parse_poly("t^3", st), parse_poly("s*t", st)};
}

Submodule cusp_phi(const RingPtr& r) {
  return columns(r, {{"w", "z", "-y^2", "-x*y"}, {"-x", "-y", "z", "w"}});
}

bool witness_holds(const Vec& v, const Submodule& m, const DivisionWitness& w) {
  Vec acc = w.remainder;
  const auto& b = m.basis();
  for (std::size_t k = 0; k < b.size(); ++k) acc = acc + w.coefficients[k] * b[k];
  return acc == v;
}

}  // namespace

TEST_CASE("groebner_basis examples") {
  auto r = qxyzw();
  auto b1 = I(r, {"x^2", "x*y"}).basis();
  CHECK(b1 == std::vector<Poly>{P("x^2", r), P("x*y", r)});
  auto b2 = I(r, {"x", "x + y"}).basis();
  CHECK(b2 == std::vector<Poly>{P("x", r), P("y", r)});
  CHECK(I(r, {"x", "1 + x"}).is_unit());
  CHECK(I(r, {}).basis().empty());
}

TEST_CASE("module basis decides membership of (y*w, 0)") {
  auto r = qxyzw();
  Submodule m = columns(r, {{"x", "y", "w", "0"}, {"y", "z", "0", "w"}});
  Vec v{P("y*w", r), Poly(r)};
  auto wit = m.normal_form_with_witness(v);
  CHECK(is_zero(wit.remainder));
  CHECK(witness_holds(v, m, wit));
  // (y, 0) is not a combination: degree-one part must come from the first two columns.
  CHECK_FALSE(m.contains(Vec{P("y", r), Poly(r)}));
  // x*z - y^2 kills e1 modulo the columns of the symmetric block.
  CHECK(m.contains(Vec{P("x*z*w - y^2*w", r), Poly(r)}));
}

TEST_CASE("normal_form_with_witness examples") {
  auto r = qxyzw();
  Ideal x2 = I(r, {"x^2"});
  auto w = x2.as_module().normal_form_with_witness(Vec{P("x^2*y", r)});
  CHECK(w.remainder[0].is_zero());
  REQUIRE(w.coefficients.size() == 1);
  CHECK(w.coefficients[0] == P("y", r));

  Submodule m(r, 2, {Vec{P("x", r), P("y", r)}});
  Vec v{P("x", r), Poly(r)};
  auto w2 = m.normal_form_with_witness(v);
  CHECK_FALSE(is_zero(w2.remainder));
  CHECK(witness_holds(v, m, w2));
  CHECK_THROWS_AS(m.normal_form_with_witness(Vec{P("x", r)}), AlgebraError);
}

TEST_CASE("cusp combinations lie in the column module") {
  auto r = qxyzw();
  Submodule m = cusp_phi(r);
  // z*(-y^2, z) + y^2*(z, -y) = (0, z^2 - y^3)
  Vec v{Poly(r), P("z^2 - y^3", r)};
  auto wit = m.normal_form_with_witness(v);
  CHECK(is_zero(wit.remainder));
  CHECK(witness_holds(v, m, wit));
  auto lift = m.lift(v);
  REQUIRE(lift.has_value());
  Vec acc = zero_vec(r, 2);
  for (std::size_t k = 0; k < m.generators().size(); ++k) acc = acc + (*lift)[k] * m.generators()[k];
  CHECK(acc == v);
  CHECK_FALSE(m.lift(Vec{P("1", r), Poly(r)}).has_value());
}

TEST_CASE("dimension_and_depth examples") {
  auto r = qxyzw();
  auto a = dimension_and_depth(I(r, {"x", "y"}));
  CHECK(a.dim == 2);
  CHECK(a.depth == 2);
  auto b = dimension_and_depth(I(r, {"x", "y", "z", "w"}));
  CHECK(b.dim == 0);
  CHECK(b.depth == 4);
  auto c = dimension_and_depth(Ideal::unit(r));
  CHECK(c.depth == kInfiniteDepth);
  CHECK(c.depth > 1000);
  auto d = dimension_and_depth(Ideal(r));
  CHECK(d.dim == 4);
  CHECK(d.depth == 0);
}

TEST_CASE("dimension agrees between grevlex and lex") {
  auto g = qxyzw();
  auto l = qxyzw(MonomialOrder::kLex);
  std::vector<std::vector<const char*>> cases = {
      {"x*z - y^2", "y*w", "x*w", "z*w", "w^2"},
      {"y", "z", "w"},
      {"x*y", "z*w - x*y"},
      {"x*w - y*z", "x*z - y^2", "y*w - z^2"},
      {"y^3 - z^2", "x*z - y*w"},
  };
  for (const auto& gens : cases) {
    std::vector<Poly> pg, pl;
    for (auto s : gens) {
      pg.push_back(P(s, g));
      pl.push_back(P(s, l));
    }
    auto dg = dimension_and_depth(Ideal(g, pg));
    auto dl = dimension_and_depth(Ideal(l, pl));
    CHECK(dg.dim == dl.dim);
  }
}

TEST_CASE("quotient examples") {
  auto r = qxyzw();
  CHECK(quotient(I(r, {"x*y"}), P("x", r)).equals(I(r, {"y"})));
  CHECK(quotient(I(r, {"x^2", "x*y"}), P("x", r)).equals(I(r, {"x", "y"})));
  Ideal j = I(r, {"x^2", "y*z"});
  CHECK(quotient(j, P("1", r)).equals(j));
  Submodule m = cusp_phi(r);
  CHECK(quotient(m, P("1", r)).equals(m));
  CHECK_THROWS_AS(quotient(j, Poly(r)), AlgebraError);
}

TEST_CASE("quotient elimination oracle: ((x^2, x*y) : x) by brute force") {
  auto r = qxyzw();
  Ideal j = I(r, {"x^2", "x*y"});
  Ideal q = quotient(j, P("x", r));
  // Every generator times x lands in J, and x, y, are exactly what is needed.
  for (const auto& g : q.generators()) CHECK(j.contains(P("x", r) * g));
  CHECK_FALSE(q.contains(P("z", r)));
  CHECK_FALSE(q.is_unit());
}

TEST_CASE("J is contained in (J : f) with equality exactly for nonzerodivisors") {
  auto r = qxyzw();
  Ideal j = I(r, {"x*y", "x*z"});
  Ideal q1 = quotient(j, P("w", r));
  CHECK(q1.contains(j));
  CHECK(j.contains(q1));
  Ideal q2 = quotient(j, P("x", r));
  CHECK(q2.contains(j));
  CHECK_FALSE(j.contains(q2));
  CHECK(is_nonzerodivisor(P("w", r), j.as_module()));
  CHECK_FALSE(is_nonzerodivisor(P("y", r), j.as_module()));
}

TEST_CASE("module quotient") {
  auto r = qxyzw();
  // im = <(x, 0), (0, x*y)>; (im : x) = <(1, 0), (0, y)>
  Submodule m(r, 2, {Vec{P("x", r), Poly(r)}, Vec{Poly(r), P("x*y", r)}});
  Submodule q = quotient(m, P("x", r));
  Submodule expect(r, 2, {Vec{P("1", r), Poly(r)}, Vec{Poly(r), P("y", r)}});
  CHECK(q.equals(expect));
  // The cusp cokernel is torsion free in x.
  Submodule c = cusp_phi(r);
  CHECK(quotient(c, P("x", r)).equals(c));
}

TEST_CASE("annihilator_of_cokernel examples") {
  auto r = qxyzw();
  Submodule kos = columns(r, {{"x", "y"}});
  CHECK(annihilator_of_cokernel(kos).equals(I(r, {"x", "y"})));
  Submodule id = columns(r, {{"1", "0"}, {"0", "1"}});
  CHECK(annihilator_of_cokernel(id).is_unit());
}

TEST_CASE("cusp annihilator vanishes under the parametrisation") {
  auto r = qxyzw();
  Submodule m = cusp_phi(r);
  Ideal ann = annihilator_of_cokernel(m);
  CHECK_FALSE(ann.is_zero());
  const auto images = cusp_images();
  for (const auto& g : ann.generators()) CHECK(substitute(g, images).is_zero());
  // Fitt0 is inside Ann: all 2x2 minors of the presentation.
  const auto& cols = m.generators();
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t b = a + 1; b < cols.size(); ++b)
      CHECK(ann.contains(cols[a][0] * cols[b][1] - cols[b][0] * cols[a][1]));
  // Ann kills both generators of the cokernel.
  for (const auto& g : ann.generators()) {
    CHECK(m.contains(Vec{g, Poly(r)}));
    CHECK(m.contains(Vec{Poly(r), g}));
  }
  CHECK(dimension_and_depth(ann).depth == 2);
}

TEST_CASE("basis independent of generator order") {
  auto r = qxyzw();
  std::vector<Poly> gens{P("x*w - y*z", r), P("x*z - y^2", r), P("y*w - z^2", r), P("x^3 - w", r)};
  auto ref = Ideal(r, gens).basis();
  std::mt19937 rng(7);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(gens.begin(), gens.end(), rng);
    CHECK(Ideal(r, gens).basis() == ref);
  }
}

TEST_CASE("S-pair budget raises ResourceLimit") {
  auto r = with_spair_budget(qxyzw(), 1);
  Ideal j(r, {P("x*w - y*z", r), P("x*z - y^2", r), P("y*w - z^2", r)});
  try {
    j.basis();
    FAIL("expected ResourceLimit");
  } catch (const AlgebraError& e) {
    CHECK(e.code() == ErrorCode::kResourceLimit);
  }
}

TEST_CASE("concurrent readers see one basis") {
  auto r = qxyzw();
  Ideal j(r, {P("x*w - y*z", r), P("x*z - y^2", r), P("y*w - z^2", r)});
  std::vector<std::vector<Poly>> seen(4);
  std::vector<std::thread> ts;
  for (int i = 0; i < 4; ++i) ts.emplace_back([&, i] { seen[i] = j.basis(); });
  for (auto& t : ts) t.join();
  for (int i = 1; i < 4; ++i) CHECK(seen[i] == seen[0]);
}

TEST_CASE("intersection") {
  auto r = qxyzw();
  CHECK(intersect(I(r, {"x"}), I(r, {"y"})).equals(I(r, {"x*y"})));
  CHECK(intersect(I(r, {"x", "y"}), I(r, {"x", "z"})).equals(I(r, {"x", "y*z"})));
}
