#include "szpiro/fixtures.hpp"

namespace szpiro::fixtures {

namespace {

PolyMatrix M(const RingPtr& r, const std::vector<std::vector<std::string>>& rows) {
  return PolyMatrix::parse(r, rows);
}

Fixture symmetric(std::string name, std::string summary, const PolyMatrix& alpha,
                  const PolyMatrix& beta, std::optional<GradedData> g) {
  auto sym = SymmetricResolution::from_pair(alpha, beta, std::move(g));
  return {std::move(name), std::move(summary), sym.base,
          PolyMatrix::identity(alpha.ring(), alpha.rows())};
}

}  // namespace

RingPtr qxyzw() {
  static const RingPtr ring = PolyRing::create({"x", "y", "z", "w"});
  return ring;
}

Fixture e1() {
  auto r = qxyzw();
  GradedData g{{0}, {1, 1}, {2}, {}, std::nullopt};
  return {"e1", "Koszul complex of (x, y)",
          FreeResolution::make(M(r, {{"x", "y"}}), M(r, {{"-y"}, {"x"}}), g),
          PolyMatrix::identity(r, 1)};
}

Fixture e2() {
  auto r = qxyzw();
  GradedData g{{0, 1}, {2, 3, 4, 3}, {6, 5}, {1, 2, 3, 2}, std::nullopt};
  return {"e2", "cusp surface, naive column order",
          FreeResolution::make(M(r, {{"w", "z", "-y^2", "-x*y"}, {"-x", "-y", "z", "w"}}),
                               M(r, {{"-y^2", "z"}, {"x*y", "-w"}, {"-w", "x"}, {"z", "-y"}}), g),
          std::nullopt};
}

Fixture e2_symmetric() {
  auto r = qxyzw();
  GradedData g{{0, 1}, {4, 3, 2, 3}, {6, 5}, {1, 2, 3, 2}, std::nullopt};
  return symmetric("e2s", "cusp surface, symmetric column order",
                   M(r, {{"-y^2", "z"}, {"z", "-y"}}), M(r, {{"w", "-x*y"}, {"-x", "w"}}), g);
}

Fixture e3() {
  auto r = qxyzw();
  GradedData g{{0, 0}, {1, 1, 1, 1}, {2, 2}, {}, std::nullopt};
  return symmetric("e3", "symmetric alpha with scalar beta", M(r, {{"x", "y"}, {"y", "z"}}),
                   M(r, {{"w", "0"}, {"0", "w"}}), g);
}

Fixture nonexact() {
  auto r = qxyzw();
  return {"nonexact", "complex with a depth-one rank ideal",
          FreeResolution::make(M(r, {{"x", "x", "w", "0"}, {"y", "y", "0", "w"}}),
                               M(r, {{"w", "-w"}, {"-w", "0"}, {"0", "x"}, {"0", "y"}}),
                               GradedData{{0, 0}, {1, 1, 1, 1}, {2, 2}, {}, std::nullopt}),
          std::nullopt};
}

Fixture diagonal() {
  auto r = qxyzw();
  GradedData g{{0, 0}, {1, 1, 1, 1}, {2, 2}, {}, std::nullopt};
  return symmetric("diag", "diagonal alpha and beta", M(r, {{"x", "0"}, {"0", "y"}}),
                   M(r, {{"z", "0"}, {"0", "w"}}), g);
}

Fixture degenerate() {
  auto r = qxyzw();
  return symmetric("degenerate", "singular alpha", M(r, {{"x", "x"}, {"x", "x"}}),
                   M(r, {{"w", "0"}, {"0", "w"}}),
                   GradedData{{0, 0}, {1, 1, 1, 1}, {2, 2}, {}, std::nullopt});
}

Fixture scrambled() {
  auto r = qxyzw();
  return symmetric("scrambled", "det beta shares a factor with det alpha",
                   M(r, {{"w", "y"}, {"0", "z"}}), M(r, {{"-x", "0"}, {"-y", "w"}}),
                   GradedData{{0, 0}, {1, 1, 1, 1}, {2, 2}, {}, std::nullopt});
}

PolyMatrix lemma_matrix() { return M(qxyzw(), {{"x", "0", "0", "z"}, {"y", "0", "w", "0"}}); }

std::vector<Fixture> all() {
  return {e1(), e2(), e2_symmetric(), e3(), nonexact(), diagonal(), degenerate(), scrambled()};
}

std::optional<Fixture> by_name(const std::string& name) {
  for (auto& f : all())
    if (f.name == name) return f;
  return std::nullopt;
}

}  // namespace szpiro::fixtures
