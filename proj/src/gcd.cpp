#include <algorithm>

#include "szpiro/error.hpp"
#include "szpiro/poly.hpp"

namespace szpiro {

namespace {

// Largest variable index occurring in f, or -1 for constants.
int top_variable(const Poly& f) {
  int top = -1;
  for (const auto& t : f.terms())
    for (int i = static_cast<int>(t.mono.size()) - 1; i > top; --i)
      if (t.mono[static_cast<std::size_t>(i)] != 0) {
        top = i;
        break;
      }
  return top;
}

Poly gcd_rec(const Poly& f, const Poly& g);

Poly content_in(const Poly& f, std::size_t var) {
  Poly c;
  for (const auto& coeff : f.coefficients_in(var)) {
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? coeff.monic() : gcd_rec(c, coeff);
    if (c.is_unit()) break;
  }
  return c;
}

Poly primitive_part(const Poly& f, std::size_t var) {
  if (f.is_zero()) return f;
  return exact_divide(f, content_in(f, var)).monic();
}

Poly leading_coeff_in(const Poly& f, std::size_t var) { return f.coefficients_in(var).back(); }

// Pseudo-remainder of a by b with respect to var.
Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Poly lb = leading_coeff_in(b, var);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    const int da = a.degree_in(var);
    std::vector<int> e(a.ring()->nvars(), 0);
    e[var] = da - db;
    Poly shift = Poly::term(a.ring(), Monomial(std::move(e)), 1);
    a = lb * a - leading_coeff_in(a, var) * shift * b;
  }
  return a;
}

Poly gcd_rec(const Poly& f, const Poly& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  const RingPtr& ring = f.ring() ? f.ring() : g.ring();
  if (f.is_constant() || g.is_constant()) return Poly::constant(ring, 1);
  const int vf = top_variable(f);
  const int vg = top_variable(g);
  if (vf != vg) {
    if (vf > vg) return gcd_rec(content_in(f, static_cast<std::size_t>(vf)), g);
    return gcd_rec(f, content_in(g, static_cast<std::size_t>(vg)));
  }
  const auto var = static_cast<std::size_t>(vf);
  const Poly cf = content_in(f, var);
  const Poly cg = content_in(g, var);
  const Poly c = gcd_rec(cf, cg);
  Poly a = exact_divide(f, cf).monic();
  Poly b = exact_divide(g, cg).monic();
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (!b.is_zero() && b.degree_in(var) > 0) {
    Poly r = pseudo_remainder(a, b, var);
    a = std::move(b);
    b = primitive_part(r, var);
  }
  // b == 0: a is the primitive gcd; b constant in var: primitive parts are coprime.
  Poly h = b.is_zero() ? a : Poly::constant(ring, 1);
  return (c * h).monic();
}

}  // namespace

Poly multivariate_gcd(const Poly& f, const Poly& g) {
  if (f.ring() && g.ring() && f.ring() != g.ring() && !f.ring()->same_as(*g.ring()))
    throw AlgebraError(ErrorCode::kRingMismatch, "gcd of polynomials from different rings");
  return gcd_rec(f, g);
}

bool coprime(const Poly& f, const Poly& g) { return multivariate_gcd(f, g).is_unit(); }

namespace {

// gcd of f with all of its partial derivatives: drops every multiplicity by one.
Poly deflate(const Poly& f) {
  Poly g = f;
  for (std::size_t v = 0; v < f.ring()->nvars() && !g.is_unit(); ++v) {
    if (f.degree_in(v) <= 0) continue;
    g = multivariate_gcd(g, f.derivative(v));
  }
  return g.monic();
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_split(const Poly& f) {
  if (f.is_zero()) throw AlgebraError(ErrorCode::kZeroInput, "square-free split of zero");
  const RingPtr& ring = f.ring();
  if (!ring->field().is_rational()) {
    for (std::size_t v = 0; v < ring->nvars(); ++v)
      if (static_cast<std::uint64_t>(f.degree_in(v)) >= ring->field().modulus)
        throw AlgebraError(ErrorCode::kCharacteristicObstruction,
                           "degree in " + ring->variables()[v] + " reaches the characteristic");
  }
  // chain[i] = product of p^(e-i) over factors p^e of f.
  std::vector<Poly> chain{f.monic()};
  while (!chain.back().is_unit()) chain.push_back(deflate(chain.back()));
  // at_least[i] = product of p with multiplicity >= i+1.
  std::vector<Poly> at_least;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    at_least.push_back(exact_divide(chain[i], chain[i + 1]));
  std::vector<SquarefreeFactor> out;
  for (std::size_t i = 0; i < at_least.size(); ++i) {
    Poly exact = i + 1 < at_least.size() ? exact_divide(at_least[i], at_least[i + 1]) : at_least[i];
    if (!exact.is_unit()) out.push_back({exact.monic(), static_cast<int>(i + 1)});
  }
  return out;
}

}  // namespace szpiro
