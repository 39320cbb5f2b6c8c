#include "szpiro/poly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <regex>
#include <sstream>

#include "szpiro/error.hpp"

namespace szpiro {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<int> exponents)
    : exps_(std::move(exponents)), degree_(std::accumulate(exps_.begin(), exps_.end(), 0)) {}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] = exps_[i] + other.exps_[i];
  out.degree_ = degree_ + other.degree_;
  return out;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial out;
  out.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] = exps_[i] - divisor.exps_[i];
  out.degree_ = degree_ - divisor.degree_;
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

// ---------------------------------------------------------------- PolyRing

namespace {

bool valid_variable_name(const std::string& name) {
  static const std::regex kPattern("[a-zA-Z][a-zA-Z0-9_]*");
  return std::regex_match(name, kPattern);
}

}  // namespace

PolyRing::PolyRing(std::vector<std::string> variables, CoefficientField field,
                   MonomialOrder order, std::size_t spair_budget)
    : variables_(std::move(variables)),
      field_(field),
      order_(order),
      spair_budget_(spair_budget),
      modulus_(static_cast<unsigned long>(field.modulus)) {}

RingPtr PolyRing::create(std::vector<std::string> variables, CoefficientField field,
                         MonomialOrder order, std::size_t spair_budget) {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (!valid_variable_name(variables[i]))
      throw AlgebraError(ErrorCode::kInvalidRing, "invalid variable name '" + variables[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (variables[i] == variables[j])
        throw AlgebraError(ErrorCode::kInvalidRing, "duplicate variable '" + variables[i] + "'");
  }
  if (!field.is_rational()) {
    if (field.modulus == 2)
      throw AlgebraError(ErrorCode::kInvalidRing, "characteristic 2 is not supported");
    mpz_class p(static_cast<unsigned long>(field.modulus));
    if (field.modulus < 3 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
      throw AlgebraError(ErrorCode::kInvalidRing,
                         "modulus " + std::to_string(field.modulus) + " is not an odd prime");
  }
  return RingPtr(new PolyRing(std::move(variables), field, order, spair_budget));
}

RingPtr with_spair_budget(const RingPtr& ring, std::size_t budget) {
  return PolyRing::create(ring->variables(), ring->field(), ring->order(), budget);
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

int PolyRing::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  if (order_ == MonomialOrder::kLex) {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
  }
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

Scalar PolyRing::reduce(Scalar value) const {
  if (field_.is_rational()) return value;
  mpz_class num = value.get_num() % modulus_;
  if (num < 0) num += modulus_;
  mpz_class den = value.get_den() % modulus_;
  if (den == 0)
    throw AlgebraError(ErrorCode::kModulusViolation,
                       "denominator divisible by " + modulus_.get_str());
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t());
    num = (num * inv) % modulus_;
  }
  return Scalar(num);
}

Scalar PolyRing::inverse(const Scalar& value) const {
  if (value == 0) throw AlgebraError(ErrorCode::kZeroInput, "inverse of zero");
  if (field_.is_rational()) return Scalar(1) / value;
  mpz_class inv;
  mpz_class v = value.get_num();
  mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
  return Scalar(inv);
}

Scalar PolyRing::printable(const Scalar& value) const {
  if (field_.is_rational()) return value;
  mpz_class v = value.get_num();
  if (2 * v > modulus_) v -= modulus_;
  return Scalar(v);
}

std::string PolyRing::scalar_to_string(const Scalar& value) const {
  return printable(value).get_str();
}

bool PolyRing::same_as(const PolyRing& other) const {
  return this == &other || (variables_ == other.variables_ && field_ == other.field_ &&
                            order_ == other.order_);
}

// ---------------------------------------------------------------- Poly

namespace {

void sort_and_combine(const PolyRing& ring, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return ring.compare(a.mono, b.mono) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty()) {
        out.back().coeff = ring.reduce(out.back().coeff);
        if (out.back().coeff == 0) out.pop_back();
      }
      out.push_back(std::move(t));
    }
  }
  if (!out.empty()) {
    out.back().coeff = ring.reduce(out.back().coeff);
    if (out.back().coeff == 0) out.pop_back();
  }
  terms = std::move(out);
}

}  // namespace

Poly::Poly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.mono.size() != ring_->nvars())
      throw AlgebraError(ErrorCode::kArityMismatch, "exponent vector length mismatch");
  sort_and_combine(*ring_, terms_);
}

Poly Poly::constant(const RingPtr& ring, const Scalar& value) {
  return term(ring, Monomial::one(ring->nvars()), value);
}

Poly Poly::variable(const RingPtr& ring, std::size_t index) {
  std::vector<int> e(ring->nvars(), 0);
  e.at(index) = 1;
  return term(ring, Monomial(std::move(e)), 1);
}

Poly Poly::term(const RingPtr& ring, Monomial mono, const Scalar& coeff) {
  Poly p(ring);
  Scalar c = ring->reduce(coeff);
  if (c != 0) p.terms_.push_back({std::move(mono), std::move(c)});
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

bool Poly::is_unit() const { return terms_.size() == 1 && terms_.front().mono.is_one(); }

bool Poly::is_one() const { return is_unit() && terms_.front().coeff == 1; }

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

Poly Poly::tail() const {
  Poly out(ring_);
  if (terms_.size() > 1) out.terms_.assign(terms_.begin() + 1, terms_.end());
  return out;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

std::optional<int> Poly::homogeneous_degree(std::span<const int> weights) const {
  std::optional<int> deg;
  for (const auto& t : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < t.mono.size(); ++i) d += weights[i] * t.mono[i];
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

const RingPtr& Poly::common_ring(const Poly& other) const {
  if (!ring_) return other.ring_;
  if (other.ring_ && other.ring_ != ring_ && !ring_->same_as(*other.ring_))
    throw AlgebraError(ErrorCode::kRingMismatch, "polynomials live in different rings");
  return ring_;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.coeff = ring_->reduce(-t.coeff);
  return out;
}

Poly Poly::minus_term_times(const Scalar& coeff, const Monomial& mono, const Poly& other) const {
  const RingPtr& ring = common_ring(other);
  Poly out(ring);
  if (other.is_zero() || coeff == 0) {
    out.terms_ = terms_;
    return out;
  }
  out.terms_.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end()) {
      out.terms_.push_back(*a++);
      continue;
    }
    Monomial bm = b->mono * mono;
    int cmp = a == terms_.end() ? -1 : ring->compare(a->mono, bm);
    if (cmp > 0) {
      out.terms_.push_back(*a++);
    } else if (cmp < 0) {
      out.terms_.push_back({std::move(bm), ring->reduce(-(coeff * b->coeff))});
      ++b;
    } else {
      Scalar c = ring->reduce(a->coeff - coeff * b->coeff);
      if (c != 0) out.terms_.push_back({std::move(bm), std::move(c)});
      ++a;
      ++b;
    }
  }
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.is_zero()) return *this;
  const RingPtr ring = common_ring(other);
  *this = minus_term_times(-1, Monomial::one(ring->nvars()), other);
  ring_ = ring;
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.is_zero()) return *this;
  const RingPtr ring = common_ring(other);
  *this = minus_term_times(1, Monomial::one(ring->nvars()), other);
  ring_ = ring;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const RingPtr& ring = a.common_ring(b);
  if (a.is_zero() || b.is_zero()) return Poly(ring);
  if (a.terms_.size() < b.terms_.size()) return b * a;
  if (b.terms_.size() == 1) return a.times_term(b.terms_[0].mono, b.terms_[0].coeff);
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) terms.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Poly(ring, std::move(terms));
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly Poly::scaled(const Scalar& factor) const {
  Scalar f = ring_ ? ring_->reduce(factor) : factor;
  if (f == 0) return Poly(ring_);
  Poly out = *this;
  for (auto& t : out.terms_) t.coeff = ring_->reduce(t.coeff * f);
  return out;
}

Poly Poly::times_term(const Monomial& mono, const Scalar& coeff) const {
  Scalar c = ring_ ? ring_->reduce(coeff) : coeff;
  if (c == 0 || is_zero()) return Poly(ring_);
  Poly out(ring_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.mono * mono, ring_->reduce(t.coeff * c)});
  return out;
}

Poly Poly::monic() const {
  if (is_zero() || leading_coeff() == 1) return *this;
  return scaled(ring_->inverse(leading_coeff()));
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = Poly::constant(ring_, 1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(0, degree_in(var)) + 1));
  for (const auto& t : terms_) {
    std::vector<int> e = t.mono.exponents();
    const int k = e[var];
    e[var] = 0;
    buckets[static_cast<std::size_t>(k)].push_back({Monomial(std::move(e)), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(ring_, std::move(b));
  return out;
}

Poly Poly::derivative(std::size_t var) const {
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    std::vector<int> e = t.mono.exponents();
    Scalar c = t.coeff * e[var];
    e[var] -= 1;
    terms.push_back({Monomial(std::move(e)), std::move(c)});
  }
  return Poly(ring_, std::move(terms));
}

Scalar Poly::evaluate(std::span<const Scalar> point) const {
  if (ring_ && point.size() != ring_->nvars())
    throw AlgebraError(ErrorCode::kArityMismatch,
                       "point has " + std::to_string(point.size()) + " coordinates, ring has " +
                           std::to_string(ring_->nvars()) + " variables");
  Scalar sum = 0;
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (int k = 0; k < t.mono[i]; ++k) v *= point[i];
    sum += v;
  }
  return ring_ ? ring_->reduce(sum) : sum;
}

Scalar evaluate(const Poly& f, std::span<const Scalar> point) { return f.evaluate(point); }

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = ring_->printable(t.coeff);
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->variables()[i];
      if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
    }
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << "*" << mono;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

// ---------------------------------------------------------------- division

std::optional<Poly> try_divide(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw AlgebraError(ErrorCode::kZeroInput, "division by zero polynomial");
  const RingPtr& ring = g.ring();
  if (f.is_zero()) return Poly(ring);
  const Scalar inv = ring->inverse(g.leading_coeff());
  const Monomial& lm = g.leading_monomial();
  Poly rest = f;
  std::vector<Term> quotient;
  while (!rest.is_zero()) {
    const Term& lt = rest.leading_term();
    if (!lm.divides(lt.mono)) return std::nullopt;
    Monomial m = lt.mono / lm;
    Scalar c = ring->reduce(lt.coeff * inv);
    rest = rest.minus_term_times(c, m, g);
    quotient.push_back({std::move(m), std::move(c)});
  }
  return Poly(ring, std::move(quotient));
}

Poly exact_divide(const Poly& f, const Poly& g) {
  auto q = try_divide(f, g);
  if (!q)
    throw AlgebraError(ErrorCode::kNotExact, g.to_string() + " does not divide " + f.to_string());
  return *std::move(q);
}

}  // namespace szpiro
