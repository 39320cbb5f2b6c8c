#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace szpiro {

/// Coefficient values. Over F_p they are kept as canonical residues in [0, p).
using Scalar = mpq_class;

enum class MonomialOrder { kGrevlex, kLex };

/// Rationals (modulus 0) or a prime field F_p with p odd.
struct CoefficientField {
  std::uint64_t modulus = 0;

  static CoefficientField rationals() { return {}; }
  static CoefficientField prime(std::uint64_t p) { return {p}; }

  bool is_rational() const { return modulus == 0; }
  friend bool operator==(const CoefficientField&, const CoefficientField&) = default;
};

/// Exponent vector with cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial one(std::size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }
  int degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  friend Monomial lcm(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

/// Polynomial ring k[x_1..x_n] with a fixed monomial order. Shared immutably by
/// every polynomial, matrix, and module built over it.
class PolyRing {
 public:
  static constexpr std::size_t kDefaultSpairBudget = 50000;

  /// Validates variable names and the field (F_2 and composite moduli are rejected).
  static RingPtr create(std::vector<std::string> variables,
                        CoefficientField field = CoefficientField::rationals(),
                        MonomialOrder order = MonomialOrder::kGrevlex,
                        std::size_t spair_budget = kDefaultSpairBudget);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t nvars() const { return variables_.size(); }
  const CoefficientField& field() const { return field_; }
  MonomialOrder order() const { return order_; }
  /// Maximum number of S-pairs any single Groebner computation over this ring may process.
  std::size_t spair_budget() const { return spair_budget_; }

  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Three-way comparison in the ring's monomial order: <0, 0, >0.
  int compare(const Monomial& a, const Monomial& b) const;

  Scalar reduce(Scalar value) const;
  Scalar inverse(const Scalar& value) const;
  /// Representative used for printing (symmetric residue over F_p).
  Scalar printable(const Scalar& value) const;
  std::string scalar_to_string(const Scalar& value) const;

  /// Same variables, field, and order; the S-pair budget is not part of ring identity.
  bool same_as(const PolyRing& other) const;

 private:
  PolyRing(std::vector<std::string> variables, CoefficientField field, MonomialOrder order,
           std::size_t spair_budget);

  std::vector<std::string> variables_;
  CoefficientField field_;
  MonomialOrder order_;
  std::size_t spair_budget_;
  mpz_class modulus_;
};

RingPtr with_spair_budget(const RingPtr& ring, std::size_t budget);

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse multivariate polynomial; terms sorted by decreasing monomial, no zero
/// coefficients. A default-constructed Poly is a ring-less zero that adopts the
/// ring of whatever it is combined with.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  /// Combines like terms, reduces coefficients, drops zeros, and sorts.
  Poly(RingPtr ring, std::vector<Term> terms);

  static Poly constant(const RingPtr& ring, const Scalar& value);
  static Poly variable(const RingPtr& ring, std::size_t index);
  static Poly term(const RingPtr& ring, Monomial mono, const Scalar& coeff);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Nonzero constant.
  bool is_unit() const;
  bool is_one() const;
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }
  Scalar constant_term() const;
  /// Everything but the leading term.
  Poly tail() const;

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  /// Weighted degree of every term; nullopt if the terms disagree. Zero reports nullopt.
  std::optional<int> homogeneous_degree(std::span<const int> weights) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly scaled(const Scalar& factor) const;
  Poly times_term(const Monomial& mono, const Scalar& coeff) const;
  /// this - coeff * mono * other, in one merge pass.
  Poly minus_term_times(const Scalar& coeff, const Monomial& mono, const Poly& other) const;
  /// Leading coefficient made 1; zero stays zero.
  Poly monic() const;
  Poly pow(unsigned exponent) const;

  /// Coefficients with respect to one variable, indexed by power.
  std::vector<Poly> coefficients_in(std::size_t var) const;
  Poly derivative(std::size_t var) const;
  Scalar evaluate(std::span<const Scalar> point) const;

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  const RingPtr& common_ring(const Poly& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Parses the exchange grammar: integers, variables, + - * / ^ and parentheses.
/// Division is only allowed by nonzero constants.
Poly parse_poly(std::string_view text, const RingPtr& ring);

/// f / g when g divides f exactly.
std::optional<Poly> try_divide(const Poly& f, const Poly& g);
/// f / g; throws NotExact when g does not divide f.
Poly exact_divide(const Poly& f, const Poly& g);

/// Greatest common divisor by recursive primitive PRS, normalized monic; gcd(f,0) = monic(f).
Poly multivariate_gcd(const Poly& f, const Poly& g);
/// True iff gcd(f, g) is a unit.
bool coprime(const Poly& f, const Poly& g);

struct SquarefreeFactor {
  Poly factor;
  int multiplicity;
};
/// Pairwise coprime square-free factors with product equal to f up to a unit.
std::vector<SquarefreeFactor> squarefree_split(const Poly& f);

/// Exact evaluation; point length must equal the number of variables.
Scalar evaluate(const Poly& f, std::span<const Scalar> point);

}  // namespace szpiro
