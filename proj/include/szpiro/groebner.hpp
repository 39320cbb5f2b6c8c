#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "szpiro/poly.hpp"

namespace szpiro {

using Vec = std::vector<Poly>;

/// Depth reported for the unit ideal; exceeds any threshold.
inline constexpr int kInfiniteDepth = std::numeric_limits<int>::max();

struct DivisionWitness {
  Vec remainder;
  /// One coefficient per element of the reduced basis.
  std::vector<Poly> coefficients;
};

/// Submodule of A^rank given by generators; the reduced Groebner basis
/// (position-over-term, lower index ranks higher) is computed once on demand.
class Submodule {
 public:
  Submodule(RingPtr ring, std::size_t rank, std::vector<Vec> generators);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Vec>& generators() const { return gens_; }

  const std::vector<Vec>& basis() const;
  /// Number of S-pairs processed by the basis computation (diagnostics).
  std::size_t spairs_processed() const;

  DivisionWitness normal_form_with_witness(const Vec& v) const;
  Vec normal_form(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Submodule& other) const;
  bool equals(const Submodule& other) const { return contains(other) && other.contains(*this); }

  /// Coefficients c with v = sum c_k * generators[k], or nullopt if v is not in the module.
  std::optional<std::vector<Poly>> lift(const Vec& v) const;

 private:
  struct State;
  RingPtr ring_;
  std::size_t rank_;
  std::vector<Vec> gens_;
  std::shared_ptr<State> state_;
};

class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Poly> generators = {});
  static Ideal unit(const RingPtr& ring);

  const RingPtr& ring() const { return module_.ring(); }
  const std::vector<Poly>& generators() const { return gens_; }
  /// Reduced Groebner basis.
  std::vector<Poly> basis() const;

  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const;
  bool contains(const Ideal& other) const;
  bool equals(const Ideal& other) const { return contains(other) && other.contains(*this); }
  bool is_unit() const;
  bool is_zero() const { return gens_.empty(); }

  /// Coefficients over the generators, or nullopt.
  std::optional<std::vector<Poly>> lift(const Poly& f) const;

  const Submodule& as_module() const { return module_; }

  friend Ideal operator+(const Ideal& a, const Ideal& b);

 private:
  std::vector<Poly> gens_;
  Submodule module_;
};

std::vector<Vec> groebner_basis(const Submodule& m);
std::vector<Poly> groebner_basis(const Ideal& i);
DivisionWitness normal_form_with_witness(const Vec& v, const Submodule& m);

struct DimensionDepth {
  /// Krull dimension of A/J; -1 for the unit ideal.
  int dim;
  /// Codimension; kInfiniteDepth for the unit ideal.
  int depth;
};
DimensionDepth dimension_and_depth(const Ideal& j);

/// (I : f) = {a : a*f in I}.
Ideal quotient(const Ideal& i, const Poly& f);
/// (M : f) = {v : f*v in M}.
Submodule quotient(const Submodule& m, const Poly& f);
/// (M : v) = {a : a*v in M}, an ideal.
Ideal quotient(const Submodule& m, const Vec& v);

Ideal intersect(const Ideal& a, const Ideal& b);
/// Ann of A^rank / M.
Ideal annihilator_of_cokernel(const Submodule& m);

/// True iff f is a nonzerodivisor on A^rank / M, i.e. (M : f) = M.
bool is_nonzerodivisor(const Poly& f, const Submodule& m);

// Vector helpers.
Vec zero_vec(const RingPtr& ring, std::size_t rank);
Vec unit_vec(const RingPtr& ring, std::size_t rank, std::size_t index);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Poly& c, const Vec& v);

}  // namespace szpiro
