#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "szpiro/groebner.hpp"
#include "szpiro/polymat.hpp"
#include "szpiro/resolution.hpp"

namespace szpiro {

struct RingBuildOptions {
  std::uint64_t seed = 0x5eed;
  /// Random combinations of the minors of phi' tried after the single minors.
  std::size_t random_attempts = 32;
};

struct RegularElement {
  Poly d;
  std::string provenance;
};

/// Regular elements of I' in search order; at most `count` of them.
std::vector<RegularElement> find_regular_elements(const PolyMatrix& phi, std::size_t count,
                                                  const RingBuildOptions& options = {});
RegularElement find_regular_element(const PolyMatrix& phi, const RingBuildOptions& options = {});

/// Ann(coker phi') + Ann(coker phi).
Ideal conductor(const PolyMatrix& phi);

struct ConductorData {
  Ideal annihilator;
  Ideal conductor;
  Poly d;
  std::string provenance;
  /// d e_i - a_i e_1 = phi * a_witness[i].
  std::vector<Poly> a_coeffs;
  std::vector<Vec> a_witness;
};

struct MultiplicationTable {
  std::size_t n = 0;
  std::size_t identity_index = 1;
  /// c[i][j]: coordinates of r_i r_j, reduced modulo im(phi).
  std::vector<std::vector<Vec>> c;
  /// a_i a_j e_1 - d^2 c[i][j] = phi * witness[i][j].
  std::vector<std::vector<Vec>> witness;
  ConductorData certificate;
};

MultiplicationTable build_multiplication(const PolyMatrix& phi, const RingBuildOptions& options = {});
/// Table for a given regular element d.
MultiplicationTable build_multiplication_with(const PolyMatrix& phi, const RegularElement& d);

struct RingAxiomReport {
  bool commutative = false;
  bool identity = false;
  bool associative = false;
  std::size_t triples_checked = 0;
  /// Set when a second regular element was available.
  std::optional<bool> unique;
  std::optional<Poly> second_d;
};

/// Raises AxiomViolation naming the failing pair or triple.
RingAxiomReport verify_ring_axioms(const MultiplicationTable& table, const PolyMatrix& phi,
                                   const RingBuildOptions& options = {});

enum class StageStatus { kPass, kFail, kSkipped };
std::string_view to_string(StageStatus s);

struct StageResult {
  std::string name;
  StageStatus status = StageStatus::kSkipped;
  std::string detail;
};

struct DiagnoseReport {
  std::vector<StageResult> stages;
  bool certified = false;
  std::string verdict;
  std::optional<std::string> failing_gate;
  std::optional<int> twist;

  std::optional<AcyclicityReport> acyclicity;
  std::optional<HeartReport> heart;
  std::optional<SymmetricResolution> symmetric;
  std::optional<KoszulCertificate> koszul;
  std::optional<MultiplicationTable> table;
  std::optional<RingAxiomReport> axioms;
  std::optional<TwistReport> twist_report;

  const StageResult* stage(std::string_view name) const;
};

/// Runs every stage; symmetrizes through `u` when phi is not already symmetric.
DiagnoseReport gorenstein_diagnose(const FreeResolution& res,
                                   const std::optional<PolyMatrix>& u = std::nullopt,
                                   const RingBuildOptions& options = {});

/// v modulo im(m), in normal form.
Vec reduce_mod_image(const Vec& v, const PolyMatrix& m);
bool in_image(const Vec& v, const PolyMatrix& m);

}  // namespace szpiro
