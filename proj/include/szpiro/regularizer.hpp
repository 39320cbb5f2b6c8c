#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "szpiro/polymat.hpp"
#include "szpiro/resolution.hpp"

namespace szpiro {

/// Membership test for a prime-like ideal plus a source of elements avoiding it.
struct PrimeOracle {
  std::string label;
  std::function<bool(const Poly&)> membership;
  /// Element lying in every oracle of `processed` but outside this one.
  std::function<Poly(const std::vector<PrimeOracle>& processed)> avoid_element_source;
  /// Block polynomial for gcd oracles; zero for the zero-ideal oracle.
  Poly block;
};

PrimeOracle zero_oracle(const RingPtr& ring);
PrimeOracle block_oracle(const Poly& block, std::string label);

/// Phase 1 (no det_alpha): the zero oracle. Phase 2: one gcd oracle per square-free block
/// of det_alpha, or per hint.
std::vector<PrimeOracle> default_oracles(const std::optional<Poly>& det_alpha,
                                         const std::optional<std::vector<Poly>>& hints = std::nullopt,
                                         const RingPtr& ring = nullptr);

struct RegularizeOptions {
  std::uint64_t seed = 0x5eed;
  /// Recompute the Pluecker sum behind every descent step.
  bool check_pluecker = false;
  std::size_t refine_budget = 8;
};

struct RegularizeStep {
  std::string kind;  // paired, alpha_plus_beta, beta_plus_alpha, column_add
  int phase = 0;     // 0 for the non-symmetric variant
  std::string oracle;
  std::vector<std::size_t> indices;  // 1-based
  Poly scalar;
  std::string minor_before;
  Poly value_before;
  std::string minor_after;
  Poly value_after;
  std::vector<std::size_t> selection;  // l or L indices, 1-based over 1..2n
};

struct RegularizeReport {
  BaseChange base_change;
  PolyMatrix matrix;  // transformed (alpha beta)
  Poly det_alpha;
  Poly det_beta;
  Poly gcd;
  bool verified = false;
  std::vector<RegularizeStep> steps;
  std::size_t refinements = 0;
  std::vector<std::string> oracle_labels;
};

struct GoodMinorResult {
  MinorIndex minor;
  Poly value;
  BaseChange change;
  PolyMatrix matrix;
  std::vector<RegularizeStep> steps;
};

/// Good n-minor of the split matrix outside the oracle, after at most M0 paired operations
/// beta_L += zeta alpha_H, beta_H += zeta alpha_L.
GoodMinorResult find_good_minor(const PolyMatrix& m, const PrimeOracle& oracle, bool symmetric,
                                const Poly& zeta = Poly(), const RegularizeOptions& options = {});

/// General column operations making det of the first n columns avoid every oracle.
RegularizeReport regularize_tau1(const PolyMatrix& m, const std::vector<PrimeOracle>& oracles,
                                 const RegularizeOptions& options = {});

/// Symplectic base change after which det(alpha), det(beta) is a regular sequence.
RegularizeReport regularize_symmetric(const SymmetricResolution& sym,
                                      const std::optional<std::vector<Poly>>& hints = std::nullopt,
                                      const RegularizeOptions& options = {});

/// 1-based sorted column set of a split n x 2n matrix.
Poly full_minor(const PolyMatrix& m, const std::vector<std::size_t>& cols);
MinorIndex to_minor_index(const std::vector<std::size_t>& cols, std::size_t n);

}  // namespace szpiro
