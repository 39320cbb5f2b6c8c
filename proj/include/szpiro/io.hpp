#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "szpiro/regularizer.hpp"
#include "szpiro/resolution.hpp"
#include "szpiro/ring_builder.hpp"

namespace szpiro {

struct ProblemFile {
  RingPtr ring;
  PolyMatrix phi;
  std::optional<PolyMatrix> psi;
  std::optional<GradedData> grading;
  std::optional<PolyMatrix> u;
  std::optional<std::vector<Poly>> factor_hints;
  std::optional<std::uint64_t> seed;
  /// The parsed document, echoed into reports so they can be re-verified alone.
  std::shared_ptr<nlohmann::json> source;
};

/// Throws AlgebraError(InvalidInput, ...) on malformed documents.
ProblemFile parse_problem(const nlohmann::json& doc, std::optional<std::size_t> spair_budget = std::nullopt);
ProblemFile load_problem(const std::string& path, std::optional<std::size_t> spair_budget = std::nullopt);

/// psi from the file, or (-beta^T; alpha^T) when phi is an n x 2n symmetric split matrix.
FreeResolution resolution_of(const ProblemFile& p);

RingPtr parse_ring(const nlohmann::json& ring, std::optional<std::size_t> spair_budget = std::nullopt);
nlohmann::json ring_to_json(const RingPtr& ring);
nlohmann::json matrix_to_json(const PolyMatrix& m);
PolyMatrix matrix_from_json(const nlohmann::json& j, const RingPtr& ring);
nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j, const RingPtr& ring);

nlohmann::json to_json(const MultiplicationTable& t);
nlohmann::json to_json(const RingAxiomReport& a);
nlohmann::json to_json(const KoszulCertificate& k);
nlohmann::json to_json(const DiagnoseReport& r);
nlohmann::json to_json(const RegularizeReport& r);
nlohmann::json to_json(const SymmetrizeResult& s);

struct VerifyOutcome {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Re-checks every certificate in a report produced by the command-line front end, using
/// only the echoed problem, plain arithmetic, and Groebner membership.
VerifyOutcome verify_report(const nlohmann::json& report);

}  // namespace szpiro
