#include "commands.hpp"

#include <cstdlib>
#include <fstream>

#include "szpiro/error.hpp"
#include "szpiro/io.hpp"

namespace szpiro::cli {

using nlohmann::json;

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kResourceLimit:
      return kResourceLimit;
    case ErrorCode::kUnknownVariable:
    case ErrorCode::kSyntaxError:
    case ErrorCode::kModulusViolation:
    case ErrorCode::kRingMismatch:
    case ErrorCode::kInvalidRing:
    case ErrorCode::kArityMismatch:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kNotSquare:
    case ErrorCode::kEmptyMatrix:
    case ErrorCode::kParameterViolation:
    case ErrorCode::kHintProductMismatch:
    case ErrorCode::kHintsNotCoprime:
    case ErrorCode::kInvalidInput:
      return kInputError;
    default:
      return kPropertyFails;
  }
}

json error_json(const AlgebraError& e) {
  json j{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (!e.detail().is_null()) j["detail"] = e.detail();
  return j;
}

CommandResult failure(json report, int code, json error) {
  report["exit_code"] = code;
  report["error"] = std::move(error);
  return {code, std::move(report)};
}

/// Loads the problem (every failure is an input error), then runs `body`.
template <class Body>
CommandResult guarded(const std::string& command, const std::string& path, const CommandOptions& opts, Body body) {
  json report{{"command", command}, {"file", path}};
  ProblemFile p;
  try {
    p = load_problem(path, spair_budget(opts.max_spairs));
  } catch (const AlgebraError& e) {
    return failure(report, kInputError, error_json(e));
  }
  report["problem"] = *p.source;
  try {
    int code = body(p, report);
    report["exit_code"] = code;
    return {code, report};
  } catch (const AlgebraError& e) {
    return failure(report, exit_code_for(e.code()), error_json(e));
  } catch (const std::exception& e) {
    return failure(report, kPropertyFails, json{{"code", "Internal"}, {"message", e.what()}});
  }
}

std::uint64_t seed_of(const ProblemFile& p, const CommandOptions& opts) {
  return opts.seed.value_or(p.seed.value_or(0x5eed));
}

std::string product_text(const Vec& c) {
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string coeff = c[k].to_string();
    if (c[k].term_count() > 1) coeff = "(" + coeff + ")";
    s += (coeff == "1" ? "" : coeff + "*") + "e" + std::to_string(k + 1);
  }
  return s.empty() ? "0" : s;
}

json products_json(const MultiplicationTable& t) {
  json j = json::object();
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t k = i; k < t.n; ++k)
      j["e" + std::to_string(i + 1) + "*e" + std::to_string(k + 1)] = product_text(t.c[i][k]);
  return j;
}

}  // namespace

std::optional<std::size_t> spair_budget(const std::optional<std::size_t>& flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("SZPIRO_MAX_SPAIRS")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::logic_error&) {
      throw AlgebraError(ErrorCode::kInvalidInput, std::string("bad SZPIRO_MAX_SPAIRS value ") + env);
    }
  }
  return std::nullopt;
}

CommandResult run_diagnose(const std::string& path, const CommandOptions& opts) {
  return guarded("diagnose", path, opts, [&](const ProblemFile& p, json& report) {
    FreeResolution res = [&] {
      try {
        return resolution_of(p);
      } catch (const AlgebraError& e) {
        throw AlgebraError(ErrorCode::kInvalidInput, e.what(), e.detail());
      }
    }();
    RingBuildOptions ro;
    ro.seed = seed_of(p, opts);
    DiagnoseReport d = gorenstein_diagnose(res, p.u, ro);
    json body = to_json(d);
    for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
    if (d.table) report["products"] = products_json(*d.table);
    return d.certified ? kCertified : kPropertyFails;
  });
}

CommandResult run_ring(const std::string& path, const CommandOptions& opts) {
  return guarded("ring", path, opts, [&](const ProblemFile& p, json& report) {
    RingBuildOptions ro;
    ro.seed = seed_of(p, opts);
    MultiplicationTable t = build_multiplication(p.phi, ro);
    report["table"] = to_json(t);
    report["products"] = products_json(t);
    RingAxiomReport ax = verify_ring_axioms(t, p.phi, ro);
    report["axioms"] = to_json(ax);
    return kCertified;
  });
}

CommandResult run_regularize(const std::string& path, const CommandOptions& opts) {
  return guarded("regularize", path, opts, [&](const ProblemFile& p, json& report) {
    const std::size_t n = p.phi.rows();
    if (p.phi.cols() != 2 * n)
      throw AlgebraError(ErrorCode::kShapeMismatch, "regularize needs an n x 2n matrix");
    std::optional<std::vector<Poly>> hints = p.factor_hints;
    if (opts.hints) {
      std::vector<Poly> h;
      for (const auto& s : *opts.hints) h.push_back(parse_poly(s, p.ring));
      hints = h;
    }
    RegularizeOptions ro;
    ro.seed = seed_of(p, opts);
    RegularizeReport r = [&] {
      if (is_symmetric_split(p.phi)) {
        report["mode"] = "symmetric";
        return regularize_symmetric(SymmetricResolution::from_phi(p.phi), hints, ro);
      }
      report["mode"] = "tau1";
      return regularize_tau1(p.phi, default_oracles(std::nullopt, std::nullopt, p.ring), ro);
    }();
    json body = to_json(r);
    for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
    return r.verified ? kCertified : kPropertyFails;
  });
}

CommandResult run_symmetrize(const std::string& path, const CommandOptions& opts) {
  return guarded("symmetrize", path, opts, [&](const ProblemFile& p, json& report) {
    if (!p.u) throw AlgebraError(ErrorCode::kInvalidInput, "symmetrize needs u in the problem file");
    FreeResolution res = [&] {
      try {
        return resolution_of(p);
      } catch (const AlgebraError& e) {
        throw AlgebraError(ErrorCode::kInvalidInput, e.what(), e.detail());
      }
    }();
    SymmetrizeResult s = symmetrize(res, *p.u);
    json body = to_json(s);
    for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
    SymmetryOutcome check = symmetry_check(s.sym.base);
    report["symmetric"] = check.sym.has_value();
    return check.sym ? kCertified : kPropertyFails;
  });
}

CommandResult run_selftest(const CommandOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(0x5eed);
  const std::size_t count = opts.quick ? 10 : 100;
  std::vector<SuiteResult> suites;
  suites.push_back(pluecker_numeric());
  suites.push_back(pluecker_suite(count, seed, opts.inject_fault));
  suites.push_back(symplectic_suite(count, seed, opts.inject_fault));
  if (!opts.quick) suites.push_back(oracle_equivalence_suite());
  json report{{"command", "selftest"}, {"quick", opts.quick}, {"seed", seed}};
  report["suites"] = json::array();
  bool ok = true;
  for (const auto& s : suites) {
    ok = ok && s.ok();
    json j{{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}};
    if (!s.first_failure.empty()) j["first_failure"] = s.first_failure;
    report["suites"].push_back(j);
  }
  int code = ok ? kCertified : kPropertyFails;
  report["exit_code"] = code;
  return {code, report};
}

CommandResult run_verify(const std::string& report_path) {
  json out{{"command", "verify"}, {"file", report_path}};
  std::ifstream in(report_path);
  if (!in) return failure(out, kInputError, json{{"code", "InvalidInput"}, {"message", "cannot open " + report_path}});
  json report;
  try {
    in >> report;
  } catch (const json::exception& e) {
    return failure(out, kInputError, json{{"code", "InvalidInput"}, {"message", e.what()}});
  }
  VerifyOutcome v = verify_report(report);
  out["checks"] = v.checks;
  out["failures"] = v.failures;
  out["ok"] = v.ok();
  int code = v.ok() ? kCertified : kPropertyFails;
  out["exit_code"] = code;
  return {code, out};
}

}  // namespace szpiro::cli
