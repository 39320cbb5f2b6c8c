#include "szpiro/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "szpiro/error.hpp"

namespace szpiro {

using nlohmann::json;

namespace {

[[noreturn]] void bad_input(const std::string& what) { throw AlgebraError(ErrorCode::kInvalidInput, what); }

std::vector<int> int_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_array()) bad_input(std::string(key) + " must be a list of integers");
  std::vector<int> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) bad_input(std::string(key) + " must be a list of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

json step_to_json(const RegularizeStep& s) {
  json j{{"kind", s.kind}, {"phase", s.phase}, {"oracle", s.oracle}};
  const std::string scalar = s.scalar.to_string();
  if (s.kind == "paired") {
    j["H"] = s.indices.at(0);
    j["L"] = s.indices.at(1);
    j["zeta"] = scalar;
  } else if (s.kind == "column_add") {
    j["target"] = s.indices.at(0);
    j["source"] = s.indices.at(1);
    j["b"] = scalar;
  } else {
    j["j"] = s.indices.at(0);
    j["b"] = scalar;
  }
  j["minor_before"] = {{"index", s.minor_before}, {"value", s.value_before.to_string()}};
  j["minor_after"] = {{"index", s.minor_after}, {"value", s.value_after.to_string()}};
  if (!s.selection.empty()) j["selection"] = s.selection;
  return j;
}

// ---------------------------------------------------------------- verification helpers

class Checker {
 public:
  explicit Checker(VerifyOutcome& out) : out_(out) {}
  void operator()(bool ok, const std::string& what) {
    ++out_.checks;
    if (!ok) out_.failures.push_back(what);
  }

 private:
  VerifyOutcome& out_;
};

Poly poly_at(const json& j, const char* key, const RingPtr& r) { return parse_poly(j.at(key).get<std::string>(), r); }

bool in_span(const Submodule& m, const Vec& v) { return is_zero(v) || m.contains(v); }

/// (f) : g = (f), i.e. g is a nonzerodivisor modulo f.
bool coprime_by_quotient(const Poly& f, const Poly& g) {
  if (f.is_unit() || g.is_unit()) return true;
  Ideal i(f.ring(), {f});
  return quotient(i, g).equals(i);
}

PolyMatrix replay(PolyMatrix m, const json& steps) {
  const std::size_t n = m.rows();
  auto add = [&](std::size_t target, std::size_t source, const Poly& b) {
    Vec t = m.column(target - 1), s = m.column(source - 1);
    m.set_column(target - 1, t + b * s);
  };
  for (const auto& s : steps) {
    const std::string kind = s.at("kind").get<std::string>();
    const RingPtr& r = m.ring();
    if (kind == "paired") {
      std::size_t h = s.at("H").get<std::size_t>(), l = s.at("L").get<std::size_t>();
      Poly z = poly_at(s, "zeta", r);
      Vec ah = m.column(h - 1), al = m.column(l - 1);
      m.set_column(n + l - 1, m.column(n + l - 1) + z * ah);
      m.set_column(n + h - 1, m.column(n + h - 1) + z * al);
    } else if (kind == "alpha_plus_beta") {
      std::size_t j = s.at("j").get<std::size_t>();
      add(j, n + j, poly_at(s, "b", r));
    } else if (kind == "beta_plus_alpha") {
      std::size_t j = s.at("j").get<std::size_t>();
      add(n + j, j, poly_at(s, "b", r));
    } else if (kind == "column_add") {
      add(s.at("target").get<std::size_t>(), s.at("source").get<std::size_t>(), poly_at(s, "b", r));
    } else {
      bad_input("unknown step kind " + kind);
    }
  }
  return m;
}

PolyMatrix j_prime(const RingPtr& r, std::size_t n) {
  PolyMatrix j(r, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = Poly::constant(r, 1);
    j(n + i, i) = Poly::constant(r, -1);
  }
  return j;
}

void verify_table(Checker& check, const json& t, const PolyMatrix& phi, bool axioms) {
  const RingPtr& r = phi.ring();
  const std::size_t n = t.at("n").get<std::size_t>();
  check(n == phi.rows(), "table size differs from the rank of F0");
  Poly d = poly_at(t, "d", r);
  check(!d.is_zero(), "regular element d is zero");
  std::vector<Poly> a;
  for (const auto& s : t.at("a_coeffs")) a.push_back(parse_poly(s.get<std::string>(), r));
  for (std::size_t i = 0; i < n; ++i) {
    Vec w = vec_from_json(t.at("a_witness").at(i), r);
    Vec lhs = d * unit_vec(r, n, i) - a.at(i) * unit_vec(r, n, 0);
    check(lhs == phi * w, "d e_" + std::to_string(i + 1) + " - a_i e_1 differs from phi * witness");
  }
  std::vector<std::vector<Vec>> c(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      c[i][j] = vec_from_json(t.at("c").at(i).at(j), r);
      Vec w = vec_from_json(t.at("witness").at(i).at(j), r);
      Vec lhs = (a[i] * a[j]) * unit_vec(r, n, 0) - (d * d) * c[i][j];
      check(lhs == phi * w, "product certificate (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") differs from phi * witness");
    }
  if (!axioms) return;
  Submodule im = phi.column_module();
  auto times = [&](const Vec& u, std::size_t k) {
    Vec acc = zero_vec(r, n);
    for (std::size_t m = 0; m < n; ++m) acc = acc + u[m] * c[m][k];
    return acc;
  };
  for (std::size_t i = 0; i < n; ++i) {
    check(in_span(im, c[0][i] - unit_vec(r, n, i)), "e_1 is not an identity on r_" + std::to_string(i + 1));
    for (std::size_t j = i + 1; j < n; ++j)
      check(in_span(im, c[i][j] - c[j][i]), "product is not commutative on (" + std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ")");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        check(in_span(im, times(c[i][j], k) - times(c[j][k], i)),
              "associativity fails on (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                  std::to_string(k + 1) + ")");
}

void verify_pair_certificates(Checker& check, const json& k, const PolyMatrix& alpha, const PolyMatrix& beta) {
  const RingPtr& r = alpha.ring();
  Poly da = poly_at(k, "det_alpha", r), db = poly_at(k, "det_beta", r), g = poly_at(k, "gcd", r);
  check(da == determinant(alpha), "det_alpha differs from det(alpha)");
  check(db == determinant(beta), "det_beta differs from det(beta)");
  if (!g.is_zero()) {
    check(try_divide(da, g).has_value() && try_divide(db, g).has_value(), "gcd does not divide both determinants");
  }
  bool claims = k.value("regular_sequence", k.value("verified", false));
  if (claims) {
    check(!da.is_zero(), "det_alpha is zero");
    check(g.is_unit(), "reported gcd is not a unit");
    check(coprime_by_quotient(da, db), "(det alpha) : det beta differs from (det alpha)");
  }
}

void verify_twist(Checker& check, const json& problem, const RingPtr& r, const PolyMatrix& phi,
                  const PolyMatrix& psi, int twist) {
  const json& g = problem.at("grading");
  auto q = int_list(g, "q_degrees"), rr = int_list(g, "r_degrees"), s = int_list(g, "s_degrees");
  auto w = int_list(g, "weights");
  if (w.empty()) w.assign(r->nvars(), 1);
  auto scan = [&](const PolyMatrix& m, const std::vector<int>& tgt, const std::vector<int>& src, const char* name) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j).is_zero()) continue;
        for (const auto& term : m(i, j).terms()) {
          int deg = 0;
          for (std::size_t v = 0; v < r->nvars(); ++v) deg += w[v] * term.mono[v];
          check(deg == src.at(j) - tgt.at(i), std::string(name) + " entry is not of the graded degree");
        }
      }
  };
  scan(phi, q, rr, "phi");
  scan(psi, rr, s, "psi");
  const std::size_t n = q.size();
  for (std::size_t k = 0; k < n; ++k) {
    check(rr.at(k) + rr.at(n + k) == twist, "r-degree pair does not sum to the twist");
    check(q.at(k) + s.at(k) == twist, "q + s does not equal the twist");
  }
}

}  // namespace

// ---------------------------------------------------------------- parsing

RingPtr parse_ring(const json& j, std::optional<std::size_t> spair_budget) {
  if (!j.is_object() || !j.contains("variables")) bad_input("ring needs a variables list");
  std::vector<std::string> vars;
  for (const auto& v : j.at("variables")) {
    if (!v.is_string()) bad_input("variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  CoefficientField field = CoefficientField::rationals();
  const std::string f = j.value("field", std::string("Q"));
  if (f.rfind("Fp:", 0) == 0) {
    try {
      std::size_t used = 0;
      unsigned long long p = std::stoull(f.substr(3), &used);
      if (used != f.size() - 3) bad_input("bad field " + f);
      field = CoefficientField::prime(p);
    } catch (const std::logic_error&) {
      bad_input("bad field " + f);
    }
  } else if (f != "Q") {
    bad_input("field must be \"Q\" or \"Fp:<p>\", got " + f);
  }
  const std::string order = j.value("order", std::string("grevlex"));
  MonomialOrder mo = MonomialOrder::kGrevlex;
  if (order == "lex")
    mo = MonomialOrder::kLex;
  else if (order != "grevlex")
    bad_input("order must be grevlex or lex, got " + order);
  return PolyRing::create(vars, field, mo, spair_budget.value_or(PolyRing::kDefaultSpairBudget));
}

json ring_to_json(const RingPtr& ring) {
  json j;
  j["variables"] = ring->variables();
  j["field"] = ring->field().is_rational() ? std::string("Q") : "Fp:" + std::to_string(ring->field().modulus);
  j["order"] = ring->order() == MonomialOrder::kLex ? "lex" : "grevlex";
  return j;
}

PolyMatrix matrix_from_json(const json& j, const RingPtr& ring) {
  if (!j.is_array() || j.empty()) bad_input("matrix must be a nonempty list of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) bad_input("matrix rows must be lists");
    std::vector<std::string> r;
    for (const auto& e : row) {
      if (e.is_string())
        r.push_back(e.get<std::string>());
      else if (e.is_number_integer())
        r.push_back(std::to_string(e.get<long long>()));
      else
        bad_input("matrix entries must be polynomial strings");
    }
    if (!rows.empty() && r.size() != rows.front().size()) bad_input("matrix rows have different lengths");
    rows.push_back(std::move(r));
  }
  return PolyMatrix::parse(ring, rows);
}

json matrix_to_json(const PolyMatrix& m) { return m.to_strings(); }

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (const auto& p : v) j.push_back(p.to_string());
  return j;
}

Vec vec_from_json(const json& j, const RingPtr& ring) {
  Vec v;
  for (const auto& e : j) v.push_back(parse_poly(e.get<std::string>(), ring));
  return v;
}

ProblemFile parse_problem(const json& doc, std::optional<std::size_t> spair_budget) {
  try {
    if (!doc.is_object()) bad_input("problem must be a JSON object");
    if (!doc.contains("ring")) bad_input("problem needs a ring");
    if (!doc.contains("phi")) bad_input("problem needs phi");
    ProblemFile p;
    p.source = std::make_shared<json>(doc);
    p.ring = parse_ring(doc.at("ring"), spair_budget);
    p.phi = matrix_from_json(doc.at("phi"), p.ring);
    if (doc.contains("psi")) p.psi = matrix_from_json(doc.at("psi"), p.ring);
    if (p.psi && p.psi->rows() != p.phi.cols())
      throw AlgebraError(ErrorCode::kShapeMismatch,
                         "phi has " + std::to_string(p.phi.cols()) + " columns but psi has " +
                             std::to_string(p.psi->rows()) + " rows");
    if (doc.contains("grading")) {
      const json& g = doc.at("grading");
      GradedData gd{int_list(g, "q_degrees"), int_list(g, "r_degrees"), int_list(g, "s_degrees"),
                    int_list(g, "weights"), std::nullopt};
      if (g.contains("twist")) gd.twist = g.at("twist").get<int>();
      p.grading = gd;
    }
    if (doc.contains("u")) p.u = matrix_from_json(doc.at("u"), p.ring);
    if (doc.contains("factor_hints")) {
      std::vector<Poly> hints;
      for (const auto& h : doc.at("factor_hints")) hints.push_back(parse_poly(h.get<std::string>(), p.ring));
      p.factor_hints = hints;
    }
    if (doc.contains("seed")) p.seed = doc.at("seed").get<std::uint64_t>();
    return p;
  } catch (const json::exception& e) {
    bad_input(std::string("malformed problem: ") + e.what());
  }
}

ProblemFile load_problem(const std::string& path, std::optional<std::size_t> spair_budget) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    bad_input(path + ": " + e.what());
  }
  return parse_problem(doc, spair_budget);
}

FreeResolution resolution_of(const ProblemFile& p) {
  if (p.psi) return FreeResolution::make(p.phi, *p.psi, p.grading);
  const std::size_t n = p.phi.rows();
  if (p.phi.cols() != 2 * n || !is_symmetric_split(p.phi))
    bad_input("psi is required unless phi is a symmetric n x 2n matrix");
  PolyMatrix alpha = p.phi.column_block(0, n), beta = p.phi.column_block(n, n);
  return FreeResolution::make(p.phi, stacked_psi(alpha, beta), p.grading);
}

// ---------------------------------------------------------------- reports

json to_json(const MultiplicationTable& t) {
  json j{{"n", t.n}, {"identity_index", t.identity_index}};
  j["d"] = t.certificate.d.to_string();
  j["provenance"] = t.certificate.provenance;
  j["conductor"] = json::array();
  for (const auto& g : t.certificate.conductor.generators()) j["conductor"].push_back(g.to_string());
  j["a_coeffs"] = json::array();
  for (const auto& a : t.certificate.a_coeffs) j["a_coeffs"].push_back(a.to_string());
  j["a_witness"] = json::array();
  for (const auto& w : t.certificate.a_witness) j["a_witness"].push_back(vec_to_json(w));
  j["c"] = json::array();
  j["witness"] = json::array();
  for (std::size_t i = 0; i < t.n; ++i) {
    json crow = json::array(), wrow = json::array();
    for (std::size_t k = 0; k < t.n; ++k) {
      crow.push_back(vec_to_json(t.c[i][k]));
      wrow.push_back(vec_to_json(t.witness[i][k]));
    }
    j["c"].push_back(crow);
    j["witness"].push_back(wrow);
  }
  return j;
}

json to_json(const RingAxiomReport& a) {
  json j{{"commutative", a.commutative}, {"identity", a.identity}, {"associative", a.associative},
         {"triples_checked", a.triples_checked}};
  if (a.unique) j["unique"] = *a.unique;
  if (a.second_d) j["second_d"] = a.second_d->to_string();
  return j;
}

json to_json(const KoszulCertificate& k) {
  return {{"det_alpha", k.det_alpha.to_string()}, {"det_beta", k.det_beta.to_string()},
          {"gcd", k.gcd.to_string()},           {"lambda", k.lambda_unit.get_str()},
          {"lambda_ok", k.lambda_ok},           {"regular_sequence", k.regular_sequence}};
}

json to_json(const DiagnoseReport& r) {
  json j{{"certified", r.certified}, {"verdict", r.verdict}};
  j["failing_gate"] = r.failing_gate ? json(*r.failing_gate) : json(nullptr);
  j["twist"] = r.twist ? json(*r.twist) : json(nullptr);
  j["stages"] = json::array();
  for (const auto& s : r.stages)
    j["stages"].push_back({{"name", s.name}, {"status", std::string(to_string(s.status))}, {"detail", s.detail}});
  if (r.acyclicity) {
    const auto& a = *r.acyclicity;
    j["acyclicity"] = {{"acyclic", a.acyclic},   {"minimal", a.minimal},     {"codim2", a.codim2},
                       {"rank_phi", a.rank_phi}, {"rank_psi", a.rank_psi},   {"depth_phi", a.depth_phi},
                       {"depth_psi", a.depth_psi}, {"depth_ann", a.depth_ann}};
  }
  if (r.heart) j["heart"] = {{"holds", r.heart->holds}, {"depth", r.heart->depth}};
  if (r.symmetric)
    j["symmetric"] = {{"alpha", matrix_to_json(r.symmetric->alpha)}, {"beta", matrix_to_json(r.symmetric->beta)}};
  if (r.koszul) j["koszul"] = to_json(*r.koszul);
  if (r.table) j["table"] = to_json(*r.table);
  if (r.axioms) j["axioms"] = to_json(*r.axioms);
  return j;
}

json to_json(const RegularizeReport& r) {
  json j{{"base_change", matrix_to_json(r.base_change.matrix())},
         {"symplectic", r.base_change.symplectic()},
         {"matrix", matrix_to_json(r.matrix)},
         {"det_alpha", r.det_alpha.to_string()},
         {"det_beta", r.det_beta.to_string()},
         {"gcd", r.gcd.to_string()},
         {"verified", r.verified},
         {"refinements", r.refinements},
         {"oracles", r.oracle_labels}};
  j["steps"] = json::array();
  for (const auto& s : r.steps) j["steps"].push_back(step_to_json(s));
  return j;
}

json to_json(const SymmetrizeResult& s) {
  return {{"alpha", matrix_to_json(s.sym.alpha)}, {"beta", matrix_to_json(s.sym.beta)},
          {"psi", matrix_to_json(s.sym.base.psi)}, {"f1", matrix_to_json(s.f1)},
          {"f2", matrix_to_json(s.f2)},           {"f3", matrix_to_json(s.f3)},
          {"skew", matrix_to_json(s.skew)},       {"normal_form", matrix_to_json(s.normal_form.matrix())},
          {"inverse_u", matrix_to_json(s.inverse_u)}};
}

// ---------------------------------------------------------------- verify

VerifyOutcome verify_report(const json& report) {
  VerifyOutcome out;
  Checker check(out);
  try {
    if (!report.is_object() || !report.contains("command")) bad_input("not a report");
    const std::string cmd = report.at("command").get<std::string>();
    if (cmd == "selftest" || cmd == "verify") return out;
    if (!report.contains("problem")) bad_input("report does not echo its problem");
    const json& problem = report.at("problem");
    ProblemFile p = parse_problem(problem);
    const RingPtr& r = p.ring;
    const PolyMatrix& phi = p.phi;

    if (cmd == "diagnose") {
      std::optional<PolyMatrix> alpha, beta;
      if (report.contains("symmetric")) {
        alpha = matrix_from_json(report.at("symmetric").at("alpha"), r);
        beta = matrix_from_json(report.at("symmetric").at("beta"), r);
        PolyMatrix sym = PolyMatrix::hstack(*alpha, *beta);
        check((*alpha) * beta->transpose() == (*beta) * alpha->transpose(), "alpha beta^T differs from beta alpha^T");
        Submodule a = phi.column_module(), b = sym.column_module();
        check(a.equals(b), "symmetric form has a different image than phi");
      }
      if (report.contains("koszul") && alpha) verify_pair_certificates(check, report.at("koszul"), *alpha, *beta);
      if (report.contains("table")) verify_table(check, report.at("table"), phi, report.contains("axioms"));
      if (report.contains("heart") && report.at("heart").at("holds").get<bool>()) {
        Ideal ip = fitting_ideal(erase_first_row(phi), 0);
        check(dimension_and_depth(ip).depth >= 4, "depth of I' is below 4");
      }
      if (report.contains("acyclicity") && report.at("acyclicity").at("acyclic").get<bool>()) {
        FreeResolution res = resolution_of(p);
        check(res.is_complex(), "phi * psi is not zero");
      }
      if (report.value("certified", false) && !report.at("twist").is_null() && p.grading) {
        FreeResolution res = resolution_of(p);
        verify_twist(check, problem, r, res.phi, res.psi, report.at("twist").get<int>());
      }
    } else if (cmd == "ring") {
      if (report.contains("table")) verify_table(check, report.at("table"), phi, report.contains("axioms"));
    } else if (cmd == "regularize") {
      if (report.contains("base_change")) {
        PolyMatrix e = matrix_from_json(report.at("base_change"), r);
        PolyMatrix m = matrix_from_json(report.at("matrix"), r);
        const std::size_t n = phi.rows();
        check(phi * e == m, "phi * E differs from the reported matrix");
        check(replay(phi, report.at("steps")) == m, "step log does not reproduce the reported matrix");
        check(determinant(e).is_unit(), "base change is not invertible");
        if (report.value("symplectic", false)) {
          check(e.transpose() * j_prime(r, n) * e == j_prime(r, n), "E^T J' E differs from J'");
          PolyMatrix a = m.column_block(0, n), b = m.column_block(n, n);
          check(a * b.transpose() == b * a.transpose(), "transformed pair is not symmetric");
        }
        check(minors_ideal(m, n).equals(minors_ideal(phi, n)), "Fitt_0 changed under E");
        if (report.value("mode", std::string("symmetric")) == "tau1") {
          Poly da = poly_at(report, "det_alpha", r);
          check(da == determinant(m.column_block(0, n)), "det_alpha differs from det(tau_1)");
          if (report.value("verified", false)) check(!da.is_zero(), "det(tau_1) is zero");
        } else {
          verify_pair_certificates(check, report, m.column_block(0, n), m.column_block(n, n));
        }
      }
    } else if (cmd == "symmetrize") {
      if (report.contains("alpha")) {
        FreeResolution res = resolution_of(p);
        PolyMatrix a = matrix_from_json(report.at("alpha"), r), b = matrix_from_json(report.at("beta"), r);
        PolyMatrix f1 = matrix_from_json(report.at("f1"), r), f2 = matrix_from_json(report.at("f2"), r);
        PolyMatrix f3 = matrix_from_json(report.at("f3"), r), s = matrix_from_json(report.at("skew"), r);
        PolyMatrix bb = matrix_from_json(report.at("normal_form"), r);
        const std::size_t n = a.rows();
        PolyMatrix phi_new = PolyMatrix::hstack(a, b);
        check(f1 * res.phi == res.psi.transpose() * f2, "u phi differs from psi^T f2");
        check(f2 * res.psi == res.phi.transpose() * f3, "f2 psi differs from phi^T f3");
        check((f2 - f2.transpose()).scaled(Poly::constant(r, r->inverse(Scalar(2)))) == s, "skew part mismatch");
        check(determinant(s).is_unit(), "skew part is not invertible");
        check(bb.transpose() * s * bb == j_prime(r, n), "B^T S B differs from J");
        check(res.phi * bb == phi_new, "phi B differs from (alpha beta)");
        check(a * b.transpose() == b * a.transpose(), "output pair is not symmetric");
        check(phi_new.column_module().equals(res.phi.column_module()), "image of phi changed");
      }
    } else {
      bad_input("unknown command " + cmd);
    }
  } catch (const json::exception& e) {
    out.failures.push_back(std::string("malformed report: ") + e.what());
  } catch (const AlgebraError& e) {
    out.failures.push_back(std::string("report could not be re-checked: ") + e.what());
  }
  return out;
}

}  // namespace szpiro
