#include <filesystem>
#include <functional>
#include <iostream>
#include <random>

#include "commands.hpp"
#include "szpiro/error.hpp"
#include "szpiro/fixtures.hpp"
#include "szpiro/io.hpp"

using namespace szpiro;
using namespace szpiro::cli;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(SZPIRO_FIXTURE_DIR) + "/" + name + ".json"; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

const json* stage(const json& report, const std::string& name) {
  for (const auto& s : report.at("stages"))
    if (s.at("name") == name) return &s;
  return nullptr;
}

bool stage_is(const json& report, const std::string& name, const std::string& status) {
  const json* s = stage(report, name);
  return s && s->at("status") == status;
}

Outcome fail(const std::string& why) { return {false, why}; }

// x -> s, y -> t^2, z -> t^3, w -> s t, on generators 1, t.
Poly cusp_image(const Poly& f, const RingPtr& st) {
  std::vector<Poly> img{parse_poly("s", st), parse_poly("t^2", st), parse_poly("t^3", st), parse_poly("s*t", st)};
  Poly out(st);
  for (const auto& term : f.terms()) {
    Poly m = Poly::constant(st, term.coeff);
    for (std::size_t i = 0; i < 4; ++i) m *= img[i].pow(static_cast<unsigned>(term.mono[i]));
    out += m;
  }
  return out;
}

Outcome criterion1() {
  auto r = run_diagnose(fixture("e1"));
  const json& j = r.report;
  if (r.exit_code != 0) return fail("exit " + std::to_string(r.exit_code));
  if (j.at("verdict") != "certified, twist 2") return fail("verdict " + j.at("verdict").dump());
  const json& a = j.at("acyclicity");
  if (!a.at("acyclic").get<bool>() || !a.at("minimal").get<bool>() || !a.at("codim2").get<bool>())
    return fail("acyclicity report " + a.dump());
  for (const char* s : {"acyclicity", "heart_check", "symmetry", "koszul", "ring_build", "ring_axioms", "graded_twist"})
    if (!stage_is(j, s, "pass")) return fail(std::string("stage ") + s + " did not pass");
  if (j.at("koszul").at("det_alpha") != "x" || j.at("koszul").at("det_beta") != "y") return fail("Koszul pair");
  if (j.at("products").at("e1*e1") != "e1") return fail("e*e = " + j.at("products").at("e1*e1").dump());
  return {true, "verdict \"certified, twist 2\", det pair (x, y), e*e = e"};
}

Outcome criterion2() {
  ProblemFile p = load_problem(fixture("e2"));
  HeartReport h = heart_check(p.phi);
  if (!h.holds || h.depth != 4) return fail("depth I' = " + std::to_string(h.depth));
  auto r = run_ring(fixture("e2"));
  if (r.exit_code != 0) return fail("ring exit " + std::to_string(r.exit_code));
  const RingPtr& ring = p.ring;
  auto table = build_multiplication(p.phi);
  if (!in_image(table.c[1][1] - Vec{parse_poly("y", ring), Poly(ring)}, p.phi)) return fail("t*t differs from y*e");
  auto st = PolyRing::create({"s", "t"});
  std::vector<Poly> gens{parse_poly("1", st), parse_poly("t", st)};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      const Vec& c = table.c[i][k];
      Poly image = cusp_image(c[0], st) + cusp_image(c[1], st) * gens[1];
      if (!(image == gens[i] * gens[k])) return fail("substitution mismatch at " + std::to_string(i) + std::to_string(k));
    }
  const json& ax = r.report.at("axioms");
  if (!ax.at("associative").get<bool>() || ax.at("triples_checked") != 8) return fail("associativity " + ax.dump());
  auto ds = find_regular_elements(p.phi, 2);
  if (ds.size() != 2) return fail("second regular element missing");
  auto other = build_multiplication_with(p.phi, ds[1]);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      if (!in_image(table.c[i][k] - other.c[i][k], p.phi)) return fail("tables differ for d = " + ds[1].d.to_string());
  return {true, "depth I' = 4, t*t = " + r.report.at("products").at("e2*e2").get<std::string>() +
                    ", k[s,t] oracle exact, 8 triples, d = x and d = y agree"};
}

Outcome criterion3() {
  auto d = run_diagnose(fixture("e3"));
  if (d.exit_code != 1) return fail("diagnose exit " + std::to_string(d.exit_code));
  const json& j = d.report;
  if (!stage_is(j, "symmetry", "pass") || !stage_is(j, "koszul", "pass")) return fail("symmetry or Koszul failed");
  if (!stage_is(j, "heart_check", "fail") || j.at("heart").at("depth") != 3) return fail("heart stage " + j.at("heart").dump());
  if (j.at("failing_gate") != "heart_check") return fail("gate " + j.at("failing_gate").dump());
  auto r = run_ring(fixture("e3"));
  if (r.exit_code != 1 || r.report.at("error").at("code") != "NotClosed") return fail("ring did not report NotClosed");
  return {true, "symmetry and Koszul pass, depth I' = 3, ring -> NotClosed"};
}

Outcome criterion4() {
  auto s = pluecker_suite(100, 0x5eed);
  auto n = pluecker_numeric();
  if (!s.ok()) return fail(s.first_failure);
  if (!n.ok()) return fail(n.first_failure);
  return {true, std::to_string(s.cases) + " random sums over F_(2^31-1) vanish, 2x4 instance holds"};
}

Outcome criterion5() {
  auto s = symplectic_suite(100, 0x5eed);
  if (!s.ok()) return fail(s.first_failure);
  return {true, std::to_string(s.cases) + " random pairs keep E^T J' E = J', symmetry and Fitt_0"};
}

Outcome criterion6() {
  auto r = run_regularize(fixture("lemma"));
  const json& j = r.report;
  if (r.exit_code != 0) return fail("exit " + std::to_string(r.exit_code));
  if (j.at("det_alpha") != "x*w") return fail("det tau_1 = " + j.at("det_alpha").dump());
  const json& steps = j.at("steps");
  if (steps.size() != 1) return fail("expected one step, got " + std::to_string(steps.size()));
  if (steps[0].at("selection") != json::array({3, 1})) return fail("selection " + steps[0].at("selection").dump());
  if (steps[0].at("target") != 2 || steps[0].at("source") != 3) return fail("op " + steps[0].dump());
  return {true, "l = (3, 1), col 2 += col 3, det tau_1 = x*w"};
}

Outcome criterion7() {
  auto ring = fixtures::qxyzw();
  auto base = fixtures::diagonal().res.phi;
  std::mt19937_64 rng(20261018);
  std::size_t scrambles = 0;
  for (int trial = 0; trial < 25; ++trial) {
    BaseChange e = BaseChange::identity(ring, 4, true);
    for (int k = 0; k < 3; ++k) {
      std::size_t i = 1 + rng() % 2;
      Poly b = rng() % 2 ? Poly::variable(ring, rng() % 4) : Poly::constant(ring, 1 + static_cast<int>(rng() % 3));
      switch (rng() % 4) {
        case 0: e.paired(1, 2, b); break;
        case 1: e.alpha_plus_beta(i, b); break;
        case 2: e.beta_plus_alpha(i, b); break;
        default: e.swap_pair(i); break;
      }
    }
    PolyMatrix m = apply_base_change(base, e);
    auto rep = regularize_symmetric(SymmetricResolution::from_phi(m));
    if (!rep.verified || !coprime(rep.det_alpha, rep.det_beta) || rep.det_alpha.is_zero())
      return fail("scramble " + std::to_string(trial) + " not verified");
    Ideal a(ring, {rep.det_alpha});
    if (!quotient(a, rep.det_beta).equals(a)) return fail("quotient check failed on scramble " + std::to_string(trial));
    ++scrambles;
  }
  auto s = run_regularize(fixture("scrambled"));
  if (s.exit_code != 0 || !s.report.at("verified").get<bool>() || s.report.at("steps").empty())
    return fail("scrambled fixture not regularized");
  auto d = run_regularize(fixture("degenerate"));
  if (d.exit_code != 1) return fail("degenerate exit " + std::to_string(d.exit_code));
  const json& err = d.report.at("error");
  if (!err.contains("detail") || err.at("detail").at("gcd") != "w") return fail("degenerate diagnostic " + err.dump());
  return {true, std::to_string(scrambles) + " scrambles + scrambled fixture have gcd 1; degenerate fails with gcd w"};
}

Outcome criterion8() {
  auto s = oracle_equivalence_suite(6);
  if (!s.ok()) return fail(s.first_failure);
  if (check_acyclic_minimal(fixtures::nonexact().res).acyclic) return fail("nonexact fixture reported acyclic");
  return {true, std::to_string(s.cases) + " fixtures agree with truncated exactness at D = 6, nonexact included"};
}

Outcome criterion9() {
  auto r = run_symmetrize(fixture("e1"));
  if (r.exit_code != 0 || !r.report.at("symmetric").get<bool>()) return fail("symmetrize exit " + std::to_string(r.exit_code));
  auto ring = fixtures::qxyzw();
  PolyMatrix a = matrix_from_json(r.report.at("alpha"), ring), b = matrix_from_json(r.report.at("beta"), ring);
  PolyMatrix phi_new = PolyMatrix::hstack(a, b);
  PolyMatrix phi = fixtures::e1().res.phi;
  if (!phi_new.column_module().equals(phi.column_module())) return fail("cokernel changed");
  std::vector<PolyMatrix> skews{
      PolyMatrix::parse(ring, {{"0", "1"}, {"-1", "0"}}), PolyMatrix::parse(ring, {{"0", "2"}, {"-2", "0"}}),
      PolyMatrix::parse(ring, {{"0", "1", "x", "0"}, {"-1", "0", "0", "0"}, {"-x", "0", "0", "1"}, {"0", "0", "-1", "0"}})};
  for (const auto& s : skews) {
    PolyMatrix bm = skew_normal_form(s).matrix();
    if (!(bm.transpose() * s * bm == symplectic_form(ring, s.rows() / 2))) return fail("B^T S B != J");
  }
  return {true, "E1 with u = 1 is symmetric with the same cokernel; B^T S B = J on 3 skew examples"};
}

Outcome criterion10() {
  std::size_t checks = 0, reports = 0;
  std::vector<std::string> names{"e1", "e2", "e2s", "e3", "nonexact", "diag", "paired", "degenerate", "scrambled",
                                 "lemma", "hinted"};
  using Runner = std::function<CommandResult(const std::string&)>;
  std::vector<std::pair<std::string, Runner>> runners{
      {"diagnose", [](const std::string& f) { return run_diagnose(f); }},
      {"ring", [](const std::string& f) { return run_ring(f); }},
      {"regularize", [](const std::string& f) { return run_regularize(f); }},
      {"symmetrize", [](const std::string& f) { return run_symmetrize(f); }}};
  for (const auto& name : names)
    for (const auto& [cmd, run] : runners) {
      auto r = run(fixture(name));
      if (r.exit_code == kInputError) continue;
      auto v = verify_report(r.report);
      ++reports;
      checks += v.checks;
      if (!v.ok()) return fail(cmd + " " + name + ": " + v.failures.front());
    }
  if (checks == 0) return fail("no certificates were checked");
  return {true, std::to_string(reports) + " reports, " + std::to_string(checks) + " certificate checks, 0 failures"};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Koszul fixture E1 is certified", criterion1},
      {"cusp surface E2 ring table", criterion2},
      {"E3 passes symmetry and Koszul, fails the depth gate", criterion3},
      {"Pluecker suite", criterion4},
      {"symplectic invariance suite", criterion5},
      {"non-symmetric regularizer on the lemma matrix", criterion6},
      {"symmetric regularizer on scrambles and the degenerate pair", criterion7},
      {"exactness oracle equivalence", criterion8},
      {"symmetrize round trip and skew normal form", criterion9},
      {"report verifiability", criterion10}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " -- " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
