#include "szpiro/ring_builder.hpp"

#include <random>

#include <nlohmann/json.hpp>

#include "szpiro/error.hpp"

namespace szpiro {

namespace {

bool is_regular(const Poly& d, const Ideal& ann, const Submodule& im) {
  if (d.is_zero()) return false;
  if (!quotient(ann, d).equals(ann)) return false;
  return quotient(im, d).equals(im);
}

Vec slice(const std::vector<Poly>& v, std::size_t first, std::size_t count) {
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(first),
             v.begin() + static_cast<std::ptrdiff_t>(first + count));
}

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

Vec reduce_mod_image(const Vec& v, const PolyMatrix& m) { return m.column_module().normal_form(v); }

bool in_image(const Vec& v, const PolyMatrix& m) { return m.column_module().contains(v); }

std::vector<RegularElement> find_regular_elements(const PolyMatrix& phi, std::size_t count,
                                                  const RingBuildOptions& options) {
  const RingPtr& ring = phi.ring();
  std::vector<RegularElement> out;
  if (count == 0) return out;
  PolyMatrix prime = erase_first_row(phi);
  std::vector<Poly> mins;
  if (prime.rows() == 0) {
    mins.push_back(Poly::constant(ring, 1));
  } else {
    for (auto& m : minors(prime, prime.rows()))
      if (!m.is_zero()) mins.push_back(m);
  }
  Ideal ann = annihilator_of_cokernel(phi);
  Submodule im = phi.column_module();
  std::vector<Poly> seen;
  auto consider = [&](const Poly& raw, const std::string& provenance) {
    Poly d = raw.monic();
    if (d.is_zero() || std::find(seen.begin(), seen.end(), d) != seen.end()) return;
    seen.push_back(d);
    if (is_regular(d, ann, im)) out.push_back({d, provenance});
  };
  for (std::size_t k = 0; k < mins.size() && out.size() < count; ++k)
    consider(mins[k], "minor " + std::to_string(k + 1) + " of I'");
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (std::size_t t = 0; t < options.random_attempts && out.size() < count && mins.size() > 1; ++t) {
    Poly d(ring);
    for (const auto& m : mins) d += Poly::constant(ring, coef(rng)) * m;
    consider(d, "random combination " + std::to_string(t + 1) + " of the minors of I'");
  }
  return out;
}

RegularElement find_regular_element(const PolyMatrix& phi, const RingBuildOptions& options) {
  auto found = find_regular_elements(phi, 1, options);
  if (found.empty())
    throw AlgebraError(ErrorCode::kNoRegularElementFound,
                       "no element of I' is a nonzerodivisor on coker(phi) within the search budget");
  return found.front();
}

Ideal conductor(const PolyMatrix& phi) {
  if (phi.rows() == 0) throw AlgebraError(ErrorCode::kEmptyMatrix, "conductor needs a row");
  Ideal ann = annihilator_of_cokernel(phi);
  PolyMatrix prime = erase_first_row(phi);
  if (prime.rows() == 0) return Ideal::unit(phi.ring());
  return annihilator_of_cokernel(prime) + ann;
}

MultiplicationTable build_multiplication_with(const PolyMatrix& phi, const RegularElement& reg) {
  const RingPtr& ring = phi.ring();
  const std::size_t n = phi.rows();
  const Poly& d = reg.d;
  Submodule im = phi.column_module();

  MultiplicationTable t{.n = n,
                        .identity_index = 1,
                        .c = {},
                        .witness = {},
                        .certificate = {.annihilator = annihilator_of_cokernel(phi),
                                        .conductor = conductor(phi),
                                        .d = d,
                                        .provenance = reg.provenance,
                                        .a_coeffs = {},
                                        .a_witness = {}}};

  // d e_i = a_i e_1 + phi w_i.
  Submodule with_e1 = PolyMatrix::hstack(PolyMatrix::identity(ring, n).column_block(0, 1), phi)
                          .column_module();
  for (std::size_t i = 0; i < n; ++i) {
    auto lift = with_e1.lift(d * unit_vec(ring, n, i));
    if (!lift)
      throw AlgebraError(ErrorCode::kNotClosed,
                         "d*e_" + std::to_string(i + 1) + " is not a multiple of e_1 modulo im(phi)",
                         nlohmann::json{{"i", i + 1}});
    t.certificate.a_coeffs.push_back((*lift)[0]);
    t.certificate.a_witness.push_back(slice(*lift, 1, phi.cols()));
  }

  const Poly d2 = d * d;
  Submodule scaled = PolyMatrix::hstack(PolyMatrix::identity(ring, n).scaled(d2), phi).column_module();
  t.c.assign(n, std::vector<Vec>(n));
  t.witness.assign(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec target = (t.certificate.a_coeffs[i] * t.certificate.a_coeffs[j]) * unit_vec(ring, n, 0);
      auto lift = scaled.lift(target);
      if (!lift)
        throw AlgebraError(ErrorCode::kNotClosed,
                           "a_i a_j e_1 is not in d^2 A^n + im(phi) for " + pair_name(i, j),
                           nlohmann::json{{"i", i + 1}, {"j", j + 1}, {"d", d.to_string()}});
      Vec c = im.normal_form(slice(*lift, 0, n));
      auto w = im.lift(target - d2 * c);
      if (!w) throw AlgebraError(ErrorCode::kVerificationFailed, "reduced product lost membership");
      t.c[i][j] = t.c[j][i] = c;
      t.witness[i][j] = t.witness[j][i] = *w;
    }
  return t;
}

MultiplicationTable build_multiplication(const PolyMatrix& phi, const RingBuildOptions& options) {
  return build_multiplication_with(phi, find_regular_element(phi, options));
}

RingAxiomReport verify_ring_axioms(const MultiplicationTable& table, const PolyMatrix& phi,
                                   const RingBuildOptions& options) {
  const RingPtr& ring = phi.ring();
  const std::size_t n = table.n;
  if (n != phi.rows() || table.c.size() != n)
    throw AlgebraError(ErrorCode::kShapeMismatch, "table size differs from the rank of F0");
  Submodule im = phi.column_module();
  auto violation = [](const std::string& what, nlohmann::json where) {
    throw AlgebraError(ErrorCode::kAxiomViolation, what, std::move(where));
  };
  RingAxiomReport r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!im.contains(table.c[i][j] - table.c[j][i]))
        violation("commutativity fails at " + pair_name(i, j), {{"i", i + 1}, {"j", j + 1}});
  r.commutative = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!im.contains(table.c[0][j] - unit_vec(ring, n, j)))
      violation("e_1 is not an identity on e_" + std::to_string(j + 1), {{"i", 1}, {"j", j + 1}});
  r.identity = true;

  auto times = [&](const Vec& coords, std::size_t k) {
    Vec acc = zero_vec(ring, n);
    for (std::size_t m = 0; m < n; ++m)
      if (!coords[m].is_zero()) acc = acc + coords[m] * table.c[m][k];
    return acc;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec left = times(table.c[i][j], k);
        Vec right = times(table.c[j][k], i);
        ++r.triples_checked;
        if (!im.contains(left - right))
          violation("associativity fails at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        "," + std::to_string(k + 1) + ")",
                    {{"i", i + 1}, {"j", j + 1}, {"k", k + 1}});
      }
  r.associative = true;

  auto candidates = find_regular_elements(phi, 2, options);
  for (const auto& cand : candidates) {
    if (cand.d == table.certificate.d) continue;
    auto other = build_multiplication_with(phi, cand);
    r.second_d = cand.d;
    r.unique = true;
    for (std::size_t i = 0; i < n && *r.unique; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!im.contains(other.c[i][j] - table.c[i][j])) {
          r.unique = false;
          break;
        }
    if (!*r.unique)
      violation("table depends on the choice of d", {{"d", table.certificate.d.to_string()},
                                                      {"d2", cand.d.to_string()}});
    break;
  }
  return r;
}

std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::kPass: return "pass";
    case StageStatus::kFail: return "fail";
    case StageStatus::kSkipped: return "skipped";
  }
  return "skipped";
}

const StageResult* DiagnoseReport::stage(std::string_view name) const {
  for (const auto& s : stages)
    if (s.name == name) return &s;
  return nullptr;
}

DiagnoseReport gorenstein_diagnose(const FreeResolution& res, const std::optional<PolyMatrix>& u,
                                   const RingBuildOptions& options) {
  DiagnoseReport rep;
  auto run = [&](const std::string& name, const std::vector<ErrorCode>& expected, auto&& body) {
    StageResult s{name, StageStatus::kFail, ""};
    try {
      body(s);
    } catch (const AlgebraError& e) {
      if (std::find(expected.begin(), expected.end(), e.code()) == expected.end())
        throw AlgebraError(e.code(), name + ": " + e.what(), e.detail());
      s.status = StageStatus::kFail;
      s.detail = e.what();
    }
    rep.stages.push_back(s);
  };
  auto pass_if = [](StageResult& s, bool ok) { s.status = ok ? StageStatus::kPass : StageStatus::kFail; };

  run("acyclicity", {ErrorCode::kComplexNotZero}, [&](StageResult& s) {
    rep.acyclicity = check_acyclic_minimal(res);
    const auto& a = *rep.acyclicity;
    pass_if(s, a.acyclic && a.minimal && a.codim2);
    s.detail = std::string(a.acyclic ? "acyclic" : "not acyclic") + ", " +
               (a.minimal ? "minimal" : "not minimal") + ", " +
               (a.codim2 ? "codim 2" : "depth of Ann is " + std::to_string(a.depth_ann));
  });

  run("heart_check", {ErrorCode::kEmptyMatrix}, [&](StageResult& s) {
    rep.heart = heart_check(res.phi);
    pass_if(s, rep.heart->holds);
    s.detail = rep.heart->depth == kInfiniteDepth ? "I' = (1)"
                                                  : "depth I' = " + std::to_string(rep.heart->depth);
  });

  run("symmetry", {ErrorCode::kShapeMismatch, ErrorCode::kNotAnIsomorphism, ErrorCode::kSkewDegenerate,
                   ErrorCode::kNoUnitPivot, ErrorCode::kNotUnimodular},
      [&](StageResult& s) {
        auto out = symmetry_check(res);
        if (out.sym) {
          rep.symmetric = out.sym;
          pass_if(s, true);
          s.detail = "symmetric";
        } else if (u) {
          rep.symmetric = symmetrize(res, *u).sym;
          pass_if(s, true);
          s.detail = "symmetrized through u (" + out.reason + ")";
        } else {
          pass_if(s, false);
          s.detail = "not in symmetric form: " + out.reason;
        }
      });

  if (rep.symmetric) {
    run("koszul", {}, [&](StageResult& s) {
      rep.koszul = koszul_check(*rep.symmetric);
      pass_if(s, rep.koszul->regular_sequence && rep.koszul->lambda_ok);
      s.detail = "det alpha = " + rep.koszul->det_alpha.to_string() +
                 ", det beta = " + rep.koszul->det_beta.to_string() +
                 ", gcd = " + rep.koszul->gcd.to_string();
    });
  } else {
    rep.stages.push_back({"koszul", StageStatus::kSkipped, "no symmetric form"});
  }

  run("ring_build", {ErrorCode::kNotClosed, ErrorCode::kNoRegularElementFound}, [&](StageResult& s) {
    rep.table = build_multiplication(res.phi, options);
    pass_if(s, true);
    s.detail = "d = " + rep.table->certificate.d.to_string();
  });

  if (rep.table) {
    run("ring_axioms", {ErrorCode::kAxiomViolation}, [&](StageResult& s) {
      rep.axioms = verify_ring_axioms(*rep.table, res.phi, options);
      pass_if(s, true);
      s.detail = std::to_string(rep.axioms->triples_checked) + " associativity triples";
    });
  } else {
    rep.stages.push_back({"ring_axioms", StageStatus::kSkipped, "no multiplication table"});
  }

  if (res.grading) {
    run("graded_twist", {ErrorCode::kInhomogeneousEntry}, [&](StageResult& s) {
      rep.twist_report = graded_twist_check(res);
      pass_if(s, rep.twist_report->homogeneous && rep.twist_report->twist.has_value());
      s.detail = rep.twist_report->twist ? "t = " + std::to_string(*rep.twist_report->twist)
                                         : rep.twist_report->detail;
    });
  } else {
    rep.stages.push_back({"graded_twist", StageStatus::kSkipped, "no grading"});
  }

  for (const char* gate : {"acyclicity", "heart_check", "symmetry", "ring_build", "ring_axioms"}) {
    const StageResult* s = rep.stage(gate);
    if (!s || s->status != StageStatus::kPass) {
      rep.failing_gate = gate;
      break;
    }
  }
  rep.certified = !rep.failing_gate;
  if (rep.twist_report && rep.twist_report->homogeneous) rep.twist = rep.twist_report->twist;
  if (rep.certified) {
    rep.verdict = rep.twist ? "certified, twist " + std::to_string(*rep.twist) : "certified";
  } else {
    rep.verdict = "not certified: " + *rep.failing_gate;
  }
  return rep;
}

}  // namespace szpiro
