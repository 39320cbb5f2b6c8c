#include "szpiro/regularizer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "szpiro/error.hpp"

namespace szpiro {

namespace {

using Cols = std::vector<std::size_t>;

bool good_cols(const Cols& cols, std::size_t n) { return to_minor_index(cols, n).good(); }

std::string cols_label(const Cols& cols, std::size_t n) { return to_minor_index(cols, n).to_string(); }

Cols leading_cols(std::size_t n) {
  Cols c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = i + 1;
  return c;
}

Cols trailing_cols(std::size_t n) {
  Cols c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = n + i + 1;
  return c;
}

Poly product_of_blocks(const RingPtr& ring, const std::vector<PrimeOracle>& processed) {
  Poly b = Poly::constant(ring, 1);
  for (const auto& o : processed) b *= o.block;
  return b;
}

/// Memoized n-minors of the current matrix.
class MinorCache {
 public:
  explicit MinorCache(const PolyMatrix& m) : m_(m) {}
  const Poly& operator()(const Cols& cols) {
    auto it = cache_.find(cols);
    if (it == cache_.end()) it = cache_.emplace(cols, full_minor(m_, cols)).first;
    return it->second;
  }

 private:
  const PolyMatrix& m_;
  std::map<Cols, Poly> cache_;
};

bool exists_completion(MinorCache& minor, const PrimeOracle& oracle, std::size_t n, bool require_good,
                       const Cols& fixed, std::size_t first, std::size_t last, std::size_t count) {
  // Choose `count` columns from [first, last] (1-based) and add them to `fixed`.
  if (first > last + 1) return false;
  std::size_t width = last + 1 - first;
  if (count > width) return false;
  for (const auto& pick : subsets_colex(width, count)) {
    Cols cols = fixed;
    for (std::size_t p : pick) cols.push_back(first + p);
    std::sort(cols.begin(), cols.end());
    if (require_good && !good_cols(cols, n)) continue;
    if (!oracle.membership(minor(cols))) return true;
  }
  return false;
}

/// l_1 > l_2 > ... > l_n, each the least admissible column.
std::optional<Cols> select_min(const PolyMatrix& m, const PrimeOracle& oracle, bool require_good) {
  const std::size_t n = m.rows();
  MinorCache minor(m);
  Cols chosen;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t bound = chosen.empty() ? 2 * n + 1 : chosen.back();
    bool found = false;
    for (std::size_t c = 1; c < bound && !found; ++c) {
      Cols fixed = chosen;
      fixed.push_back(c);
      if (exists_completion(minor, oracle, n, require_good, fixed, 1, c - 1, n - i)) {
        chosen.push_back(c);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return chosen;
}

/// L_1 < L_2 < ... < L_n, each the greatest admissible column.
std::optional<Cols> select_max(const PolyMatrix& m, const PrimeOracle& oracle) {
  const std::size_t n = m.rows();
  MinorCache minor(m);
  Cols chosen;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t lower = chosen.empty() ? 0 : chosen.back();
    bool found = false;
    for (std::size_t c = 2 * n; c > lower && !found; --c) {
      Cols fixed = chosen;
      fixed.push_back(c);
      if (exists_completion(minor, oracle, n, true, fixed, c + 1, 2 * n, n - i)) {
        chosen.push_back(c);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return chosen;
}

[[noreturn]] void step_failed(const std::string& what, const nlohmann::json& detail) {
  throw AlgebraError(ErrorCode::kStepVerificationFailed, what, detail);
}

Poly avoid_element(const PrimeOracle& current, const std::vector<PrimeOracle>& processed,
                   const RingPtr& ring) {
  Poly b = current.avoid_element_source ? current.avoid_element_source(processed)
                                        : product_of_blocks(ring, processed);
  bool ok = !current.membership(b);
  for (const auto& o : processed) ok = ok && o.membership(b);
  if (ok) return b;
  nlohmann::json detail{{"oracle", current.label}, {"candidate", b.to_string()}};
  if (!ring->field().is_rational())
    throw AlgebraError(ErrorCode::kSmallFieldExhausted,
                       "no element avoiding " + current.label + " over this field", detail);
  step_failed("avoid element for " + current.label + " failed its membership checks", detail);
}

/// Running state of a chain of elementary operations.
struct Walker {
  PolyMatrix matrix;
  BaseChange total;
  std::vector<RegularizeStep> steps;

  Walker(const PolyMatrix& m, bool symplectic)
      : matrix(m), total(BaseChange::identity(m.ring(), m.cols(), symplectic)) {}

  void apply(const BaseChange& op) {
    matrix = apply_base_change(matrix, op);
    total.then(op);
    if (total.symplectic() && !is_symmetric_split(matrix))
      throw AlgebraError(ErrorCode::kSymmetryBroken,
                         "symmetry lost after " + (op.log().empty() ? std::string("base change") : op.log().back().kind));
  }
};

std::vector<Poly> refine_blocks(const std::vector<Poly>& blocks, const std::vector<Poly>& probes) {
  std::vector<Poly> out = blocks;
  for (const auto& f : probes) {
    if (f.is_zero()) continue;
    std::vector<Poly> next;
    for (const auto& q : out) {
      Poly g = multivariate_gcd(q, f);
      if (g.is_unit() || q.total_degree() == g.total_degree()) {
        next.push_back(q);
        continue;
      }
      next.push_back(g.monic());
      next.push_back(exact_divide(q, g).monic());
    }
    out = std::move(next);
  }
  return out;
}

void check_not_char_two(const RingPtr& ring) {
  if (ring->field().modulus == 2)
    throw AlgebraError(ErrorCode::kCharTwo, "symmetric regularization needs 2 to be a unit");
}

}  // namespace

// ---------------------------------------------------------------- oracles

PrimeOracle zero_oracle(const RingPtr& ring) {
  PrimeOracle o;
  o.label = "(0)";
  o.membership = [](const Poly& f) { return f.is_zero(); };
  o.avoid_element_source = [ring](const std::vector<PrimeOracle>& processed) {
    return product_of_blocks(ring, processed);
  };
  o.block = Poly(ring);
  return o;
}

PrimeOracle block_oracle(const Poly& block, std::string label) {
  if (block.is_zero() || block.is_unit())
    throw AlgebraError(ErrorCode::kInvalidInput, "oracle block must be a nonzero nonunit");
  PrimeOracle o;
  o.label = std::move(label);
  o.block = block;
  o.membership = [block](const Poly& f) { return !coprime(f, block); };
  auto ring = block.ring();
  o.avoid_element_source = [ring](const std::vector<PrimeOracle>& processed) {
    return product_of_blocks(ring, processed);
  };
  return o;
}

std::vector<PrimeOracle> default_oracles(const std::optional<Poly>& det_alpha,
                                         const std::optional<std::vector<Poly>>& hints,
                                         const RingPtr& ring) {
  if (!det_alpha) {
    RingPtr r = ring;
    if (!r && hints && !hints->empty()) r = hints->front().ring();
    if (!r) throw AlgebraError(ErrorCode::kInvalidInput, "the zero oracle needs a ring");
    return {zero_oracle(r)};
  }
  const Poly& d = *det_alpha;
  if (d.is_zero()) throw AlgebraError(ErrorCode::kZeroInput, "det(alpha) is zero");
  std::vector<Poly> blocks;
  if (hints) {
    Poly prod = Poly::constant(d.ring(), 1);
    for (const auto& h : *hints) prod *= h;
    auto q = try_divide(d, prod);
    if (!q || !q->is_unit())
      throw AlgebraError(ErrorCode::kHintProductMismatch, "factor hints do not multiply to det(alpha)",
                         nlohmann::json{{"det_alpha", d.to_string()}, {"product", prod.to_string()}});
    for (std::size_t i = 0; i < hints->size(); ++i)
      for (std::size_t j = i + 1; j < hints->size(); ++j) {
        Poly g = multivariate_gcd((*hints)[i], (*hints)[j]);
        if (!g.is_unit())
          throw AlgebraError(ErrorCode::kHintsNotCoprime, "factor hints share a factor",
                             nlohmann::json{{"i", i + 1}, {"j", j + 1}, {"gcd", g.to_string()}});
      }
    for (const auto& h : *hints)
      if (!h.is_unit()) blocks.push_back(h);
  } else {
    for (const auto& f : squarefree_split(d)) blocks.push_back(f.factor);
  }
  std::vector<PrimeOracle> out;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    out.push_back(block_oracle(blocks[i], "block " + std::to_string(i + 1) + ": " + blocks[i].to_string()));
  return out;
}

// ---------------------------------------------------------------- minors

Poly full_minor(const PolyMatrix& m, const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> rows(m.rows()), c0;
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (std::size_t c : cols) c0.push_back(c - 1);
  return determinant(m.submatrix(rows, c0));
}

MinorIndex to_minor_index(const std::vector<std::size_t>& cols, std::size_t n) {
  MinorIndex idx;
  for (std::size_t c : cols) {
    if (c <= n)
      idx.alpha_cols.push_back(c);
    else
      idx.beta_cols.push_back(c - n);
  }
  return idx;
}

// ---------------------------------------------------------------- good minors

namespace {

GoodMinorResult find_good_minor_impl(const PolyMatrix& m, const PrimeOracle& oracle, bool symmetric,
                                     const Poly& zeta_in, const RegularizeOptions& options,
                                     const std::vector<PrimeOracle>& processed, int phase) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != 2 * n)
    throw AlgebraError(ErrorCode::kShapeMismatch, "expected an n x 2n split matrix");
  Poly zeta = zeta_in.is_zero() ? Poly::constant(m.ring(), 1) : zeta_in;
  Walker walk(m, symmetric);
  const Poly det_alpha = full_minor(m, leading_cols(n));

  for (std::size_t guard = 0; guard <= n; ++guard) {
    std::optional<Cols> best;
    std::size_t best_overlap = n + 1;
    Poly best_value;
    auto picks = subsets_colex(2 * n, n);
    std::sort(picks.begin(), picks.end());
    for (const auto& pick : picks) {
      Cols cols;
      for (std::size_t p : pick) cols.push_back(p + 1);
      Poly v = full_minor(walk.matrix, cols);
      if (oracle.membership(v)) continue;
      std::size_t ov = to_minor_index(cols, n).overlap();
      if (ov < best_overlap) {
        best = cols;
        best_overlap = ov;
        best_value = v;
      }
      if (ov == 0) break;
    }
    if (!best)
      throw AlgebraError(ErrorCode::kNoMinorOutsideIdeal,
                         "every n-minor lies in " + oracle.label + "; the grade hypothesis fails",
                         nlohmann::json{{"oracle", oracle.label}});
    MinorIndex idx = to_minor_index(*best, n);
    if (best_overlap == 0)
      return {idx, best_value, walk.total, walk.matrix, walk.steps};

    std::set<std::size_t> in_i(idx.alpha_cols.begin(), idx.alpha_cols.end());
    std::set<std::size_t> in_j(idx.beta_cols.begin(), idx.beta_cols.end());
    std::size_t h = 0, l = 0;
    for (std::size_t a : idx.alpha_cols)
      if (in_j.count(a)) {
        h = a;
        break;
      }
    for (std::size_t c = 1; c <= n; ++c)
      if (!in_i.count(c) && !in_j.count(c)) {
        l = c;
        break;
      }
    if (h == 0 || l == 0) step_failed("descent indices H, L not found", {{"minor", idx.to_string()}});

    if (options.check_pluecker) {
      Cols a, c{h, n + h, l, n + l};
      for (std::size_t i : idx.alpha_cols)
        if (i != h) a.push_back(i);
      for (std::size_t j : idx.beta_cols)
        if (j != h) a.push_back(n + j);
      c.insert(c.end(), a.begin(), a.end());
      Poly s = pluecker_sum(walk.matrix, a, {}, c);
      if (!s.is_zero()) step_failed("Pluecker sum does not vanish", {{"sum", s.to_string()}});
    }

    MinorIndex next;
    for (std::size_t i : idx.alpha_cols)
      if (i != h) next.alpha_cols.push_back(i);
    next.beta_cols = idx.beta_cols;
    next.beta_cols.push_back(l);
    std::sort(next.beta_cols.begin(), next.beta_cols.end());

    BaseChange op = BaseChange::identity(m.ring(), 2 * n, symmetric);
    op.paired(h, l, zeta);
    walk.apply(op);
    Poly after = split_minor(walk.matrix, next);
    RegularizeStep step{"paired", phase, oracle.label, {h, l}, zeta, idx.to_string(), best_value,
                        next.to_string(), after, {}};
    walk.steps.push_back(step);
    if (oracle.membership(after))
      step_failed("descent minor " + next.to_string() + " lies in " + oracle.label,
                  {{"minor", next.to_string()}, {"value", after.to_string()}});
    if (!(full_minor(walk.matrix, leading_cols(n)) == det_alpha))
      step_failed("paired operation changed det(alpha)", {{"minor", next.to_string()}});
    Poly det_beta = full_minor(walk.matrix, trailing_cols(n));
    for (const auto& o : processed)
      if (o.membership(det_beta))
        step_failed("det(beta) fell into processed " + o.label, {{"det_beta", det_beta.to_string()}});
  }
  step_failed("descent did not terminate within n steps", {{"oracle", oracle.label}});
}

}  // namespace

GoodMinorResult find_good_minor(const PolyMatrix& m, const PrimeOracle& oracle, bool symmetric,
                                const Poly& zeta, const RegularizeOptions& options) {
  if (symmetric && !is_symmetric_split(m))
    throw AlgebraError(ErrorCode::kSymmetryBroken, "matrix is not in symmetric split form");
  return find_good_minor_impl(m, oracle, symmetric, zeta, options, {}, 0);
}

// ---------------------------------------------------------------- lemma variant

RegularizeReport regularize_tau1(const PolyMatrix& m, const std::vector<PrimeOracle>& oracles,
                                 const RegularizeOptions& /*options*/) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != 2 * n)
    throw AlgebraError(ErrorCode::kShapeMismatch, "expected an n x 2n matrix");
  Walker walk(m, false);
  for (std::size_t k = oracles.size(); k-- > 0;) {
    const PrimeOracle& cur = oracles[k];
    std::vector<PrimeOracle> processed(oracles.begin() + static_cast<std::ptrdiff_t>(k) + 1, oracles.end());
    Poly before = full_minor(walk.matrix, leading_cols(n));
    if (!cur.membership(before)) continue;
    auto l = select_min(walk.matrix, cur, false);
    if (!l)
      throw AlgebraError(ErrorCode::kNoMinorOutsideIdeal, "every n-minor lies in " + cur.label,
                         nlohmann::json{{"oracle", cur.label}});
    Poly b = avoid_element(cur, processed, m.ring());
    std::set<std::size_t> small;
    std::size_t big = 0;
    for (std::size_t c : *l) {
      if (c <= n)
        small.insert(c);
      else
        ++big;
    }
    Cols ys;
    for (std::size_t c = 1; c <= n; ++c)
      if (!small.count(c)) ys.push_back(c);
    if (ys.size() != big) step_failed("complement size differs from J", {{"J", big}});
    for (std::size_t nu = 1; nu <= big; ++nu) {
      std::size_t target = ys[nu - 1];
      std::size_t source = (*l)[big - nu];
      Poly v0 = full_minor(walk.matrix, leading_cols(n));
      BaseChange op = BaseChange::identity(m.ring(), 2 * n, false);
      op.column_add(target, source, b);
      walk.apply(op);
      walk.steps.push_back({"column_add", 0, cur.label, {target, source}, b, cols_label(leading_cols(n), n), v0,
                            cols_label(leading_cols(n), n), full_minor(walk.matrix, leading_cols(n)), *l});
    }
    Poly after = full_minor(walk.matrix, leading_cols(n));
    if (cur.membership(after))
      step_failed("det(tau_1) still lies in " + cur.label, {{"det", after.to_string()}});
    for (const auto& o : processed)
      if (o.membership(after)) step_failed("det(tau_1) fell into " + o.label, {{"det", after.to_string()}});
  }
  Poly da = full_minor(walk.matrix, leading_cols(n));
  Poly db = full_minor(walk.matrix, trailing_cols(n));
  RegularizeReport r{walk.total, walk.matrix, da, db, multivariate_gcd(da, db), false, {}, 0, {}};
  r.verified = true;
  for (const auto& o : oracles) {
    r.verified = r.verified && !o.membership(r.det_alpha);
    r.oracle_labels.push_back(o.label);
  }
  r.steps = walk.steps;
  return r;
}

// ---------------------------------------------------------------- symmetric

namespace {

/// Phase 1: det(alpha) leaves the zero oracle via alpha_j += b beta_j.
void phase_one(Walker& walk, const RegularizeOptions& options) {
  const std::size_t n = walk.matrix.rows();
  PrimeOracle zero = zero_oracle(walk.matrix.ring());
  Poly before = full_minor(walk.matrix, leading_cols(n));
  if (!zero.membership(before)) return;
  auto good = find_good_minor_impl(walk.matrix, zero, true, Poly(), options, {}, 1);
  walk.apply(good.change);
  walk.steps.insert(walk.steps.end(), good.steps.begin(), good.steps.end());

  auto l = select_min(walk.matrix, zero, true);
  if (!l) step_failed("no good minor outside (0) after descent", {});
  Poly b = avoid_element(zero, {}, walk.matrix.ring());
  for (std::size_t c : *l) {
    if (c <= n) continue;
    std::size_t j = c - n;
    Poly v0 = full_minor(walk.matrix, leading_cols(n));
    BaseChange op = BaseChange::identity(walk.matrix.ring(), 2 * n, true);
    op.alpha_plus_beta(j, b);
    walk.apply(op);
    walk.steps.push_back({"alpha_plus_beta", 1, zero.label, {j}, b, cols_label(leading_cols(n), n), v0,
                          cols_label(leading_cols(n), n), full_minor(walk.matrix, leading_cols(n)), *l});
  }
  Poly after = full_minor(walk.matrix, leading_cols(n));
  if (after.is_zero()) step_failed("det(alpha) is still zero after phase 1", {{"l", *l}});
}

/// Phase 2: det(beta) leaves every block oracle via beta_j += b alpha_j; det(alpha) is fixed.
void phase_two(Walker& walk, const std::vector<PrimeOracle>& oracles, const RegularizeOptions& options) {
  const std::size_t n = walk.matrix.rows();
  const Poly det_alpha = full_minor(walk.matrix, leading_cols(n));
  for (std::size_t k = oracles.size(); k-- > 0;) {
    const PrimeOracle& cur = oracles[k];
    std::vector<PrimeOracle> processed(oracles.begin() + static_cast<std::ptrdiff_t>(k) + 1, oracles.end());
    if (!cur.membership(full_minor(walk.matrix, trailing_cols(n)))) continue;
    Poly zeta = avoid_element(cur, processed, walk.matrix.ring());
    auto good = find_good_minor_impl(walk.matrix, cur, true, zeta, options, processed, 2);
    walk.apply(good.change);
    walk.steps.insert(walk.steps.end(), good.steps.begin(), good.steps.end());

    auto big_l = select_max(walk.matrix, cur);
    if (!big_l) step_failed("no good minor outside " + cur.label + " after descent", {});
    const Poly& b = zeta;
    for (std::size_t c : *big_l) {
      if (c > n) continue;
      Poly v0 = full_minor(walk.matrix, trailing_cols(n));
      BaseChange op = BaseChange::identity(walk.matrix.ring(), 2 * n, true);
      op.beta_plus_alpha(c, b);
      walk.apply(op);
      walk.steps.push_back({"beta_plus_alpha", 2, cur.label, {c}, b, cols_label(trailing_cols(n), n), v0,
                            cols_label(trailing_cols(n), n), full_minor(walk.matrix, trailing_cols(n)),
                            *big_l});
      if (!(full_minor(walk.matrix, leading_cols(n)) == det_alpha))
        step_failed("phase-2 operation changed det(alpha)", {{"j", c}});
    }
    Poly det_beta = full_minor(walk.matrix, trailing_cols(n));
    if (cur.membership(det_beta))
      step_failed("det(beta) still lies in " + cur.label, {{"det_beta", det_beta.to_string()}});
    for (const auto& o : processed)
      if (o.membership(det_beta))
        step_failed("det(beta) fell into processed " + o.label, {{"det_beta", det_beta.to_string()}});
  }
}

}  // namespace

RegularizeReport regularize_symmetric(const SymmetricResolution& sym, const std::optional<std::vector<Poly>>& hints,
                                      const RegularizeOptions& options) {
  const PolyMatrix phi = PolyMatrix::hstack(sym.alpha, sym.beta);
  const auto ring = phi.ring();
  check_not_char_two(ring);
  const std::size_t n = sym.n;
  if (!is_symmetric_split(phi))
    throw AlgebraError(ErrorCode::kSymmetryBroken, "pair does not satisfy alpha beta^T = beta alpha^T");

  Walker first(phi, true);
  phase_one(first, options);
  const Poly det_alpha = full_minor(first.matrix, leading_cols(n));

  std::vector<PrimeOracle> oracles = default_oracles(det_alpha, hints);
  std::vector<Poly> blocks;
  for (const auto& o : oracles) blocks.push_back(o.block);

  std::optional<AlgebraError> last_error;
  Poly last_gcd;
  PolyMatrix last_matrix = first.matrix;
  std::size_t refinements = 0;
  for (;;) {
    Walker walk = first;
    std::vector<Poly> probes;
    bool ran = false;
    try {
      phase_two(walk, oracles, options);
      ran = true;
    } catch (const AlgebraError& e) {
      if (e.code() != ErrorCode::kStepVerificationFailed && e.code() != ErrorCode::kNoMinorOutsideIdeal) throw;
      last_error = e;
    }
    Poly det_beta = full_minor(walk.matrix, trailing_cols(n));
    Poly g = multivariate_gcd(det_alpha, det_beta);
    if (ran && g.is_unit()) {
      RegularizeReport r{walk.total, walk.matrix, det_alpha, det_beta, g, false, {}, 0, {}};
      r.verified = !det_alpha.is_zero() && coprime(det_alpha, det_beta);
      r.steps = walk.steps;
      r.refinements = refinements;
      for (const auto& o : oracles) r.oracle_labels.push_back(o.label);
      if (!r.verified) step_failed("independent gcd check disagrees", {{"gcd", g.to_string()}});
      return r;
    }
    last_gcd = g;
    last_matrix = walk.matrix;

    probes.push_back(g);
    probes.push_back(det_beta);
    for (const auto& v : minors(walk.matrix, n)) probes.push_back(v);
    std::vector<Poly> refined = refine_blocks(blocks, probes);
    if (refined.size() == blocks.size() || refinements >= options.refine_budget) break;
    ++refinements;
    blocks = refined;
    oracles.clear();
    for (std::size_t i = 0; i < blocks.size(); ++i)
      oracles.push_back(block_oracle(blocks[i], "block " + std::to_string(i + 1) + ": " + blocks[i].to_string()));
  }
  nlohmann::json detail{{"gcd", last_gcd.to_string()},
                        {"det_alpha", det_alpha.to_string()},
                        {"det_beta", full_minor(last_matrix, trailing_cols(n)).to_string()},
                        {"refinements", refinements}};
  if (last_error) detail["cause"] = last_error->what();
  throw AlgebraError(ErrorCode::kVerificationFailed,
                     "gcd(det alpha, det beta) = " + last_gcd.to_string() + " is not a unit", detail);
}

}  // namespace szpiro
