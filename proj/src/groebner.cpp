#include "szpiro/groebner.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include <nlohmann/json.hpp>

#include "szpiro/error.hpp"

namespace szpiro {

// ---------------------------------------------------------------- vectors

Vec zero_vec(const RingPtr& ring, std::size_t rank) { return Vec(rank, Poly(ring)); }

Vec unit_vec(const RingPtr& ring, std::size_t rank, std::size_t index) {
  Vec v = zero_vec(ring, rank);
  v.at(index) = Poly::constant(ring, 1);
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw AlgebraError(ErrorCode::kRankMismatch, "vector lengths differ");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw AlgebraError(ErrorCode::kRankMismatch, "vector lengths differ");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec operator*(const Poly& c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

// ---------------------------------------------------------------- engine

namespace {

struct Elem {
  Vec v;
  std::size_t pos = 0;
  Vec rep;  // coefficients over the original generators; empty when not tracking
  const Monomial& lm() const { return v[pos].leading_monomial(); }
  const Scalar& lc() const { return v[pos].leading_coeff(); }
};

std::size_t lead_pos(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return v.size();
}

void sub_scaled(Vec& acc, const Scalar& c, const Monomial& m, const Vec& other, std::size_t from) {
  for (std::size_t k = from; k < acc.size(); ++k)
    if (!other[k].is_zero()) acc[k] = acc[k].minus_term_times(c, m, other[k]);
}

struct Reduction {
  Vec remainder;
  std::vector<Poly> quotients;  // per basis element
};

// Full reduction of v against g. Elements whose lead position is p only touch
// positions >= p, so positions are processed left to right.
Reduction reduce(const RingPtr& ring, Vec v, const std::vector<Elem>& g, bool want_quotients,
                 std::size_t skip = static_cast<std::size_t>(-1)) {
  Reduction out;
  out.remainder = zero_vec(ring, v.size());
  if (want_quotients) out.quotients.assign(g.size(), Poly(ring));
  std::vector<std::vector<Term>> q_terms(want_quotients ? g.size() : 0);
  for (std::size_t p = 0; p < v.size(); ++p) {
    std::vector<Term> rem;
    while (!v[p].is_zero()) {
      const Term& lt = v[p].leading_term();
      std::size_t hit = g.size();
      for (std::size_t k = 0; k < g.size(); ++k)
        if (k != skip && g[k].pos == p && g[k].lm().divides(lt.mono)) {
          hit = k;
          break;
        }
      if (hit == g.size()) {
        rem.push_back(lt);
        v[p] = v[p].tail();
        continue;
      }
      Scalar c = ring->reduce(lt.coeff * ring->inverse(g[hit].lc()));
      Monomial m = lt.mono / g[hit].lm();
      if (want_quotients) q_terms[hit].push_back({m, c});
      sub_scaled(v, c, m, g[hit].v, p);
    }
    out.remainder[p] = Poly(ring, std::move(rem));
  }
  for (std::size_t k = 0; k < q_terms.size(); ++k)
    out.quotients[k] = Poly(ring, std::move(q_terms[k]));
  return out;
}

Vec combine_reps(const RingPtr& ring, const std::vector<Poly>& quotients,
                 const std::vector<Elem>& g, std::size_t width) {
  Vec out = zero_vec(ring, width);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (!quotients[k].is_zero())
      for (std::size_t i = 0; i < width; ++i)
        if (!g[k].rep[i].is_zero()) out[i] += quotients[k] * g[k].rep[i];
  return out;
}

void make_monic(const RingPtr& ring, Elem& e) {
  if (e.lc() == 1) return;
  Scalar inv = ring->inverse(e.lc());
  for (auto& p : e.v) p = p.scaled(inv);
  for (auto& p : e.rep) p = p.scaled(inv);
}

struct Completion {
  std::vector<Elem> basis;
  std::size_t spairs = 0;
};

Completion buchberger(const RingPtr& ring, std::size_t rank, const std::vector<Vec>& gens,
                      bool track) {
  Completion out;
  std::vector<Elem> g;
  const std::size_t width = gens.size();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (is_zero(gens[k])) continue;
    Elem e{gens[k], lead_pos(gens[k]), {}};
    if (track) e.rep = unit_vec(ring, width, k);
    make_monic(ring, e);
    g.push_back(std::move(e));
  }

  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      if (g[i].pos == g[j].pos) pending.insert({i, j});
  };
  for (std::size_t j = 0; j < g.size(); ++j) add_pairs(j);

  const std::size_t budget = ring->spair_budget();
  while (!pending.empty()) {
    // Normal strategy: smallest lcm first.
    auto best = pending.begin();
    Monomial best_lcm = lcm(g[best->first].lm(), g[best->second].lm());
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = lcm(g[it->first].lm(), g[it->second].lm());
      int cmp = ring->compare(l, best_lcm);
      if (cmp < 0 || (cmp == 0 && g[it->first].pos > g[best->first].pos)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);
    if (++out.spairs > budget)
      throw AlgebraError(ErrorCode::kResourceLimit,
                         "S-pair budget of " + std::to_string(budget) + " exceeded",
                         nlohmann::json{{"spair_budget", budget}});

    if (rank == 1 && g[i].lm().coprime(g[j].lm())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j || g[k].pos != g[i].pos) continue;
      if (!g[k].lm().divides(best_lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      chain = !pending.count(key(i, k)) && !pending.count(key(j, k));
    }
    if (chain) continue;

    const Monomial mi = best_lcm / g[i].lm();
    const Monomial mj = best_lcm / g[j].lm();
    Vec s = zero_vec(ring, rank);
    sub_scaled(s, -1, mi, g[i].v, g[i].pos);
    sub_scaled(s, 1, mj, g[j].v, g[j].pos);
    Reduction r = reduce(ring, std::move(s), g, track);
    if (is_zero(r.remainder)) continue;
    Elem e{std::move(r.remainder), 0, {}};
    e.pos = lead_pos(e.v);
    if (track) {
      Vec rep = zero_vec(ring, width);
      sub_scaled(rep, -1, mi, g[i].rep, 0);
      sub_scaled(rep, 1, mj, g[j].rep, 0);
      e.rep = rep - combine_reps(ring, r.quotients, g, width);
    }
    make_monic(ring, e);
    g.push_back(std::move(e));
    add_pairs(g.size() - 1);
  }

  // Minimalize.
  std::vector<Elem> minimal;
  for (std::size_t k = 0; k < g.size(); ++k) {
    bool redundant = false;
    for (std::size_t h = 0; h < g.size() && !redundant; ++h) {
      if (h == k || g[h].pos != g[k].pos || !g[h].lm().divides(g[k].lm())) continue;
      redundant = !(g[h].lm() == g[k].lm()) || h < k;
    }
    if (!redundant) minimal.push_back(g[k]);
  }
  // Interreduce; leading terms are untouched so the order of updates is irrelevant.
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    Elem& e = minimal[k];
    Reduction r = reduce(ring, e.v, minimal, track, k);
    // The lead term survives as it is not divisible by any other lead.
    if (track) e.rep = e.rep - combine_reps(ring, r.quotients, minimal, width);
    e.v = std::move(r.remainder);
    make_monic(ring, e);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Elem& a, const Elem& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    return ring->compare(a.lm(), b.lm()) > 0;
  });
  out.basis = std::move(minimal);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Submodule

struct Submodule::State {
  std::once_flag plain_once;
  std::vector<Elem> plain;
  std::vector<Vec> plain_vecs;
  std::size_t spairs = 0;
  std::once_flag tracked_once;
  std::vector<Elem> tracked;
};

Submodule::Submodule(RingPtr ring, std::size_t rank, std::vector<Vec> generators)
    : ring_(std::move(ring)), rank_(rank), gens_(std::move(generators)),
      state_(std::make_shared<State>()) {
  for (auto& v : gens_) {
    if (v.size() != rank_)
      throw AlgebraError(ErrorCode::kRankMismatch,
                         "generator of length " + std::to_string(v.size()) + " in rank " +
                             std::to_string(rank_) + " module");
    for (auto& p : v)
      if (!p.ring()) p = Poly(ring_);
  }
}

const std::vector<Vec>& Submodule::basis() const {
  std::call_once(state_->plain_once, [this] {
    Completion c = buchberger(ring_, rank_, gens_, false);
    state_->spairs = c.spairs;
    state_->plain_vecs.clear();
    for (const auto& e : c.basis) state_->plain_vecs.push_back(e.v);
    state_->plain = std::move(c.basis);
  });
  return state_->plain_vecs;
}

std::size_t Submodule::spairs_processed() const {
  basis();
  return state_->spairs;
}

DivisionWitness Submodule::normal_form_with_witness(const Vec& v) const {
  if (v.size() != rank_)
    throw AlgebraError(ErrorCode::kRankMismatch, "vector length " + std::to_string(v.size()) +
                                                     " against rank " + std::to_string(rank_));
  basis();
  Vec w = v;
  for (auto& p : w)
    if (!p.ring()) p = Poly(ring_);
  Reduction r = reduce(ring_, std::move(w), state_->plain, true);
  return {std::move(r.remainder), std::move(r.quotients)};
}

Vec Submodule::normal_form(const Vec& v) const { return normal_form_with_witness(v).remainder; }

bool Submodule::contains(const Vec& v) const { return is_zero(normal_form(v)); }

bool Submodule::contains(const Submodule& other) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const Vec& v) { return contains(v); });
}

std::optional<std::vector<Poly>> Submodule::lift(const Vec& v) const {
  if (v.size() != rank_) throw AlgebraError(ErrorCode::kRankMismatch, "lift: vector length mismatch");
  std::call_once(state_->tracked_once,
                 [this] { state_->tracked = buchberger(ring_, rank_, gens_, true).basis; });
  Vec w = v;
  for (auto& p : w)
    if (!p.ring()) p = Poly(ring_);
  Reduction r = reduce(ring_, std::move(w), state_->tracked, true);
  if (!is_zero(r.remainder)) return std::nullopt;
  return combine_reps(ring_, r.quotients, state_->tracked, gens_.size());
}

std::vector<Vec> groebner_basis(const Submodule& m) { return m.basis(); }

DivisionWitness normal_form_with_witness(const Vec& v, const Submodule& m) {
  return m.normal_form_with_witness(v);
}

// ---------------------------------------------------------------- Ideal

namespace {

std::vector<Poly> drop_zeros(std::vector<Poly> gens) {
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Poly& p) { return p.is_zero(); }),
             gens.end());
  return gens;
}

std::vector<Vec> as_vectors(const std::vector<Poly>& gens) {
  std::vector<Vec> out;
  for (const auto& g : gens) out.push_back(Vec{g});
  return out;
}

}  // namespace

Ideal::Ideal(RingPtr ring, std::vector<Poly> generators)
    : gens_(drop_zeros(std::move(generators))), module_(ring, 1, as_vectors(gens_)) {}

Ideal Ideal::unit(const RingPtr& ring) { return Ideal(ring, {Poly::constant(ring, 1)}); }

std::vector<Poly> Ideal::basis() const {
  std::vector<Poly> out;
  for (const auto& v : module_.basis()) out.push_back(v[0]);
  return out;
}

Poly Ideal::normal_form(const Poly& f) const { return module_.normal_form(Vec{f})[0]; }

bool Ideal::contains(const Poly& f) const { return normal_form(f).is_zero(); }

bool Ideal::contains(const Ideal& other) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const Poly& f) { return contains(f); });
}

bool Ideal::is_unit() const {
  const auto& b = module_.basis();
  return b.size() == 1 && b[0][0].is_unit();
}

std::optional<std::vector<Poly>> Ideal::lift(const Poly& f) const { return module_.lift(Vec{f}); }

Ideal operator+(const Ideal& a, const Ideal& b) {
  std::vector<Poly> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  return Ideal(a.ring(), std::move(gens));
}

std::vector<Poly> groebner_basis(const Ideal& i) { return i.basis(); }

// ---------------------------------------------------------------- dimension

DimensionDepth dimension_and_depth(const Ideal& j) {
  const std::size_t n = j.ring()->nvars();
  const auto basis = j.basis();
  if (j.is_unit()) return {-1, kInfiniteDepth};
  std::vector<std::uint32_t> supports;
  for (const auto& g : basis) {
    std::uint32_t s = 0;
    const Monomial& m = g.leading_monomial();
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] > 0) s |= 1U << i;
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint32_t set = 0; set < (1U << n); ++set) {
    const int size = __builtin_popcount(set);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [&](std::uint32_t s) { return (s & ~set) == 0; });
    if (independent) best = size;
  }
  return {best, static_cast<int>(n) - best};
}

// ---------------------------------------------------------------- quotients

Ideal quotient(const Submodule& m, const Vec& v) {
  const RingPtr& ring = m.ring();
  const std::size_t r = m.rank();
  if (v.size() != r) throw AlgebraError(ErrorCode::kRankMismatch, "quotient: vector length mismatch");
  if (is_zero(v)) return Ideal::unit(ring);
  std::vector<Vec> gens;
  Vec head = v;
  head.push_back(Poly::constant(ring, 1));
  gens.push_back(std::move(head));
  for (const auto& g : m.generators()) {
    Vec e = g;
    e.push_back(Poly(ring));
    gens.push_back(std::move(e));
  }
  Submodule big(ring, r + 1, std::move(gens));
  std::vector<Poly> out;
  for (const auto& b : big.basis())
    if (lead_pos(b) == r) out.push_back(b[r]);
  return Ideal(ring, std::move(out));
}

Ideal quotient(const Ideal& i, const Poly& f) {
  if (f.is_zero()) throw AlgebraError(ErrorCode::kZeroDivisorQuery, "quotient by zero");
  return quotient(i.as_module(), Vec{f});
}

Submodule quotient(const Submodule& m, const Poly& f) {
  if (f.is_zero()) throw AlgebraError(ErrorCode::kZeroDivisorQuery, "quotient by zero");
  const RingPtr& ring = m.ring();
  const std::size_t r = m.rank();
  if (f.is_unit()) return m;
  std::vector<Vec> gens;
  for (const auto& g : m.generators()) {
    Vec e = g;
    e.insert(e.end(), g.begin(), g.end());
    gens.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < r; ++i) {
    Vec e = zero_vec(ring, 2 * r);
    e[i] = f;
    gens.push_back(std::move(e));
  }
  Submodule big(ring, 2 * r, std::move(gens));
  std::vector<Vec> out;
  for (const auto& b : big.basis()) {
    if (lead_pos(b) < r) continue;
    Vec w(b.begin() + static_cast<std::ptrdiff_t>(r), b.end());
    for (auto& p : w) p = exact_divide(p, f);
    out.push_back(std::move(w));
  }
  return Submodule(ring, r, std::move(out));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  const RingPtr& ring = a.ring();
  std::vector<Vec> gens;
  for (const auto& g : a.generators()) gens.push_back(Vec{g, g});
  for (const auto& h : b.generators()) gens.push_back(Vec{h, Poly(ring)});
  Submodule big(ring, 2, std::move(gens));
  std::vector<Poly> out;
  for (const auto& v : big.basis())
    if (lead_pos(v) == 1) out.push_back(v[1]);
  return Ideal(ring, std::move(out));
}

Ideal annihilator_of_cokernel(const Submodule& m) {
  const RingPtr& ring = m.ring();
  Ideal ann = Ideal::unit(ring);
  for (std::size_t i = 0; i < m.rank(); ++i) {
    Ideal qi = quotient(m, unit_vec(ring, m.rank(), i));
    ann = i == 0 ? qi : intersect(ann, qi);
  }
  return Ideal(ring, ann.basis());
}

bool is_nonzerodivisor(const Poly& f, const Submodule& m) {
  if (f.is_zero()) return m.rank() == 0;
  return m.contains(quotient(m, f));
}

}  // namespace szpiro
