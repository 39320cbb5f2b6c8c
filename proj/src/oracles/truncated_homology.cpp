#include "truncated_homology.hpp"

#include <map>
#include <stdexcept>

namespace szpiro::oracles {

namespace {

using Exps = std::vector<int>;

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 r = 1, x = b % p;
  for (; e; e >>= 1) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t residue(const Scalar& q, std::uint64_t p) {
  mpz_class num = q.get_num() % static_cast<unsigned long>(p);
  mpz_class den = q.get_den() % static_cast<unsigned long>(p);
  if (num < 0) num += static_cast<unsigned long>(p);
  if (den == 0) throw std::domain_error("denominator vanishes mod p");
  std::uint64_t n = num.get_ui(), d = den.get_ui();
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(n) * powmod(d, p - 2, p) % p);
}

void monomials(const std::vector<int>& w, std::size_t var, int remaining, Exps& cur,
               std::vector<Exps>& out) {
  if (var == w.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e * w[var] <= remaining; ++e) {
    cur[var] = e;
    monomials(w, var + 1, remaining - e * w[var], cur, out);
  }
  cur[var] = 0;
}

struct Piece {
  std::map<std::pair<std::size_t, Exps>, std::size_t> index;
  std::vector<std::pair<std::size_t, Exps>> basis;
};

Piece piece(const std::vector<int>& gen_degrees, const std::vector<int>& w, int d) {
  Piece pc;
  for (std::size_t k = 0; k < gen_degrees.size(); ++k) {
    int rem = d - gen_degrees[k];
    if (rem < 0) continue;
    std::vector<Exps> ms;
    Exps cur(w.size(), 0);
    monomials(w, 0, rem, cur, ms);
    for (auto& m : ms) {
      pc.index[{k, m}] = pc.basis.size();
      pc.basis.push_back({k, m});
    }
  }
  return pc;
}

// Columns indexed by source basis, rows by target basis.
std::vector<std::vector<std::uint64_t>> degree_map(const PolyMatrix& m, const Piece& src,
                                                   const Piece& tgt, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> out(tgt.basis.size(),
                                              std::vector<std::uint64_t>(src.basis.size(), 0));
  for (std::size_t c = 0; c < src.basis.size(); ++c) {
    const auto& [l, mono] = src.basis[c];
    for (std::size_t k = 0; k < m.rows(); ++k)
      for (const auto& t : m(k, l).terms()) {
        Exps e = mono;
        for (std::size_t v = 0; v < e.size(); ++v) e[v] += t.mono[v];
        auto it = tgt.index.find({k, e});
        if (it == tgt.index.end()) throw std::domain_error("entry degree does not match grading");
        auto& cell = out[it->second][c];
        cell = (cell + residue(t.coeff, p)) % p;
      }
  }
  return out;
}

}  // namespace

std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    std::uint64_t inv = powmod(m[r][c], p - 2, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      std::uint64_t f = static_cast<std::uint64_t>(static_cast<unsigned __int128>(m[i][c]) * inv % p);
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = static_cast<std::uint64_t>(
            (m[i][j] + static_cast<unsigned __int128>(p - f) * m[r][j]) % p);
    }
    ++r;
  }
  return r;
}

TruncatedHomology truncated_homology(const FreeResolution& res, int max_degree, std::uint64_t p) {
  if (!res.grading) throw std::invalid_argument("truncated homology needs grading data");
  const auto& g = *res.grading;
  std::vector<int> w = g.weights.empty() ? std::vector<int>(res.ring()->nvars(), 1) : g.weights;
  TruncatedHomology out;
  for (int d = 0; d <= max_degree; ++d) {
    Piece f0 = piece(g.q_degrees, w, d), f1 = piece(g.r_degrees, w, d), f2 = piece(g.s_degrees, w, d);
    std::size_t rank_phi = f1.basis.empty() || f0.basis.empty()
                               ? 0
                               : rank_mod_p(degree_map(res.phi, f1, f0, p), p);
    std::size_t rank_psi = f2.basis.empty() || f1.basis.empty()
                               ? 0
                               : rank_mod_p(degree_map(res.psi, f2, f1, p), p);
    out.h1.push_back(f1.basis.size() - rank_phi - rank_psi);
    out.h2.push_back(f2.basis.size() - rank_psi);
    if (out.h1.back() || out.h2.back()) out.exact = false;
  }
  return out;
}

}  // namespace szpiro::oracles
