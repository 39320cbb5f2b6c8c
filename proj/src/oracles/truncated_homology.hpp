#pragma once

#include <cstdint>
#include <vector>

#include "szpiro/resolution.hpp"

namespace szpiro::oracles {

/// Homology dimensions of a graded length-2 complex in each degree 0..max_degree,
/// computed by dense linear algebra over F_p on the truncated graded pieces.
struct TruncatedHomology {
  std::vector<std::size_t> h1;  // ker phi_d / im psi_d
  std::vector<std::size_t> h2;  // ker psi_d
  bool exact = true;
};

TruncatedHomology truncated_homology(const FreeResolution& res, int max_degree,
                                     std::uint64_t p = 32003);

/// Rank of a dense matrix over F_p.
std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p);

}  // namespace szpiro::oracles
