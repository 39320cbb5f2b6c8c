#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szpiro/resolution.hpp"

namespace szpiro::fixtures {

/// Q[x,y,z,w] with grevlex.
RingPtr qxyzw();

struct Fixture {
  std::string name;
  std::string summary;
  FreeResolution res;
  /// Candidate isomorphism coker(phi) -> coker(psi^T), when one is known.
  std::optional<PolyMatrix> u;
};

/// Koszul complex of x, y.
Fixture e1();
/// Cusp surface resolution with the naive column order (not symmetric).
Fixture e2();
/// Same cokernel as e2 with columns arranged symmetrically.
Fixture e2_symmetric();
/// alpha = [[x,y],[y,z]], beta = w*I.
Fixture e3();
/// A complex whose psi-rank ideal has depth 1.
Fixture nonexact();
/// alpha = diag(x,y), beta = diag(z,w).
Fixture diagonal();
/// alpha = [[x,x],[x,x]], beta = w*I.
Fixture degenerate();
/// alpha = [[w,y],[0,z]], beta = [[-x,0],[-y,w]].
Fixture scrambled();

/// 2 x 4 split matrix [[x,0,0,z],[y,0,w,0]] used for the non-symmetric variant.
PolyMatrix lemma_matrix();

std::vector<Fixture> all();
std::optional<Fixture> by_name(const std::string& name);

}  // namespace szpiro::fixtures
