#pragma once

// Explicit modules: the simple minimal blocks H_{c,d}, their products H_0,
// and the witness pair showing the cutoff ceil(cd/(c+d)) is attained.
// All bases are 0-indexed.

#include "dvg/newton.hpp"
#include "dvg/sigma_module.hpp"

namespace dvg {

/// phi(e_l) = e_{d+l} for l < c and phi(e_l) = p e_{d+l} for l >= c,
/// indices mod r = c + d. Coprimality is not required by the formula.
DieudonneModule build_simple_minimal(const WittRing& ring, int c, int d);

/// Block diagonal sum of build_simple_minimal over np_to_simple_blocks(np),
/// in nondecreasing slope order.
DieudonneModule build_minimal(const WittRing& ring, const NewtonPolygon& np);

struct WitnessPair {
  /// phi(e_i) = e_{i+1} for i < c, phi(e_i) = p e_{i+1 mod r} for i >= c.
  DieudonneModule base;
  /// As base, except phi(e_{c-1}) = p^{j-1} e_0 + e_c.
  DieudonneModule twisted;
  /// twisted = twist * base, with twist = I + p^{j-1} E_{0,c}.
  Matrix twist;
  int j = 0;
  int congruence_level = 0;  // j - 1
  NewtonPolygon expected_base_np;     // {d/r x r}
  NewtonPolygon expected_twisted_np;  // {(j-1)/c x c, 1-(j-1)/d x d}
};

/// Requires c, d >= 1; throws JTooSmall when ceil(cd/r) = 1.
WitnessPair build_traverso_witness(const WittRing& ring, int c, int d);

}  // namespace dvg
