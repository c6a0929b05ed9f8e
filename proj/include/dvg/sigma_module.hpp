#pragma once

// Dieudonne modules (M, phi): a free W/p^N-module of rank r with a
// sigma-linear phi satisfying pM in phi(M). Matrices use the column
// convention: column j holds the coordinates of phi(e_j), so
// phi(sum_j m_j e_j) = A * sigma(m).

#include <cstdint>
#include <string>
#include <vector>

#include "dvg/matrix.hpp"

namespace dvg {

struct SmithData {
  /// Nondecreasing; N means "zero at working precision".
  std::vector<int> valuations;
};

SmithData smith_valuations(const Matrix& a);

class DieudonneModule {
 public:
  /// Validates pM in phi(M) through the Smith valuations of `phi` (all in {0, 1})
  /// and that det(phi) is nonzero at the working precision.
  /// Throws NotADieudonneModule, DimensionMismatch.
  explicit DieudonneModule(Matrix phi, std::string provenance = {});

  const WittRing& ring() const { return phi_.ring(); }
  const Matrix& phi() const { return phi_; }
  int rank() const { return static_cast<int>(phi_.rows()); }
  /// c = dim phi(M)/pM.
  int codim() const { return codim_; }
  /// d = dim M/phi(M).
  int dim() const { return dim_; }
  const std::string& provenance() const { return provenance_; }
  DieudonneModule with_provenance(std::string provenance) const;

  /// phi(x) = A sigma(x).
  Vector apply_phi(const Vector& x) const;

 private:
  Matrix phi_;
  int codim_ = 0;
  int dim_ = 0;
  std::string provenance_;
};

/// Matrix of phi^n: A sigma(A) ... sigma^{n-1}(A). Requires n >= 1.
Matrix phi_power(const DieudonneModule& m, int n);

/// Matrix V of the sigma^{-1}-linear Verschiebung, V = sigma^{-1}(p A^{-1}),
/// so that A sigma(V) = p I and V sigma^{-1}(A) = p I. Throws PrecisionExhausted
/// when d >= N.
Matrix verschiebung(const DieudonneModule& m);

/// theta(x) = V sigma^{-1}(x) for V = verschiebung(m).
Vector apply_verschiebung(const Matrix& v, const Vector& x);

/// Semilinear base change: U^{-1} A sigma(U). Throws NotInvertible.
DieudonneModule change_basis(const DieudonneModule& m, const Matrix& u);

struct Perturbation {
  DieudonneModule module;
  /// G = I + p^t E.
  Matrix g;
};

/// (M, G phi) with G = I + p^level E, E drawn from SplitMix64(seed) by
/// random_matrix. level >= N yields G = I. Throws MalformedInput for level < 1.
Perturbation perturb(const DieudonneModule& m, int level, std::uint64_t seed);

/// (M, G phi) for an explicit G, which must be invertible.
DieudonneModule twist(const DieudonneModule& m, const Matrix& g);

/// Cartier dual in the dual basis: entry (i, j) is sigma(V_{j,i}); (c, d) swap.
/// p A^{-1} is determined only mod p^{N-1}, so dual(dual(m)) recovers m mod p^{N-1}.
DieudonneModule dual(const DieudonneModule& m);

}  // namespace dvg
