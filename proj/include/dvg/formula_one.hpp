#pragma once

// The a-number and the cyclic-vector route to the Newton polygon: find x with
// {x, phi x, ..., phi^{c-1} x, theta x, ..., theta^d x} a basis, solve the
// relation psi = sum a_{c-i} phi^i + sum b_l theta^l annihilating x, and read
// the polygon off the valuations of (a_0, ..., a_r), a_{c+l} = p^l b_l.

#include <cstdint>
#include <optional>
#include <vector>

#include "dvg/newton.hpp"
#include "dvg/sigma_module.hpp"

namespace dvg {

/// dim M / (phi(M) + theta(M)) = r - rank_{F_q} [A mod p | V mod p].
int a_number(const DieudonneModule& m);

struct CyclicVector {
  Vector x;
  /// Columns x, phi x, ..., phi^{c-1} x, theta x, ..., theta^d x.
  Matrix basis_matrix;
};

/// The candidate basis matrix for x (no invertibility check).
Matrix cyclic_basis_matrix(const DieudonneModule& m, const Vector& x);

/// Tries e_0, ..., e_{r-1}, then vectors drawn from SplitMix64(seed), at most
/// `budget` candidates in total, and returns the first whose basis matrix is
/// invertible.
std::optional<CyclicVector> find_cyclic_vector(const DieudonneModule& m, int budget, std::uint64_t seed = 0);

struct QxData {
  int c = 0;
  int d = 0;
  /// a_0, ..., a_r with a_0 = 1 and a_{c+l} = p^l b_l.
  std::vector<WittElem> coeffs;
  /// b_1, ..., b_d.
  std::vector<WittElem> b;
  /// v_p(a_i); std::nullopt for coefficients that vanish at working precision.
  std::vector<std::optional<int>> valuations;
  NewtonPolygon polygon;
};

/// Solves the relation for a cyclic vector, normalized to a_0 = 1.
/// Throws DegenerateKernel when b_d is not a unit, PrecisionExhausted when
/// theta cannot be formed.
QxData qx_coefficients(const DieudonneModule& m, const CyclicVector& x);

/// Lower hull of (i, v_p(a_i)) over the nonzero coefficients.
NewtonPolygon np_from_qx(const QxData& qx);

/// Walks the same candidate sequence as find_cyclic_vector and returns the
/// first QxData that solves cleanly, or std::nullopt once the budget is spent.
std::optional<QxData> formula_one(const DieudonneModule& m, int budget, std::uint64_t seed = 0);

}  // namespace dvg
