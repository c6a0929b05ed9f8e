#include "dvg/formula_one.hpp"

#include "dvg/error.hpp"

namespace dvg {

namespace {

struct Orbits {
  std::vector<Vector> phi;    // x, phi x, ..., phi^c x
  std::vector<Vector> theta;  // theta x, ..., theta^d x
};

Orbits orbits(const DieudonneModule& m, const Matrix& v, const Vector& x) {
  Orbits o;
  o.phi.push_back(x);
  for (int i = 0; i < m.codim(); ++i) o.phi.push_back(m.apply_phi(o.phi.back()));
  Vector t = x;
  for (int l = 0; l < m.dim(); ++l) {
    t = apply_verschiebung(v, t);
    o.theta.push_back(t);
  }
  return o;
}

Matrix basis_from(const DieudonneModule& m, const Orbits& o) {
  std::vector<Vector> cols(o.phi.begin(), o.phi.begin() + m.codim());
  cols.insert(cols.end(), o.theta.begin(), o.theta.end());
  return Matrix::from_columns(m.ring(), cols);
}

QxData solve_relation(const DieudonneModule& m, const Orbits& o) {
  const WittRing& ring = m.ring();
  const int c = m.codim(), d = m.dim();
  // Unknowns a_1..a_c, b_1..b_d against columns phi^{c-1}x, ..., x, theta x, ..., theta^d x.
  std::vector<Vector> cols;
  for (int i = c - 1; i >= 0; --i) cols.push_back(o.phi[i]);
  cols.insert(cols.end(), o.theta.begin(), o.theta.end());
  Vector rhs = o.phi[c];
  for (auto& e : rhs) e = -e;

  Vector y;
  try {
    y = solve(Matrix::from_columns(ring, cols), rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInvertible) throw;
    throw Error(ErrorCode::DegenerateKernel, "a_0 cannot be normalized to a unit for this x");
  }

  QxData q;
  q.c = c;
  q.d = d;
  q.coeffs.push_back(ring.one());
  for (int i = 0; i < c; ++i) q.coeffs.push_back(y[i]);
  for (int l = 1; l <= d; ++l) {
    q.b.push_back(y[c + l - 1]);
    q.coeffs.push_back(ring.p_power(l) * q.b.back());
  }
  if (d > 0 && !q.b.back().is_unit()) throw Error(ErrorCode::DegenerateKernel, "b_d is not a unit");
  for (const auto& a : q.coeffs) q.valuations.push_back(valuation(a));
  q.polygon = np_from_qx(q);
  return q;
}

template <typename Accept>
auto search(const DieudonneModule& m, int budget, std::uint64_t seed, Accept accept)
    -> decltype(accept(Vector{}, Orbits{})) {
  const Matrix v = verschiebung(m);
  const auto r = static_cast<std::size_t>(m.rank());
  SplitMix64 rng(seed);
  for (int k = 0; k < budget; ++k) {
    Vector x;
    if (static_cast<std::size_t>(k) < r) {
      x.assign(r, m.ring().zero());
      x[k] = m.ring().one();
    } else {
      x = random_vector(m.ring(), r, rng);
    }
    if (auto found = accept(x, orbits(m, v, x))) return found;
  }
  return std::nullopt;
}

}  // namespace

int a_number(const DieudonneModule& m) {
  const Matrix& a = m.phi();
  const Matrix v = verschiebung(m);
  const std::size_t r = a.rows();
  Matrix both(m.ring(), r, 2 * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      both(i, j) = a(i, j);
      both(i, r + j) = v(i, j);
    }
  return static_cast<int>(r - residue_rank(both));
}

Matrix cyclic_basis_matrix(const DieudonneModule& m, const Vector& x) {
  if (x.size() != static_cast<std::size_t>(m.rank()))
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from rank");
  return basis_from(m, orbits(m, verschiebung(m), x));
}

std::optional<CyclicVector> find_cyclic_vector(const DieudonneModule& m, int budget, std::uint64_t seed) {
  return search(m, budget, seed, [&](const Vector& x, const Orbits& o) -> std::optional<CyclicVector> {
    Matrix basis = basis_from(m, o);
    if (!is_invertible(basis)) return std::nullopt;
    return CyclicVector{x, std::move(basis)};
  });
}

QxData qx_coefficients(const DieudonneModule& m, const CyclicVector& x) {
  return solve_relation(m, orbits(m, verschiebung(m), x.x));
}

NewtonPolygon np_from_qx(const QxData& qx) {
  std::vector<PointValue> points;
  for (std::size_t i = 0; i < qx.valuations.size(); ++i) points.push_back({static_cast<int>(i), qx.valuations[i]});
  return np_from_points(points);
}

std::optional<QxData> formula_one(const DieudonneModule& m, int budget, std::uint64_t seed) {
  return search(m, budget, seed, [&](const Vector&, const Orbits& o) -> std::optional<QxData> {
    if (!is_invertible(basis_from(m, o))) return std::nullopt;
    try {
      return solve_relation(m, o);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateKernel) return std::nullopt;
      throw;
    }
  });
}

}  // namespace dvg
