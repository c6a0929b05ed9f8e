#include "dvg/sigma_module.hpp"

#include <algorithm>

#include "dvg/error.hpp"

namespace dvg {

SmithData smith_valuations(const Matrix& a) { return {smith_form(a).valuations}; }

DieudonneModule::DieudonneModule(Matrix phi, std::string provenance)
    : phi_(std::move(phi)), provenance_(std::move(provenance)) {
  if (!phi_.is_square() || phi_.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "phi must be a non-empty square matrix");
  const int n = ring().precision();
  if (n < 2)
    throw Error(ErrorCode::NotADieudonneModule, "precision 1 cannot separate p from 0");
  for (int v : smith_valuations(phi_).valuations) {
    if (v == 0) {
      ++codim_;
    } else if (v == 1) {
      ++dim_;
    } else {
      throw Error(ErrorCode::NotADieudonneModule,
                  "Smith valuation " + std::to_string(v) + " violates pM in phi(M)");
    }
  }
  if (dim_ >= n)
    throw Error(ErrorCode::NotADieudonneModule,
                "det valuation " + std::to_string(dim_) + " is not below precision " + std::to_string(n));
}

DieudonneModule DieudonneModule::with_provenance(std::string provenance) const {
  DieudonneModule copy = *this;
  copy.provenance_ = std::move(provenance);
  return copy;
}

Vector DieudonneModule::apply_phi(const Vector& x) const { return phi_ * frobenius(x, 1); }

Matrix phi_power(const DieudonneModule& m, int n) {
  if (n < 1) throw Error(ErrorCode::MalformedInput, "phi_power needs n >= 1");
  Matrix result = m.phi();
  for (int k = 1; k < n; ++k) result = result * frobenius(m.phi(), k);
  return result;
}

Matrix verschiebung(const DieudonneModule& m) {
  const WittRing& ring = m.ring();
  if (m.dim() >= ring.precision())
    throw Error(ErrorCode::PrecisionExhausted, "cannot divide by det at this precision");
  const SmithForm smith = smith_form(m.phi());
  // p A^{-1} = right * diag(p / d_i) * left.
  Matrix middle(ring, smith.valuations.size(), smith.valuations.size());
  for (std::size_t i = 0; i < smith.valuations.size(); ++i) {
    const WittElem& d = smith.diagonal[i];
    middle(i, i) = smith.valuations[i] == 0 ? ring.p_power(1) * unit_inverse(d)
                                            : unit_inverse(divide_by_p_power(d, 1));
  }
  return frobenius(smith.right * middle * smith.left, -1);
}

Vector apply_verschiebung(const Matrix& v, const Vector& x) { return v * frobenius(x, -1); }

DieudonneModule change_basis(const DieudonneModule& m, const Matrix& u) {
  if (!u.is_square() || u.rows() != m.phi().rows())
    throw Error(ErrorCode::DimensionMismatch, "basis change has the wrong shape");
  return DieudonneModule(inverse(u) * m.phi() * frobenius(u, 1), m.provenance());
}

Perturbation perturb(const DieudonneModule& m, int level, std::uint64_t seed) {
  if (level < 1) throw Error(ErrorCode::MalformedInput, "perturbation level must be >= 1");
  const WittRing& ring = m.ring();
  SplitMix64 rng(seed);
  const auto r = static_cast<std::size_t>(m.rank());
  const Matrix e = random_matrix(ring, r, r, rng);
  Matrix g = Matrix::identity(ring, r) + ring.p_power(level) * e;
  DieudonneModule perturbed(g * m.phi(), m.provenance());
  return {std::move(perturbed), std::move(g)};
}

DieudonneModule twist(const DieudonneModule& m, const Matrix& g) {
  if (!g.is_square() || g.rows() != m.phi().rows())
    throw Error(ErrorCode::DimensionMismatch, "twist has the wrong shape");
  if (!is_invertible(g)) throw Error(ErrorCode::NotInvertible, "twist must lie in GL_M");
  return DieudonneModule(g * m.phi(), m.provenance());
}

DieudonneModule dual(const DieudonneModule& m) {
  return DieudonneModule(frobenius(verschiebung(m), 1).transpose(),
                         m.provenance().empty() ? std::string{} : "dual(" + m.provenance() + ")");
}

}  // namespace dvg
