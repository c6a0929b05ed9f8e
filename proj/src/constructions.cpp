#include "dvg/constructions.hpp"

#include <vector>

#include "dvg/error.hpp"

namespace dvg {

DieudonneModule build_simple_minimal(const WittRing& ring, int c, int d) {
  if (c < 0 || d < 0 || c + d < 1) throw Error(ErrorCode::MalformedInput, "need c, d >= 0 and c + d >= 1");
  const int r = c + d;
  Matrix a(ring, r, r);
  for (int l = 0; l < r; ++l) a((d + l) % r, l) = l < c ? ring.one() : ring.p_power(1);
  return DieudonneModule(std::move(a), "minimal");
}

DieudonneModule build_minimal(const WittRing& ring, const NewtonPolygon& np) {
  std::vector<Matrix> blocks;
  for (const auto& b : np_to_simple_blocks(np)) blocks.push_back(build_simple_minimal(ring, b.c, b.d).phi());
  return DieudonneModule(block_diagonal(blocks), "minimal");
}

WitnessPair build_traverso_witness(const WittRing& ring, int c, int d) {
  const CutoffBounds b = bounds(c, d);
  if (b.j < 2) throw Error(ErrorCode::JTooSmall, "ceil(cd/(c+d)) = 1, no witness exists");
  const int r = b.r;
  const int j = b.j;

  Matrix a(ring, r, r);
  for (int i = 0; i < r; ++i) a((i + 1) % r, i) = i < c ? ring.one() : ring.p_power(1);

  Matrix g = Matrix::identity(ring, r);
  g(0, c) = ring.p_power(j - 1);

  Matrix twisted = a;
  twisted(0, c - 1) = ring.p_power(j - 1);

  const std::vector<Segment> twisted_segments{{Rational(j - 1, c), c}, {Rational(1) - Rational(j - 1, d), d}};
  return WitnessPair{
      DieudonneModule(std::move(a), "traverso-witness-base"),
      DieudonneModule(std::move(twisted), "traverso-witness-twisted"),
      std::move(g),
      j,
      j - 1,
      NewtonPolygon({{Rational(d, r), r}}),
      NewtonPolygon(twisted_segments),
  };
}

}  // namespace dvg
