#pragma once

// Newton polygons normalized as lower convex functions on [0, r] with
// N(0) = 0, N(r) = d, nondecreasing slopes in [0, 1] and lattice breakpoints.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dvg/rational.hpp"
#include "dvg/sigma_module.hpp"

namespace dvg {

struct Segment {
  Rational slope;
  int mult = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// A coprime pair (c_i, d_i): the simple block H_{c_i, d_i} of slope d_i / (c_i + d_i).
struct SimpleBlock {
  int c = 0;
  int d = 0;

  friend bool operator==(const SimpleBlock&, const SimpleBlock&) = default;
};

class NewtonPolygon {
 public:
  NewtonPolygon() = default;
  /// Throws MalformedInput unless slopes lie in [0, 1], increase strictly,
  /// multiplicities are positive and every breakpoint is a lattice point.
  explicit NewtonPolygon(std::vector<Segment> segments);

  /// Sorts blocks by slope and merges equal slopes.
  static NewtonPolygon from_blocks(std::span<const SimpleBlock> blocks);

  const std::vector<Segment>& segments() const { return segments_; }
  int rank() const;
  /// d = N(r).
  int height() const;
  int codim() const { return rank() - height(); }

  Rational evaluate(const Rational& t) const;
  /// x-coordinates of all vertices, including 0 and r.
  std::vector<int> breakpoints() const;
  /// Slope reflection lambda -> 1 - lambda with order reversed (the Cartier dual's polygon).
  NewtonPolygon reflect() const;

  /// e.g. "{1/2x2, 2/3x3}".
  std::string to_string() const;

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

 private:
  std::vector<Segment> segments_;
};

struct PointValue {
  int i = 0;
  /// std::nullopt means infinite (a zero coefficient); such points are skipped.
  std::optional<int> v;
};

/// Lower convex hull of the finite points, from (0, 0) to (r, v_r).
/// Throws MalformedInput on duplicate or negative abscissae, a missing (0, 0),
/// an infinite last point, or slopes outside [0, 1].
NewtonPolygon np_from_points(std::span<const PointValue> points);

/// Lower hull segments without the [0, 1] and lattice checks.
std::vector<Segment> lower_hull(std::span<const PointValue> points);

/// Slopes of the isocrystal: the characteristic polynomial of phi^deg (a linear
/// map, since sigma^deg = id) has Newton slopes deg times those of phi.
/// Requires N > deg * d + 1; throws PrecisionExhausted otherwise.
NewtonPolygon np_of_module(const DieudonneModule& m);

/// "above" means N1(t) >= N2(t) for all t. Since equality is reported on its
/// own, np_compare returns only equal, strictly_above, strictly_below or
/// incomparable; the non-strict labels exist for callers that relax a result.
enum class NpOrder { equal, above, strictly_above, below, strictly_below, incomparable };

std::string_view to_string(NpOrder order);

/// Throws EndpointMismatch when (r, d) differ.
NpOrder np_compare(const NewtonPolygon& a, const NewtonPolygon& b);

/// N1 lies above N2 (non-strict).
bool lies_above(const NewtonPolygon& a, const NewtonPolygon& b);

/// All polygons of codimension c and dimension d, ordered by their values at
/// t = 1, ..., r - 1 (a linear extension of the partial order; lowest first).
std::vector<NewtonPolygon> np_enumerate(int c, int d);

/// Segment a/b x (m b) expands into m copies of (b - a, a); ordered by slope.
std::vector<SimpleBlock> np_to_simple_blocks(const NewtonPolygon& np);

struct CutoffBounds {
  int c = 0;
  int d = 0;
  int r = 0;
  /// ceil(c d / r): the isogeny cutoff b_{c,d}.
  int j = 0;
  /// c d + 1.
  int n_bound = 0;
  /// ceil((c - 1)(d - 1) / r).
  int isosimple_q_bound = 0;
};

/// Requires c, d >= 1 (MalformedInput otherwise).
CutoffBounds bounds(int c, int d);

}  // namespace dvg
