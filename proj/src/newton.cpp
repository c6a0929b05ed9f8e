#include "dvg/newton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dvg/error.hpp"

namespace dvg {

NewtonPolygon::NewtonPolygon(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(ErrorCode::MalformedInput, "polygon has no segments");
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const Segment& s = segments_[k];
    if (s.mult <= 0) throw Error(ErrorCode::MalformedInput, "multiplicity must be positive");
    if (s.slope < Rational(0) || s.slope > Rational(1))
      throw Error(ErrorCode::MalformedInput, "slope " + s.slope.to_string() + " outside [0, 1]");
    if (s.mult % s.slope.den() != 0)
      throw Error(ErrorCode::MalformedInput,
                  "segment " + s.slope.to_string() + "x" + std::to_string(s.mult) + " ends off the lattice");
    if (k > 0 && !(segments_[k - 1].slope < s.slope))
      throw Error(ErrorCode::MalformedInput, "slopes must increase strictly");
  }
}

NewtonPolygon NewtonPolygon::from_blocks(std::span<const SimpleBlock> blocks) {
  std::map<Rational, int> by_slope;
  for (const auto& b : blocks) {
    if (b.c < 0 || b.d < 0 || b.c + b.d < 1)
      throw Error(ErrorCode::MalformedInput, "block needs c, d >= 0 and c + d >= 1");
    by_slope[Rational(b.d, b.c + b.d)] += b.c + b.d;
  }
  std::vector<Segment> segs;
  for (const auto& [slope, mult] : by_slope) segs.push_back({slope, mult});
  return NewtonPolygon(std::move(segs));
}

int NewtonPolygon::rank() const {
  int r = 0;
  for (const auto& s : segments_) r += s.mult;
  return r;
}

int NewtonPolygon::height() const {
  std::int64_t d = 0;
  for (const auto& s : segments_) d += s.mult / s.slope.den() * s.slope.num();
  return static_cast<int>(d);
}

Rational NewtonPolygon::evaluate(const Rational& t) const {
  Rational x(0), y(0);
  for (const auto& s : segments_) {
    const Rational end = x + Rational(s.mult);
    if (t <= end) return y + s.slope * (t - x);
    y = y + s.slope * Rational(s.mult);
    x = end;
  }
  return y;
}

std::vector<int> NewtonPolygon::breakpoints() const {
  std::vector<int> xs{0};
  for (const auto& s : segments_) xs.push_back(xs.back() + s.mult);
  return xs;
}

NewtonPolygon NewtonPolygon::reflect() const {
  std::vector<Segment> segs;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
    segs.push_back({Rational(1) - it->slope, it->mult});
  return NewtonPolygon(std::move(segs));
}

std::string NewtonPolygon::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (k) out += ", ";
    out += segments_[k].slope.to_string() + "x" + std::to_string(segments_[k].mult);
  }
  return out + "}";
}

std::vector<Segment> lower_hull(std::span<const PointValue> points) {
  if (points.empty()) throw Error(ErrorCode::MalformedInput, "no points");
  std::set<int> seen;
  int r = 0;
  for (const auto& pt : points) {
    if (pt.i < 0) throw Error(ErrorCode::MalformedInput, "negative abscissa");
    if (!seen.insert(pt.i).second) throw Error(ErrorCode::MalformedInput, "duplicate abscissa");
    r = std::max(r, pt.i);
  }
  std::vector<std::pair<int, int>> finite;
  bool has_origin = false;
  for (const auto& pt : points) {
    if (pt.i == 0) has_origin = pt.v.has_value() && *pt.v == 0;
    if (pt.i == r && !pt.v) throw Error(ErrorCode::MalformedInput, "last point must be finite");
    if (pt.v) finite.emplace_back(pt.i, *pt.v);
  }
  if (!has_origin) throw Error(ErrorCode::MalformedInput, "point (0, 0) is required");
  if (r < 1) throw Error(ErrorCode::MalformedInput, "need a point with i >= 1");
  std::sort(finite.begin(), finite.end());

  // Andrew's monotone chain, lower half; collinear middle points are dropped.
  std::vector<std::pair<int, int>> hull;
  for (const auto& q : finite) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const std::int64_t cross = std::int64_t(b.first - a.first) * (q.second - a.second) -
                                 std::int64_t(b.second - a.second) * (q.first - a.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(q);
  }
  std::vector<Segment> segs;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const int dx = hull[k].first - hull[k - 1].first;
    segs.push_back({Rational(hull[k].second - hull[k - 1].second, dx), dx});
  }
  return segs;
}

NewtonPolygon np_from_points(std::span<const PointValue> points) { return NewtonPolygon(lower_hull(points)); }

NewtonPolygon np_of_module(const DieudonneModule& m) {
  const WittRing& ring = m.ring();
  const int deg = ring.deg();
  if (ring.precision() <= deg * m.dim() + 1)
    throw Error(ErrorCode::PrecisionExhausted,
                "need precision > deg*d + 1 = " + std::to_string(deg * m.dim() + 1));
  const auto coeffs = characteristic_polynomial(phi_power(m, deg));
  std::vector<PointValue> points;
  for (std::size_t i = 0; i < coeffs.size(); ++i) points.push_back({static_cast<int>(i), valuation(coeffs[i])});
  if (!points.back().v) throw Error(ErrorCode::PrecisionExhausted, "determinant vanishes at this precision");

  std::vector<Segment> segs;
  for (const auto& s : lower_hull(points)) segs.push_back({s.slope / Rational(deg), s.mult});
  try {
    return NewtonPolygon(std::move(segs));
  } catch (const Error& e) {
    throw std::logic_error(std::string("np_of_module produced an invalid polygon: ") + e.what());
  }
}

std::string_view to_string(NpOrder order) {
  switch (order) {
    case NpOrder::equal: return "equal";
    case NpOrder::above: return "above";
    case NpOrder::strictly_above: return "strictly_above";
    case NpOrder::below: return "below";
    case NpOrder::strictly_below: return "strictly_below";
    case NpOrder::incomparable: return "incomparable";
  }
  return "incomparable";
}

NpOrder np_compare(const NewtonPolygon& a, const NewtonPolygon& b) {
  if (a.rank() != b.rank() || a.height() != b.height())
    throw Error(ErrorCode::EndpointMismatch, a.to_string() + " vs " + b.to_string());
  std::set<int> xs;
  for (int x : a.breakpoints()) xs.insert(x);
  for (int x : b.breakpoints()) xs.insert(x);
  bool ge = true, le = true;
  for (int x : xs) {
    const Rational va = a.evaluate(x), vb = b.evaluate(x);
    if (va < vb) ge = false;
    if (va > vb) le = false;
  }
  if (ge && le) return NpOrder::equal;
  if (ge) return NpOrder::strictly_above;
  if (le) return NpOrder::strictly_below;
  return NpOrder::incomparable;
}

bool lies_above(const NewtonPolygon& a, const NewtonPolygon& b) {
  const NpOrder o = np_compare(a, b);
  return o == NpOrder::equal || o == NpOrder::strictly_above;
}

namespace {

void enumerate_blocks(std::span<const SimpleBlock> kinds, std::size_t start, int c_left, int d_left,
                      std::vector<SimpleBlock>& current, std::vector<NewtonPolygon>& out) {
  if (c_left == 0 && d_left == 0) {
    out.push_back(NewtonPolygon::from_blocks(current));
    return;
  }
  for (std::size_t k = start; k < kinds.size(); ++k) {
    if (kinds[k].c > c_left || kinds[k].d > d_left) continue;
    current.push_back(kinds[k]);
    enumerate_blocks(kinds, k, c_left - kinds[k].c, d_left - kinds[k].d, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<NewtonPolygon> np_enumerate(int c, int d) {
  if (c < 0 || d < 0 || c + d < 1) throw Error(ErrorCode::MalformedInput, "need c, d >= 0 and c + d >= 1");
  std::vector<SimpleBlock> kinds;
  for (int ci = 0; ci <= c; ++ci)
    for (int di = 0; di <= d; ++di)
      if (ci + di >= 1 && std::gcd(ci, di) == 1) kinds.push_back({ci, di});
  std::vector<NewtonPolygon> out;
  std::vector<SimpleBlock> current;
  enumerate_blocks(kinds, 0, c, d, current, out);

  const int r = c + d;
  auto key = [r](const NewtonPolygon& np) {
    std::vector<Rational> v;
    for (int t = 1; t < r; ++t) v.push_back(np.evaluate(t));
    return v;
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

std::vector<SimpleBlock> np_to_simple_blocks(const NewtonPolygon& np) {
  std::vector<SimpleBlock> blocks;
  for (const auto& s : np.segments()) {
    const auto a = static_cast<int>(s.slope.num());
    const auto b = static_cast<int>(s.slope.den());
    for (int k = 0; k < s.mult / b; ++k) blocks.push_back({b - a, a});
  }
  return blocks;
}

CutoffBounds bounds(int c, int d) {
  if (c < 1 || d < 1) throw Error(ErrorCode::MalformedInput, "bounds need c, d >= 1");
  const int r = c + d;
  auto ceil_div = [](int a, int b) { return (a + b - 1) / b; };
  CutoffBounds b{c, d, r, ceil_div(c * d, r), c * d + 1, ceil_div((c - 1) * (d - 1), r)};
  if (std::gcd(c, d) == 1 && b.isosimple_q_bound != b.j - 1)
    throw std::logic_error("isosimple bound disagrees with j - 1 for a coprime pair");
  return b;
}

}  // namespace dvg
