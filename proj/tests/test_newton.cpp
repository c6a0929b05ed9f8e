#include <doctest.h>

#include <set>
#include <vector>

#include "dvg/constructions.hpp"
#include "dvg/error.hpp"
#include "dvg/newton.hpp"
#include "oracles.hpp"

using namespace dvg;

TEST_CASE("lower hull") {
  using P = PointValue;
  CHECK(np_from_points(std::vector<P>{{0, 0}, {2, 1}}).to_string() == "{1/2x2}");
  CHECK(np_from_points(std::vector<P>{{0, 0}, {1, 0}, {2, 1}}).to_string() == "{0/1x1, 1/1x1}");
  CHECK(np_from_points(std::vector<P>{{0, 0}, {1, 5}, {2, 1}}).to_string() == "{1/2x2}");
  CHECK(np_from_points(std::vector<P>{{0, 0}, {1, std::nullopt}, {2, 1}, {3, std::nullopt}, {5, 3}}).to_string() ==
        "{1/2x2, 2/3x3}");
  // Collinear points merge into one segment.
  CHECK(np_from_points(std::vector<P>{{0, 0}, {1, 0}, {2, 0}, {4, 2}, {6, 4}}).to_string() == "{0/1x2, 1/1x4}");
  CHECK_THROWS_AS(np_from_points(std::vector<P>{{0, 1}, {2, 1}}), Error);
  CHECK_THROWS_AS(np_from_points(std::vector<P>{{0, 0}, {2, std::nullopt}}), Error);
  CHECK_THROWS_AS(np_from_points(std::vector<P>{{0, 0}, {1, 3}}), Error);
}

TEST_CASE("polygon basics") {
  const NewtonPolygon np({{Rational(1, 2), 2}, {Rational(2, 3), 3}});
  CHECK(np.rank() == 5);
  CHECK(np.height() == 3);
  CHECK(np.codim() == 2);
  CHECK(np.evaluate(2) == Rational(1));
  CHECK(np.evaluate(Rational(7, 2)) == Rational(2));
  CHECK(np.breakpoints() == std::vector<int>{0, 2, 5});
  CHECK(np.reflect().to_string() == "{1/3x3, 1/2x2}");
  CHECK(np.reflect().reflect() == np);
  CHECK_THROWS_AS(NewtonPolygon({{Rational(1, 2), 3}}), Error);
  CHECK_THROWS_AS(NewtonPolygon({{Rational(2, 3), 3}, {Rational(1, 2), 2}}), Error);
  CHECK_THROWS_AS(NewtonPolygon({{Rational(3, 2), 2}}), Error);
}

TEST_CASE("simple blocks") {
  CHECK(np_to_simple_blocks(NewtonPolygon({{Rational(3, 5), 5}})) == std::vector<SimpleBlock>{{2, 3}});
  CHECK(np_to_simple_blocks(NewtonPolygon({{Rational(1, 2), 4}})) == std::vector<SimpleBlock>{{1, 1}, {1, 1}});
  CHECK(np_to_simple_blocks(NewtonPolygon({{Rational(0), 2}, {Rational(1), 3}})) ==
        std::vector<SimpleBlock>{{1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}});
  const std::vector<SimpleBlock> mixed{{1, 2}, {1, 1}, {2, 4}};
  CHECK(NewtonPolygon::from_blocks(mixed).to_string() == "{1/2x2, 2/3x9}");
}

TEST_CASE("enumeration against the lattice oracle") {
  CHECK(np_enumerate(1, 1).size() == 2);
  CHECK(np_enumerate(3, 0).size() == 1);
  CHECK(np_enumerate(3, 0).front().to_string() == "{0/1x3}");
  for (int c = 0; c <= 4; ++c)
    for (int d = 0; d <= 4; ++d) {
      if (c + d == 0) continue;
      CAPTURE(c);
      CAPTURE(d);
      const auto list = np_enumerate(c, d);
      std::set<std::string> seen;
      for (const auto& np : list) {
        CHECK(np.rank() == c + d);
        CHECK(np.height() == d);
        CHECK(NewtonPolygon::from_blocks(np_to_simple_blocks(np)) == np);
        seen.insert(np.to_string());
      }
      CHECK(seen.size() == list.size());
      CHECK(seen == oracle::lattice_polygons(c, d));
    }
  const auto n23 = np_enumerate(2, 3);
  std::set<std::string> names;
  for (const auto& np : n23) names.insert(np.to_string());
  CHECK(names.count("{3/5x5}"));
  CHECK(names.count("{1/2x2, 2/3x3}"));
  CHECK(names.count("{0/1x2, 1/1x3}"));
  CHECK_FALSE(names.count("{2/5x5}"));
}

TEST_CASE("partial order") {
  const NewtonPolygon ordinary({{Rational(0), 1}, {Rational(1), 1}});
  const NewtonPolygon ss({{Rational(1, 2), 2}});
  CHECK(np_compare(ss, ss) == NpOrder::equal);
  CHECK(np_compare(ordinary, ss) == NpOrder::strictly_below);
  CHECK(np_compare(ss, ordinary) == NpOrder::strictly_above);
  const NewtonPolygon a({{Rational(1, 2), 2}, {Rational(2, 3), 3}}), b({{Rational(3, 5), 5}});
  CHECK(np_compare(a, b) == NpOrder::strictly_below);
  CHECK_THROWS_AS(np_compare(a, ss), Error);

  const NewtonPolygon x({{Rational(0), 2}, {Rational(2, 3), 3}});
  const NewtonPolygon y({{Rational(1, 4), 4}, {Rational(1), 1}});
  CHECK(np_compare(x, y) == NpOrder::incomparable);

  // Axioms on N_{2,3}, and the enumeration order extends the partial order.
  const auto list = np_enumerate(2, 3);
  for (std::size_t i = 0; i < list.size(); ++i) {
    CHECK(lies_above(list[i], list[i]));
    for (std::size_t j = 0; j < list.size(); ++j) {
      const bool ij = lies_above(list[i], list[j]), ji = lies_above(list[j], list[i]);
      if (ij && ji) CHECK(i == j);
      if (ij && i != j) CHECK(j < i);
      const NpOrder o = np_compare(list[i], list[j]);
      CHECK(o == (i == j ? NpOrder::equal
                  : ij   ? NpOrder::strictly_above
                  : ji   ? NpOrder::strictly_below
                         : NpOrder::incomparable));
      for (std::size_t k = 0; k < list.size(); ++k)
        if (ij && lies_above(list[j], list[k])) CHECK(lies_above(list[i], list[k]));
    }
  }
}

TEST_CASE("Newton polygon of a module") {
  const WittRing r = WittRing::make({2, 1, 10});
  CHECK(np_of_module(build_simple_minimal(r, 1, 1)).to_string() == "{1/2x2}");
  CHECK(np_of_module(build_simple_minimal(r, 2, 3)).to_string() == "{3/5x5}");
  CHECK(np_of_module(DieudonneModule(Matrix::identity(r, 3))).to_string() == "{0/1x3}");
  for (const auto& np : np_enumerate(2, 3)) CHECK(np_of_module(build_minimal(r, np)) == np);

  const WittRing r9 = WittRing::make({3, 2, 12});
  for (const auto& np : np_enumerate(3, 2)) CHECK(np_of_module(build_minimal(r9, np)) == np);

  // N must exceed deg * d + 1.
  const WittRing tight = WittRing::make({2, 1, 4});
  CHECK_THROWS_AS(np_of_module(build_simple_minimal(tight, 2, 3)), Error);
}

TEST_CASE("cutoff bounds") {
  const CutoffBounds b23 = bounds(2, 3);
  CHECK(b23.j == 2);
  CHECK(b23.n_bound == 7);
  CHECK(b23.r == 5);
  CHECK(bounds(1, 1).j == 1);
  CHECK(bounds(5, 5).j == 3);
  CHECK(bounds(8, 8).j == 4);
  CHECK(bounds(3, 5).isosimple_q_bound == 1);
  for (int c = 1; c <= 8; ++c)
    for (int d = 1; d <= 8; ++d) CHECK(bounds(c, d).j == oracle::cutoff(c, d));
  CHECK_THROWS_AS(bounds(0, 3), Error);
}
