#include <doctest.h>

#include <array>

#include "dvg/error.hpp"
#include "dvg/harness.hpp"
#include "dvg/json_io.hpp"

using namespace dvg;

TEST_CASE("defaults") {
  CHECK(default_precision(1, 2, 3) == 3 + 2 + 4);
  CHECK(default_precision(2, 3, 3) == 6 + 2 + 4);
  CHECK(default_precision(1, 3, 0) == 4);
}

TEST_CASE("stability at the cutoff") {
  const WittRing r = WittRing::make({2, 1, default_precision(1, 2, 3)});
  const DieudonneModule h23 = build_simple_minimal(r, 2, 3);
  const ExperimentReport rep = verify_cutoff_upper(h23, 2, 200, 42);
  CHECK(rep.outcomes.size() == 200);
  CHECK(rep.verdict == Verdict::all_stable);
  CHECK(rep.subject_polygon.to_string() == "{3/5x5}");

  const ExperimentReport empty = verify_cutoff_upper(h23, 2, 0, 1);
  CHECK(empty.outcomes.empty());
  CHECK(empty.verdict == Verdict::all_stable);
}

TEST_CASE("injected twist below the cutoff") {
  const WittRing r = WittRing::make({2, 1, 9});
  const WitnessPair w = build_traverso_witness(r, 2, 3);
  const std::array<Matrix, 1> inj{w.twist};
  const ExperimentReport rep = verify_cutoff_upper(w.base, 1, 10, 3, inj);
  CHECK(rep.outcomes[0].injected);
  CHECK(rep.outcomes[0].differs);
  CHECK(rep.outcomes[0].polygon.to_string() == "{1/2x2, 2/3x3}");
  CHECK(rep.verdict == Verdict::counterexample_found);

  // The twist is not = 1 mod p^2.
  CHECK_THROWS_AS(verify_cutoff_upper(w.base, 2, 10, 3, inj), Error);
  CHECK_THROWS_AS(verify_cutoff_upper(w.base, 1, 0, 3, inj), Error);
}

TEST_CASE("argument checks") {
  const WittRing r = WittRing::make({2, 1, 9});
  const DieudonneModule h23 = build_simple_minimal(r, 2, 3);
  auto code = [&](int level) {
    try {
      verify_cutoff_upper(h23, level, 1, 0);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NotFound;
  };
  CHECK(code(0) == ErrorCode::MalformedInput);
  CHECK(code(5) == ErrorCode::PrecisionExhausted);
  CHECK(code(4) == ErrorCode::NotFound);
}

TEST_CASE("reports do not depend on thread count") {
  const WittRing r = WittRing::make({3, 2, 12});
  const DieudonneModule m = build_minimal(r, NewtonPolygon({{Rational(1, 3), 3}, {Rational(1, 2), 2}}));
  const ExperimentReport one = verify_cutoff_upper(m, 2, 24, 9, {}, 1);
  const ExperimentReport four = verify_cutoff_upper(m, 2, 24, 9, {}, 4);
  CHECK(report_body(one).dump() == report_body(four).dump());
  CHECK(one.verdict == Verdict::all_stable);
}

TEST_CASE("witness report") {
  const WitnessReport rep = witness_lower(2, 3, 2, 1, 5, 7);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  CHECK(rep.ok());
  CHECK(rep.j == 2);
  CHECK(rep.congruence_level == 1);
  CHECK(rep.experiment.trials == 6);

  const WitnessReport rep33 = witness_lower(3, 3, 3);
  CHECK(rep33.ok());
  CHECK(rep33.base_linearization.to_string() == "{1/2x6}");
  CHECK(rep33.twisted_linearization.to_string() == "{1/3x3, 2/3x3}");

  CHECK(witness_lower(2, 3, 2, 3).ok());
  CHECK_THROWS_AS(witness_lower(1, 2, 2), Error);
}

TEST_CASE("bounds table") {
  const auto one = run_table(1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].j == 1);
  CHECK_FALSE(one[0].witness_available);
  const auto table = run_table(5, 5);
  CHECK(table.size() == 25);
  for (const auto& row : table) {
    if (row.c == 5 && row.d == 5) CHECK(row.j == 3);
    if (row.c == 2 && row.d == 3) {
      CHECK(row.j == 2);
      CHECK(row.n_bound == 7);
      CHECK(row.witness_available);
    }
  }
  CHECK_THROWS_AS(run_table(0, 2), Error);
}
