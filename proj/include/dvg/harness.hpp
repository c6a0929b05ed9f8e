#pragma once

// Perturbation experiments. A trial replaces phi by G phi with G = 1 mod p^level
// (the congruence model of equal truncations) and compares Newton polygons.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dvg/constructions.hpp"
#include "dvg/formula_one.hpp"
#include "dvg/newton.hpp"

namespace dvg {

enum class Verdict { all_stable, counterexample_found };

std::string_view to_string(Verdict v);

struct TrialOutcome {
  int index = 0;
  /// Explicit twist supplied by the caller rather than a seeded draw.
  bool injected = false;
  NewtonPolygon polygon;
  bool differs = false;
};

struct ExperimentReport {
  std::string provenance;
  int c = 0;
  int d = 0;
  std::uint64_t p = 0;
  int deg = 0;
  int precision = 0;
  NewtonPolygon subject_polygon;
  int level = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<TrialOutcome> outcomes;
  Verdict verdict = Verdict::all_stable;
  /// Not part of the deterministic report body.
  double wall_time_s = 0.0;
};

/// N = deg * d + j + 4 with j = ceil(cd/(c+d)) (0 when c or d is 0).
int default_precision(int deg, int c, int d);

/// Runs `trials` perturbations at `level`. The first injected.size() trials use
/// the given twists (each must be = 1 mod p^level); trial i >= injected.size()
/// draws E from SplitMix64(stream_seed(seed, i)). Trials may run on `threads`
/// workers; results are assembled by index so the report is independent of it.
/// Throws MalformedInput (level < 1, too many injected twists, twist not
/// congruent to 1), PrecisionExhausted (level >= N - deg * d - 1).
ExperimentReport verify_cutoff_upper(const DieudonneModule& m, int level, int trials, std::uint64_t seed,
                                     std::span<const Matrix> injected = {}, int threads = 1);

struct NamedCheck {
  std::string name;
  bool passed = false;
};

struct WitnessReport {
  int c = 0;
  int d = 0;
  int j = 0;
  std::uint64_t p = 0;
  int deg = 0;
  int precision = 0;
  int congruence_level = 0;
  NewtonPolygon expected_base;
  NewtonPolygon expected_twisted;
  NewtonPolygon base_linearization;
  NewtonPolygon twisted_linearization;
  std::optional<QxData> base_qx;
  std::optional<QxData> twisted_qx;
  /// Base module at level j - 1 with the witness twist injected as trial 0.
  ExperimentReport experiment;
  std::vector<NamedCheck> checks;

  bool ok() const;
};

/// Builds the witness pair and checks it both ways (characteristic polynomial
/// of phi^deg and the cyclic-vector relation). `random_trials` extra seeded
/// level-(j-1) perturbations of the base are recorded as observations.
/// Throws JTooSmall when j = 1.
WitnessReport witness_lower(int c, int d, std::uint64_t p, int deg = 1, int random_trials = 0,
                            std::uint64_t seed = 0, std::optional<int> precision = std::nullopt);

struct BoundsRow {
  int c = 0;
  int d = 0;
  int j = 0;
  int n_bound = 0;
  bool witness_available = false;
};

std::vector<BoundsRow> run_table(int c_max, int d_max);

}  // namespace dvg
