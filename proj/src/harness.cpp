#include "dvg/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <thread>

#include "dvg/error.hpp"
#include "dvg/rng.hpp"

namespace dvg {

namespace {

constexpr int kCyclicBudget = 64;

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::all_stable ? "all-stable" : "counterexample-found";
}

int default_precision(int deg, int c, int d) {
  const int j = (c >= 1 && d >= 1) ? bounds(c, d).j : 0;
  return deg * d + j + 4;
}

ExperimentReport verify_cutoff_upper(const DieudonneModule& m, int level, int trials, std::uint64_t seed,
                                     std::span<const Matrix> injected, int threads) {
  const auto start = std::chrono::steady_clock::now();
  const WittRing& ring = m.ring();
  if (level < 1) throw Error(ErrorCode::MalformedInput, "level must be >= 1");
  if (trials < 0) throw Error(ErrorCode::MalformedInput, "trials must be >= 0");
  if (static_cast<int>(injected.size()) > trials)
    throw Error(ErrorCode::MalformedInput, "more injected twists than trials");
  if (level >= ring.precision() - ring.deg() * m.dim() - 1)
    throw Error(ErrorCode::PrecisionExhausted,
                "level " + std::to_string(level) + " leaves no headroom at precision " +
                    std::to_string(ring.precision()));
  const Matrix identity = Matrix::identity(ring, static_cast<std::size_t>(m.rank()));
  for (const auto& g : injected) {
    if (!congruent(g, identity, level))
      throw Error(ErrorCode::MalformedInput, "injected twist is not congruent to 1 mod p^level");
  }

  ExperimentReport report;
  report.provenance = m.provenance();
  report.c = m.codim();
  report.d = m.dim();
  report.p = ring.p();
  report.deg = ring.deg();
  report.precision = ring.precision();
  report.subject_polygon = np_of_module(m);
  report.level = level;
  report.trials = trials;
  report.seed = seed;
  report.outcomes.resize(static_cast<std::size_t>(trials));

  auto run_trial = [&](int i) {
    const bool is_injected = i < static_cast<int>(injected.size());
    const DieudonneModule perturbed =
        is_injected ? twist(m, injected[i]) : perturb(m, level, stream_seed(seed, static_cast<std::uint64_t>(i))).module;
    TrialOutcome& out = report.outcomes[static_cast<std::size_t>(i)];
    out.index = i;
    out.injected = is_injected;
    out.polygon = np_of_module(perturbed);
    out.differs = !(out.polygon == report.subject_polygon);
  };

  const int workers = std::clamp(threads, 1, std::max(1, trials));
  if (workers == 1) {
    for (int i = 0; i < trials; ++i) run_trial(i);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (int i = w; i < trials; i += workers) run_trial(i);
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  const bool any = std::any_of(report.outcomes.begin(), report.outcomes.end(),
                               [](const TrialOutcome& o) { return o.differs; });
  report.verdict = any ? Verdict::counterexample_found : Verdict::all_stable;
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool WitnessReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

WitnessReport witness_lower(int c, int d, std::uint64_t p, int deg, int random_trials, std::uint64_t seed,
                            std::optional<int> precision) {
  const int n = precision.value_or(default_precision(deg, c, d));
  const WittRing ring = WittRing::make({p, deg, n});
  const WitnessPair pair = build_traverso_witness(ring, c, d);

  WitnessReport rep;
  rep.c = c;
  rep.d = d;
  rep.j = pair.j;
  rep.p = p;
  rep.deg = deg;
  rep.precision = n;
  rep.congruence_level = pair.congruence_level;
  rep.expected_base = pair.expected_base_np;
  rep.expected_twisted = pair.expected_twisted_np;
  rep.base_linearization = np_of_module(pair.base);
  rep.twisted_linearization = np_of_module(pair.twisted);
  rep.base_qx = formula_one(pair.base, kCyclicBudget, seed);
  rep.twisted_qx = formula_one(pair.twisted, kCyclicBudget, seed);

  const std::array<Matrix, 1> injected{pair.twist};
  rep.experiment = verify_cutoff_upper(pair.base, pair.congruence_level, 1 + std::max(0, random_trials), seed, injected);

  auto check = [&](std::string name, bool passed) { rep.checks.push_back({std::move(name), passed}); };
  check("matrices congruent mod p^(j-1)", congruent(pair.base.phi(), pair.twisted.phi(), pair.congruence_level));
  check("twist reproduces the twisted module", twist(pair.base, pair.twist).phi() == pair.twisted.phi());
  check("base polygon is {d/r x r}", rep.base_linearization == rep.expected_base);
  check("twisted polygon is {(j-1)/c x c, 1-(j-1)/d x d}", rep.twisted_linearization == rep.expected_twisted);
  check("polygons differ", !(rep.base_linearization == rep.twisted_linearization));
  check("twisted polygon at c equals j-1", rep.twisted_linearization.evaluate(c) == Rational(pair.j - 1));
  check("cyclic vector found for base", rep.base_qx.has_value());
  check("cyclic vector found for twisted", rep.twisted_qx.has_value());
  check("base: both routes agree", rep.base_qx && rep.base_qx->polygon == rep.base_linearization);
  check("twisted: both routes agree", rep.twisted_qx && rep.twisted_qx->polygon == rep.twisted_linearization);
  check("injected twist changes the polygon",
        !rep.experiment.outcomes.empty() && rep.experiment.outcomes.front().differs);
  return rep;
}

std::vector<BoundsRow> run_table(int c_max, int d_max) {
  if (c_max < 1 || d_max < 1) throw Error(ErrorCode::MalformedInput, "table bounds must be >= 1");
  std::vector<BoundsRow> rows;
  for (int c = 1; c <= c_max; ++c)
    for (int d = 1; d <= d_max; ++d) {
      const CutoffBounds b = bounds(c, d);
      rows.push_back({c, d, b.j, b.n_bound, b.j >= 2});
    }
  return rows;
}

}  // namespace dvg
