// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance [path-to-dvg-binary]

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <set>
#include <thread>
#include <vector>

#include <unistd.h>

#include "dvg/cli.hpp"
#include "dvg/error.hpp"
#include "dvg/json_io.hpp"
#include "oracles.hpp"

using namespace dvg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  Outcome result(std::string summary) const {
    Outcome o;
    o.pass = failed_ == 0;
    o.detail = std::move(summary) + ", " + std::to_string(checks_) + " checks";
    for (const auto& f : failures_) o.detail += "; failed: " + f;
    if (failed_ > static_cast<int>(failures_.size()))
      o.detail += "; +" + std::to_string(failed_ - static_cast<int>(failures_.size())) + " more";
    return o;
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

int worker_count() { return static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1u, 8u)); }

bool coprime(int c, int d) { return std::gcd(c, d) == 1; }

std::string pair_name(int c, int d) { return "(" + std::to_string(c) + "," + std::to_string(d) + ")"; }

Outcome minimal_slopes() {
  Tally t;
  for (std::uint64_t p : {2, 3, 5})
    for (int r = 1; r <= 6; ++r)
      for (int c = 0; c <= r; ++c) {
        const int d = r - c;
        if (!coprime(c, d)) continue;
        const WittRing ring = WittRing::make({p, 1, default_precision(1, c, d)});
        const NewtonPolygon np = np_of_module(build_simple_minimal(ring, c, d));
        const NewtonPolygon want({{Rational(d, r), r}});
        t.require(np == want, "p=" + std::to_string(p) + " " + pair_name(c, d) + " gave " + np.to_string());
      }
  return t.result("coprime c+d<=6, p in {2,3,5}");
}

Outcome witness_sharpness(double& worst) {
  Tally t;
  for (std::uint64_t p : {2, 3})
    for (int c = 1; c <= 5; ++c)
      for (int d = 1; d <= 5; ++d) {
        if (oracle::cutoff(c, d) < 2) continue;
        const auto start = std::chrono::steady_clock::now();
        const WitnessReport rep = witness_lower(c, d, p, 1, 0, 1);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        worst = std::max(worst, secs);
        const std::string tag = "p=" + std::to_string(p) + " " + pair_name(c, d);
        const int j = rep.j;
        t.require(rep.base_linearization == NewtonPolygon({{Rational(d, c + d), c + d}}), tag + " base");
        t.require(rep.twisted_linearization ==
                      NewtonPolygon({{Rational(j - 1, c), c}, {Rational(1) - Rational(j - 1, d), d}}),
                  tag + " twisted");
        for (const auto& check : rep.checks) t.require(check.passed, tag + " " + check.name);
        t.require(secs < 1.0, tag + " took " + std::to_string(secs) + " s");
        if (c == 2 && d == 3) {
          t.require(rep.twisted_qx.has_value(), tag + " Q~ computed");
          if (rep.twisted_qx) {
            const auto& v = rep.twisted_qx->valuations;
            t.require(v.size() == 6 && v[0] == 0 && v[c] == j - 1 && v[c + d] == d, tag + " Q~ endpoints");
            const std::vector<std::optional<int>> pattern{0, std::nullopt, 1, std::nullopt, std::nullopt, 3};
            t.require(v == pattern, tag + " Q~ = t^5 + t^3 + 3 pattern");
          }
        }
      }
  return t.result("c,d<=5 with j>=2, p in {2,3}");
}

Outcome upper_stability(int& modules) {
  Tally t;
  const int threads = worker_count();
  for (std::uint64_t p : {2, 3})
    for (int r = 1; r <= 6; ++r)
      for (int c = 0; c <= r; ++c) {
        const int d = r - c;
        const int j = (c >= 1 && d >= 1) ? bounds(c, d).j : 0;
        const int level = std::max(j, 1);
        const WittRing ring = WittRing::make({p, 1, default_precision(1, c, d)});
        for (const auto& np : np_enumerate(c, d)) {
          ++modules;
          const DieudonneModule m = build_minimal(ring, np);
          const ExperimentReport rep = verify_cutoff_upper(m, level, 100, 1000 * p + 10 * c + d, {}, threads);
          t.require(rep.verdict == Verdict::all_stable && rep.subject_polygon == np,
                    "p=" + std::to_string(p) + " " + np.to_string());
        }
      }
  return t.result(std::to_string(modules) + " minimal modules x 100 level-j trials, p in {2,3}");
}

Outcome formula_one_equivalence() {
  Tally t;
  int solved = 0, attempts = 0;
  SplitMix64 rng(2024);
  const std::array<std::pair<int, int>, 4> pairs{{{1, 1}, {1, 2}, {2, 1}, {2, 3}}};
  while (solved < 100 && attempts < 2000) {
    ++attempts;
    const auto [c, d] = pairs[rng.uniform(pairs.size())];
    const std::uint64_t p = std::array<std::uint64_t, 3>{2, 3, 5}[rng.uniform(3)];
    const int deg = 1 + static_cast<int>(rng.uniform(2));
    const int n = default_precision(deg, c, d) + 2;
    const WittRing ring = WittRing::make({p, deg, n});
    const auto polygons = np_enumerate(c, d);
    const NewtonPolygon np = polygons[rng.uniform(polygons.size())];
    const int level = 1 + static_cast<int>(rng.uniform(3));
    const DieudonneModule m = perturb(build_minimal(ring, np), level, rng.next()).module;
    const auto qx = formula_one(m, 64, rng.next());
    if (!qx) continue;
    ++solved;
    t.require(qx->polygon == np_of_module(m), "p=" + std::to_string(p) + " " + np.to_string());
  }
  t.require(solved == 100, "only " + std::to_string(solved) + " modules had a cyclic vector");
  return t.result(std::to_string(solved) + " solved of " + std::to_string(attempts) + " drawn");
}

Outcome duality() {
  Tally t;
  auto check = [&](const DieudonneModule& m, const std::string& tag) {
    const DieudonneModule dm = dual(m);
    t.require(dm.codim() == m.dim() && dm.dim() == m.codim(), tag + " (c,d) swap");
    t.require(np_of_module(dm) == np_of_module(m).reflect(), tag + " reflected polygon");
  };
  for (std::uint64_t p : {2, 3})
    for (int r = 1; r <= 6; ++r)
      for (int c = 0; c <= r; ++c) {
        const WittRing ring = WittRing::make({p, 1, default_precision(1, r, r)});
        for (const auto& np : np_enumerate(c, r - c)) check(build_minimal(ring, np), np.to_string());
        if (c >= 1 && r - c >= 1 && bounds(c, r - c).j >= 2) {
          const WitnessPair w = build_traverso_witness(ring, c, r - c);
          check(w.base, "witness base " + pair_name(c, r - c));
          check(w.twisted, "witness twisted " + pair_name(c, r - c));
        }
      }
  return t.result("minimal modules c+d<=6 and witness pairs, p in {2,3}");
}

Outcome bounds_table() {
  Tally t;
  for (const auto& row : run_table(8, 8)) {
    const CutoffBounds b = bounds(row.c, row.d);
    const std::string tag = pair_name(row.c, row.d);
    t.require(row.j == oracle::cutoff(row.c, row.d), tag + " j");
    t.require(b.n_bound == row.c * row.d + 1 && row.n_bound == b.n_bound, tag + " n_bound");
    t.require(row.witness_available == (row.j >= 2), tag + " witness flag");
    if (row.c == row.d) t.require(row.j == (row.c + 1) / 2, tag + " j(c,c)");
    if (coprime(row.c, row.d)) t.require(b.isosimple_q_bound == b.j - 1, tag + " isosimple bound");
  }
  return t.result("c,d<=8");
}

Outcome enumeration() {
  Tally t;
  t.require(np_enumerate(1, 1).size() == 2, "|N_{1,1}| = 2");
  const auto n23 = np_enumerate(2, 3);
  const auto oracle_set = oracle::lattice_polygons(2, 3);
  std::set<std::string> got;
  for (const auto& np : n23) got.insert(np.to_string());
  t.require(n23.size() == oracle_set.size() && got == oracle_set, "N_{2,3} matches the lattice oracle");
  for (const auto& a : n23) {
    t.require(lies_above(a, a), "reflexive");
    for (const auto& b : n23) {
      if (lies_above(a, b) && lies_above(b, a)) t.require(a == b, "antisymmetric");
      for (const auto& c : n23)
        if (lies_above(a, b) && lies_above(b, c)) t.require(lies_above(a, c), "transitive");
    }
  }
  return t.result("|N_{2,3}| = " + std::to_string(n23.size()) + " (oracle " + std::to_string(oracle_set.size()) + ")");
}

Outcome witt_algebra() {
  Tally t;
  for (RingParams params : {RingParams{2, 1, 20}, RingParams{2, 3, 16}, RingParams{3, 2, 10}, RingParams{5, 2, 8}}) {
    const WittRing ring = WittRing::make(params);
    const WittRing k = ring.residue_field();
    SplitMix64 rng(params.p * 31 + params.deg);
    const std::string tag = "p=" + std::to_string(params.p) + " deg=" + std::to_string(params.deg);
    auto draw = [&] {
      std::vector<std::uint64_t> c(params.deg);
      for (auto& x : c) x = rng.uniform(ring.modulus());
      return ring.element(std::move(c));
    };
    for (int i = 0; i < 1000; ++i) {
      const WittElem a = draw(), b = draw();
      t.require(frobenius(a + b) == frobenius(a) + frobenius(b), tag + " additive");
      t.require(frobenius(a * b) == frobenius(a) * frobenius(b), tag + " multiplicative");
      t.require(frobenius(a, params.deg) == a, tag + " sigma^deg");
      t.require(change_precision(frobenius(a), k) == change_precision(pow(a, params.p), k), tag + " a^p mod p");
      if (a.is_unit()) t.require(unit_inverse(a) * a == ring.one(), tag + " inverse");
    }
    t.require(frobenius(ring.one()) == ring.one(), tag + " unital");
  }
  return t.result("1000 draws for each of (2,1),(2,3),(3,2),(5,2)");
}

std::string run_binary(const std::string& exe, const std::string& args) {
  const std::string cmd = "\"" + exe + "\" " + args;
  std::FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + exe);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  if (pclose(pipe) != 0) throw std::runtime_error("non-zero exit from: " + cmd);
  return out;
}

std::string run_in_process(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"dvg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in;
  std::ostringstream out, err;
  if (cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err) != 0)
    throw std::runtime_error("cli failed: " + err.str());
  return out.str();
}

Outcome determinism(const std::string& exe) {
  Tally t;
  const WittRing ring = WittRing::make({2, 1, default_precision(1, 2, 3)});
  const auto path = std::filesystem::temp_directory_path() / ("dvg-acceptance-" + std::to_string(::getpid()) + ".json");
  {
    std::ofstream f(path);
    f << to_json(build_simple_minimal(ring, 2, 3)).dump(2);
  }
  const std::vector<std::string> args{"verify", "--in", path.string(), "--level", "2", "--trials", "50", "--seed", "42"};
  std::string first, second, threaded;
  std::string how;
  if (!exe.empty()) {
    std::string joined;
    for (const auto& a : args) joined += "'" + a + "' ";
    first = run_binary(exe, joined);
    second = run_binary(exe, joined);
    threaded = run_binary(exe, joined + "--threads 4");
    how = "two runs of the dvg binary";
  } else {
    first = run_in_process(args);
    second = run_in_process(args);
    auto with_threads = args;
    with_threads.insert(with_threads.end(), {"--threads", "4"});
    threaded = run_in_process(with_threads);
    how = "two in-process runs";
  }
  std::filesystem::remove(path);
  const std::string b1 = parse_json(first)["body"].dump(), b2 = parse_json(second)["body"].dump(),
                    b3 = parse_json(threaded)["body"].dump();
  t.require(b1 == b2, "bodies differ between runs");
  t.require(b1 == b3, "bodies differ with --threads 4");
  t.require(parse_json(first)["schema"] == kReportSchema, "schema tag");
  return t.result(how + " of verify --seed 42, plus a 4-thread run");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
  };
  double worst_witness = 0;
  int stability_modules = 0;
  const std::vector<Criterion> criteria{
      {1, "minimal-module slopes", 1.0, minimal_slopes},
      {2, "witness sharpness", 0, [&] { return witness_sharpness(worst_witness); }},
      {3, "upper-bound stability", 60.0, [&] { return upper_stability(stability_modules); }},
      {4, "cyclic-vector route agrees with the characteristic polynomial", 0, formula_one_equivalence},
      {5, "duality", 0, duality},
      {6, "bounds table", 0, bounds_table},
      {7, "enumeration", 0, enumeration},
      {8, "Witt-ring algebra", 5.0, witt_algebra},
      {9, "determinism", 0, [&] { return determinism(exe); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(c.budget_s) + " s budget";
    }
    if (!o.pass) ++failed;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.name << "  (" << secs << " s)  "
         << o.detail;
    if (c.id == 2) line << "; slowest case " << worst_witness << " s";
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? "acceptance: FAILED " + std::to_string(failed) + " of 9" : std::string("acceptance: all 9 passed"))
            << std::endl;
  return failed ? 1 : 0;
}
