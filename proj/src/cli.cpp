#include "dvg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "dvg/error.hpp"
#include "dvg/json_io.hpp"

namespace dvg {

namespace {

struct VerdictFailure {
  std::string message;
};

struct Io {
  std::string in_path;
  std::string out_path;
};

void add_io(CLI::App* cmd, Io& io, bool reads) {
  if (reads) cmd->add_option("--in", io.in_path, "input JSON file (default: stdin)");
  cmd->add_option("--out", io.out_path, "output file (default: stdout)");
}

std::string read_all(std::istream& s) { return {std::istreambuf_iterator<char>(s), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
  return read_all(f);
}

Json read_input(const Io& io, std::istream& in) {
  return parse_json(io.in_path.empty() || io.in_path == "-" ? read_all(in) : read_file(io.in_path));
}

/// Inline JSON when the text starts with '{' or '[', a file path otherwise.
Json json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return parse_json(text);
  return parse_json(read_file(text));
}

void write_output(const Io& io, std::ostream& out, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (io.out_path.empty() || io.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(io.out_path);
  if (!f) throw Error(ErrorCode::MalformedInput, "cannot write " + io.out_path);
  f << text;
}

std::vector<SimpleBlock> parse_blocks(const std::string& text, std::ostream& err) {
  std::vector<SimpleBlock> blocks;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream pair(item);
    SimpleBlock b;
    char comma = 0;
    if (!(pair >> b.c >> comma >> b.d) || comma != ',' || !(pair >> std::ws).eof())
      throw Error(ErrorCode::MalformedInput, "bad block '" + item + "', expected c,d");
    if (b.c < 0 || b.d < 0 || b.c + b.d == 0) throw Error(ErrorCode::MalformedInput, "bad block '" + item + "'");
    if (std::gcd(b.c, b.d) != 1)
      err << "warning: block (" << b.c << "," << b.d << ") is not coprime; it is replaced by "
          << std::gcd(b.c, b.d) << " copies of its reduced block\n";
    blocks.push_back(b);
  }
  if (blocks.empty()) throw Error(ErrorCode::MalformedInput, "no blocks given");
  return blocks;
}

std::vector<Matrix> read_injected(const WittRing& ring, const std::string& arg) {
  const Json j = json_arg(arg);
  if (!j.is_array()) throw Error(ErrorCode::MalformedInput, "--inject expects a JSON array of matrices");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(ring, m));
  return out;
}

int level_default(const DieudonneModule& m) {
  return (m.codim() >= 1 && m.dim() >= 1) ? bounds(m.codim(), m.dim()).j : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dieudonne modules, Newton polygons and the isogeny cutoff"};
  app.name("dvg");
  app.require_subcommand(1);

  Io io;

  auto* np_cmd = app.add_subcommand("np", "Newton polygon of a module");
  add_io(np_cmd, io, true);

  auto* an_cmd = app.add_subcommand("anumber", "a-number of a module");
  add_io(an_cmd, io, true);

  int budget = 64;
  std::uint64_t seed = 0;
  auto* qx_cmd = app.add_subcommand("qx", "cyclic-vector relation and its Newton polygon");
  add_io(qx_cmd, io, true);
  qx_cmd->add_option("--budget", budget, "candidate vectors to try")->capture_default_str();
  qx_cmd->add_option("--seed", seed, "seed for random candidates")->capture_default_str();

  std::string np_arg, cidi_arg;
  std::uint64_t p = 2;
  int deg = 1;
  std::optional<int> precision;
  auto* min_cmd = app.add_subcommand("minimal", "minimal module of a Newton polygon");
  add_io(min_cmd, io, false);
  auto* np_opt = min_cmd->add_option("--np", np_arg, "polygon JSON (inline or a file path)");
  auto* cidi_opt = min_cmd->add_option("--ci-di", cidi_arg, "blocks as \"c1,d1;c2,d2;...\"");
  np_opt->excludes(cidi_opt);
  min_cmd->add_option("--p", p)->capture_default_str();
  min_cmd->add_option("--deg", deg)->capture_default_str();
  min_cmd->add_option("--precision", precision);

  int wc = 0, wd = 0, random_trials = 0;
  std::string emit = "report";
  auto* wit_cmd = app.add_subcommand("witness", "the pair showing the cutoff is sharp");
  add_io(wit_cmd, io, false);
  wit_cmd->add_option("--c", wc)->required();
  wit_cmd->add_option("--d", wd)->required();
  wit_cmd->add_option("--p", p)->capture_default_str();
  wit_cmd->add_option("--deg", deg)->capture_default_str();
  wit_cmd->add_option("--precision", precision);
  wit_cmd->add_option("--trials", random_trials, "extra seeded level-(j-1) trials")->capture_default_str();
  wit_cmd->add_option("--seed", seed)->capture_default_str();
  wit_cmd->add_option("--emit", emit, "report, base or twisted")
      ->check(CLI::IsMember({"report", "base", "twisted"}))
      ->capture_default_str();

  std::optional<int> level;
  int trials = 100, threads = 1;
  std::string inject_arg, expect;
  auto* ver_cmd = app.add_subcommand("verify", "seeded perturbations at a congruence level");
  add_io(ver_cmd, io, true);
  ver_cmd->add_option("--level", level, "congruence level (default: the cutoff j)");
  ver_cmd->add_option("--trials", trials)->capture_default_str();
  ver_cmd->add_option("--seed", seed)->required();
  ver_cmd->add_option("--threads", threads)->capture_default_str();
  ver_cmd->add_option("--inject", inject_arg, "JSON array of twist matrices run first");
  ver_cmd->add_option("--expect", expect, "stable or counterexample; mismatch exits 1")
      ->check(CLI::IsMember({"stable", "counterexample"}));

  auto* dual_cmd = app.add_subcommand("dual", "Cartier dual of a module");
  add_io(dual_cmd, io, true);

  int ec = 0, ed = 0;
  auto* enum_cmd = app.add_subcommand("enumerate", "all polygons of codimension c and dimension d");
  add_io(enum_cmd, io, false);
  enum_cmd->add_option("--c", ec)->required()->check(CLI::NonNegativeNumber);
  enum_cmd->add_option("--d", ed)->required()->check(CLI::NonNegativeNumber);

  int cmax = 0, dmax = 0;
  auto* bounds_cmd = app.add_subcommand("bounds", "table of cutoffs");
  add_io(bounds_cmd, io, false);
  bounds_cmd->add_option("--cmax", cmax)->required();
  bounds_cmd->add_option("--dmax", dmax)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (np_cmd->parsed()) {
      const NewtonPolygon np = np_of_module(module_from_json(read_input(io, in)));
      Json j = to_json(np);
      j["text"] = np.to_string();
      write_output(io, out, j);
    } else if (an_cmd->parsed()) {
      write_output(io, out, Json{{"a_number", a_number(module_from_json(read_input(io, in)))}});
    } else if (qx_cmd->parsed()) {
      const DieudonneModule m = module_from_json(read_input(io, in));
      const auto qx = formula_one(m, budget, seed);
      if (!qx) {
        err << "error: NotFound: no cyclic vector within " << budget << " candidates\n";
        return 1;
      }
      write_output(io, out, to_json(*qx));
    } else if (min_cmd->parsed()) {
      NewtonPolygon np;
      if (!np_arg.empty()) {
        np = polygon_from_json(json_arg(np_arg));
      } else if (!cidi_arg.empty()) {
        const auto blocks = parse_blocks(cidi_arg, err);
        np = NewtonPolygon::from_blocks(blocks);
      } else {
        throw Error(ErrorCode::MalformedInput, "minimal needs --np or --ci-di");
      }
      const int n = precision.value_or(default_precision(deg, np.codim(), np.height()));
      write_output(io, out, to_json(build_minimal(WittRing::make({p, deg, n}), np)));
    } else if (wit_cmd->parsed()) {
      const WitnessReport rep = witness_lower(wc, wd, p, deg, random_trials, seed, precision);
      if (emit == "report") {
        write_output(io, out, to_json(rep));
      } else {
        const WittRing ring = WittRing::make({p, deg, rep.precision});
        const WitnessPair pair = build_traverso_witness(ring, wc, wd);
        write_output(io, out, to_json(emit == "base" ? pair.base : pair.twisted));
      }
      if (!rep.ok()) {
        for (const auto& c : rep.checks)
          if (!c.passed) err << "check failed: " << c.name << "\n";
        throw VerdictFailure{"witness checks failed"};
      }
    } else if (ver_cmd->parsed()) {
      const DieudonneModule m = module_from_json(read_input(io, in));
      std::vector<Matrix> injected;
      if (!inject_arg.empty()) injected = read_injected(m.ring(), inject_arg);
      const ExperimentReport rep =
          verify_cutoff_upper(m, level.value_or(level_default(m)), trials, seed, injected, threads);
      write_output(io, out, to_json(rep));
      const bool found = rep.verdict == Verdict::counterexample_found;
      if (expect == "stable" && found) throw VerdictFailure{"counterexample found where stability was expected"};
      if (expect == "counterexample" && !found) throw VerdictFailure{"no counterexample found"};
    } else if (dual_cmd->parsed()) {
      write_output(io, out, to_json(dual(module_from_json(read_input(io, in)))));
    } else if (enum_cmd->parsed()) {
      Json list = Json::array();
      for (const auto& np : np_enumerate(ec, ed)) list.push_back(to_json(np));
      write_output(io, out, list);
    } else if (bounds_cmd->parsed()) {
      write_output(io, out, to_json(run_table(cmax, dmax)));
    }
  } catch (const VerdictFailure& f) {
    err << "verdict: " << f.message << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace dvg
