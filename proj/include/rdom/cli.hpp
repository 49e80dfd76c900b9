#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rdom/cells.hpp"
#include "rdom/cover.hpp"
#include "rdom/generate.hpp"
#include "rdom/io.hpp"
#include "rdom/support.hpp"
#include "rdom/system.hpp"

namespace rdom::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

class InputError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_doc(const Json& doc, const std::string& path, std::ostream& out) {
  std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

struct GenArgs {
  std::uint64_t seed = 0;
  std::vector<int> grid{5, 5};
  double keep_prob = 0.7;
  Length max_len = 4;
  std::string output;
  std::size_t balls = 0;
  Length min_radius = 0;
  Length max_radius = 4;
  std::string balls_output;
};

struct SolveArgs {
  std::string graph;
  Length radius = 1;
  std::string method = "quasi";
  std::uint64_t seed = 0;
  double eps = 0.1;
  std::string output;
};

struct SupportArgs {
  std::string graph;
  std::string balls;
  std::string red;
  std::string blue;
  std::string mode = "pipeline";
  std::string output;
  std::string report;
};

struct CellsArgs {
  std::string graph;
  std::string balls;
  std::string output;
};

struct VerifyArgs {
  std::string graph;
  std::string solution;
  Length radius = 1;
};

inline int run_gen(const GenArgs& a, std::ostream& out) {
  auto g = gen_planar(a.seed, a.grid[0], a.grid[1], a.keep_prob, a.max_len);
  write_doc(graph_to_json(g), a.output, out);
  if (a.balls > 0) {
    if (a.balls_output.empty()) throw InputError("--balls needs --balls-out");
    write_doc(balls_to_json(random_balls(g, a.seed, a.balls, a.min_radius, a.max_radius)), a.balls_output, out);
  }
  return kOk;
}

inline int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  auto g = parse_graph(read_file(a.graph));
  auto method = parse_method(a.method);
  auto inst = rdom_instance(g, a.radius);
  auto cover = solve_cover(inst, method, a.seed, {.eps = a.eps});
  cover.seed = a.seed;
  bool feasible = verify_cover(inst, cover);
  write_doc(cover_to_json(cover, feasible), a.output, out);
  if (!feasible) {
    err << "solve: cover failed verification\n";
    return kVerificationFailed;
  }
  return kOk;
}

inline int run_support(const SupportArgs& a, std::ostream& out, std::ostream& err) {
  auto g = parse_graph(read_file(a.graph));
  SupportGraph s;
  SupportReport report;
  if (!a.balls.empty()) {
    auto balls = parse_balls(read_file(a.balls));
    auto aug = build_augmented(g, balls);
    s = build_dual_support(aug, dual_voronoi(aug));
    report = verify_dual_support(s, hit_sets(aug));
    auto minor = verify_minor_preservation(aug.g, s);
    for (auto& f : minor.failures) report.fail(f.check, f.witness, f.balls);
  } else {
    if (a.red.empty()) throw InputError("support needs --balls or --red/--blue");
    auto red = parse_balls(read_file(a.red));
    auto blue = a.blue.empty() ? std::vector<Ball>{} : parse_balls(read_file(a.blue));
    IntersectionMode mode;
    if (a.mode == "pipeline") {
      mode = IntersectionMode::directed_pipeline;
    } else if (a.mode == "shortcut") {
      mode = IntersectionMode::undirected_shortcut;
    } else {
      throw InputError("unknown mode \"" + a.mode + "\"");
    }
    s = build_intersection_support(g, red, blue, mode);
    report = verify_intersection_support(s, red, blue, g);
  }
  write_doc(support_to_json(s, report.planar), a.output, out);
  if (!a.report.empty()) write_doc(report_to_json(report), a.report, out);
  for (const auto& f : report.failures) err << "support: " << f.check << " failed at " << f.witness << "\n";
  return report.pass ? kOk : kVerificationFailed;
}

inline int run_cells(const CellsArgs& a, std::ostream& out, std::ostream& err) {
  auto g = parse_graph(read_file(a.graph));
  auto sys = analyze(g, parse_balls(read_file(a.balls)));
  auto report = cells_report(sys);
  write_doc(cells_report_to_json(report), a.output, out);
  bool ok = report.profile.depth1_ok && report.profile.depth2_ok && report.profile.depth3_ok;
  for (const auto& [k, unique] : report.encoding_unique) ok = ok && unique;
  for (const auto& gd : report.residents) ok = ok && gd.ok();
  if (!ok) err << "cells: a structural check failed\n";
  return ok ? kOk : kVerificationFailed;
}

inline int run_verify(const VerifyArgs& a, std::ostream& err) {
  auto g = parse_graph(read_file(a.graph));
  auto doc = detail::parse_text(read_file(a.solution));
  auto claimed = parse_cover(doc);
  auto inst = rdom_instance(g, a.radius);

  Cover exact = claimed;
  exact.weight = 0;
  for (auto id : claimed.chosen) {
    auto s = inst.set_index(id);
    if (!s) {
      err << "verify: center " << id << " is not a vertex\n";
      return kVerificationFailed;
    }
    exact.weight += inst.weight(*s);
  }
  if (!verify_cover(inst, exact)) {
    err << "verify: centers do not dominate every vertex within radius " << a.radius << "\n";
    return kVerificationFailed;
  }
  double stated = claimed.weight.convert_to<double>();
  double actual = exact.weight.convert_to<double>();
  if (std::abs(stated - actual) > 1e-9 * std::max(1.0, std::abs(actual))) {
    err << "verify: stated weight " << stated << " differs from " << actual << "\n";
    return kVerificationFailed;
  }
  auto feasible = doc.find("feasible");
  if (feasible == doc.end() || !feasible->is_boolean() || !feasible->get<bool>()) {
    err << "verify: document does not claim feasibility\n";
    return kVerificationFailed;
  }
  return kOk;
}

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"r-dominating sets and ball-system supports on planar graphs", "rdom"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a planar grid-subgraph instance");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--grid", gen.grid, "width height")->expected(2)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--keep-prob", gen.keep_prob)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--max-len", gen.max_len)->check(CLI::PositiveNumber);
  gen_cmd->add_option("-o,--output", gen.output);
  gen_cmd->add_option("--balls", gen.balls, "also place this many random balls");
  gen_cmd->add_option("--min-radius", gen.min_radius)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--max-radius", gen.max_radius)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--balls-out", gen.balls_output);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "approximate minimum-weight r-dominating set");
  solve_cmd->add_option("--graph", solve.graph)->required();
  solve_cmd->add_option("--radius", solve.radius)->required()->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--method", solve.method)->check(CLI::IsMember({"quasi", "greedy", "exact"}));
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--eps", solve.eps)->check(CLI::Range(1e-6, 1.0));
  solve_cmd->add_option("-o,--output", solve.output);

  SupportArgs support;
  auto* support_cmd = app.add_subcommand("support", "dual or intersection support of a ball system");
  support_cmd->add_option("--graph", support.graph)->required();
  support_cmd->add_option("--balls", support.balls);
  support_cmd->add_option("--red", support.red);
  support_cmd->add_option("--blue", support.blue);
  support_cmd->add_option("--mode", support.mode)->check(CLI::IsMember({"pipeline", "shortcut"}));
  support_cmd->add_option("-o,--output", support.output);
  support_cmd->add_option("--report", support.report, "write the verification report here");

  CellsArgs cells;
  auto* cells_cmd = app.add_subcommand("cells", "cell profile, encodings and resident graphs");
  cells_cmd->add_option("--graph", cells.graph)->required();
  cells_cmd->add_option("--balls", cells.balls)->required();
  cells_cmd->add_option("-o,--output", cells.output);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "re-check a solution document against its instance");
  verify_cmd->add_option("--graph", verify.graph)->required();
  verify_cmd->add_option("--solution", verify.solution)->required();
  verify_cmd->add_option("--radius", verify.radius)->required()->check(CLI::NonNegativeNumber);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*solve_cmd) return run_solve(solve, out, err);
    if (*support_cmd) return run_support(support, out, err);
    if (*cells_cmd) return run_cells(cells, out, err);
    if (*verify_cmd) return run_verify(verify, err);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace rdom::cli
