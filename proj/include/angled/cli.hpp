#pragma once

// Command-line front end. Exit codes: 0 success / statement holds,
// 1 check failed, 2 malformed input, 3 precondition violated.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "angled/angles.hpp"
#include "angled/complex.hpp"
#include "angled/invariant.hpp"
#include "angled/io.hpp"
#include "angled/trace.hpp"

namespace angled::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kMalformed = 2, kPrecondition = 3 };

inline int exit_code_for(const Error& err) {
  switch (err.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::MismatchedGroup:
      return kMalformed;
    default:
      return kPrecondition;
  }
}

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> groups;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t moves = 20;
  std::string out;
};

inline const std::vector<std::string>& default_fuzz_groups() {
  static const std::vector<std::string> groups{"Z/2", "Z/3", "Z/4", "Z", "Z/2 x Z/4"};
  return groups;
}

inline Triangulation builtin(const std::string& name) {
  if (name == "boundary-4-simplex") return boundary_4_simplex();
  if (name == "cross-polytope") return cross_polytope_boundary();
  throw Error(ErrorKind::ParseError, "unknown builtin '" + name + "' (boundary-4-simplex, cross-polytope)");
}

inline Triangulation load_triangulation(const std::string& path) { return triangulation_from_json(read_json_file(path)); }

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const Triangulation t = load_triangulation(cfg.inputs.at(0));
  const ValidationReport report = validate(t);
  out << report;
  if (report.ok()) {
    out << "vertices " << t.vertex_count() << ", edges " << t.edges().size() << ", triangles "
        << t.triangles().size() << ", tetrahedra " << t.tet_count() << "\n";
  }
  return report.ok() ? kOk : kCheckFailed;
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  Triangulation t = builtin(cfg.inputs.at(0));
  if (cfg.moves > 0) {
    Rng rng(cfg.seed);
    t = random_pachner_walk(std::move(t), cfg.moves, rng);
  }
  const Json j = triangulation_to_json(t);
  if (cfg.out.empty()) out << j.dump(1) << "\n";
  else write_json_file(cfg.out, j);
  return kOk;
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Triangulation t = load_triangulation(cfg.inputs.at(0));
  const Group g = make_group(cfg.groups.empty() ? std::string("Z") : cfg.groups.front());
  require_valid(t);
  const SolutionSpace space = solve(t, g);
  out << "group " << g->to_string() << "\n";
  out << "generators " << space.generator_count() << "\n";
  const auto size = space.size();
  out << "solutions " << (size ? size->str() : std::string("infinite")) << "\n";
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    for (std::size_t k = 0; k < space.generator_count(); ++k) {
      std::ostringstream name;
      name << "generator_" << std::setw(3) << std::setfill('0') << k << ".json";
      const auto path = std::filesystem::path(cfg.out) / name.str();
      write_json_file(path.string(), angles_to_json(t, generator_structure(space, k)));
      out << "wrote " << path.string() << " (order " << (space.generator_order(k).is_zero() ? std::string("infinite") : space.generator_order(k).str()) << ")\n";
    }
  }
  return kOk;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Triangulation t = load_triangulation(cfg.inputs.at(0));
  const AngleStructure s = angles_from_json(t, read_json_file(cfg.inputs.at(1)));
  require_valid(t);
  const ValidationReport vertex = check_vertex_equations(t, s);
  const ValidationReport edges = edge_equation_report(t, s);
  for (const auto& i : vertex.issues) out << i.kind << ": " << i.message << "\n";
  for (const auto& i : edges.issues) out << i.kind << ": " << i.message << "\n";
  const bool angled = vertex.ok() && edges.ok();
  out << (angled ? "ANGLED" : "NOT ANGLED") << "\n";
  return angled ? kOk : kCheckFailed;
}

inline void print_psi_report(const Triangulation& t, const PsiReport& report, std::ostream& out) {
  for (std::size_t i = 0; i < report.per_tet.size(); ++i) {
    const auto& l = t.tet_labels(i);
    out << "psi(" << l[0] << "," << l[1] << "," << l[2] << "," << l[3] << ") = " << report.per_tet[i] << "\n";
  }
  out << "TOTAL: " << report.total << "\n";
}

inline int cmd_invariant(const RunConfig& cfg, std::ostream& out) {
  const Triangulation t = load_triangulation(cfg.inputs.at(0));
  const AngleStructure s = angles_from_json(t, read_json_file(cfg.inputs.at(1)));
  const PsiReport report = total_invariant(t, s);
  print_psi_report(t, report, out);
  return report.holds ? kOk : kCheckFailed;
}

inline int cmd_trace(const RunConfig& cfg, std::ostream& out) {
  const Triangulation t = load_triangulation(cfg.inputs.at(0));
  const AngleStructure s = angles_from_json(t, read_json_file(cfg.inputs.at(1)));
  TraceOptions options;
  options.gauge_seed = cfg.seed;
  const TraceReport report = run_trace(t, s, options);
  out << report;
  return report.ok() ? kOk : kCheckFailed;
}

/// One fuzz trial; returns false and fills `log` on any failure.
inline bool fuzz_trial(std::uint64_t seed, std::size_t trial, std::size_t max_moves, const std::vector<Group>& groups,
                       std::ostream& log, Triangulation& t_out, std::optional<AngleStructure>& s_out) {
  Rng rng(mix_seed(seed ^ mix_seed(trial)));
  const bool cross = rng.below(2) == 1;
  const std::size_t moves = static_cast<std::size_t>(rng.below(max_moves + 1));
  const Group& g = groups[rng.below(groups.size())];
  t_out = random_pachner_walk(cross ? cross_polytope_boundary() : boundary_4_simplex(), moves, rng);
  log << "trial " << trial << ": base=" << (cross ? "cross-polytope" : "boundary-4-simplex") << " moves=" << moves
      << " tets=" << t_out.tet_count() << " group=" << g->to_string();
  const ValidationReport valid = validate(t_out);
  if (!valid.ok()) {
    log << " INVALID " << valid.issues.front().kind << "\n";
    return false;
  }
  const SolutionSpace space = solve(t_out, g);
  s_out = random_angled(space, rng);
  log << " generators=" << space.generator_count();
  const PsiReport psi = total_invariant(t_out, *s_out);
  const TraceReport trace = run_trace(t_out, *s_out);
  log << " total=" << psi.total << " trace=" << (trace.ok() ? "ok" : "FAILED") << "\n";
  if (!trace.ok()) log << trace;
  return psi.holds && trace.ok();
}

inline int cmd_fuzz(const RunConfig& cfg, std::ostream& out) {
  std::vector<Group> groups;
  for (const auto& g : cfg.groups.empty() ? default_fuzz_groups() : cfg.groups) groups.push_back(make_group(g));
  bool all_ok = true;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    std::ostringstream log;
    Triangulation t;
    std::optional<AngleStructure> s;
    bool ok = false;
    try {
      ok = fuzz_trial(cfg.seed, trial, cfg.moves, groups, log, t, s);
    } catch (const Error& err) {
      log << " ERROR " << err.what() << "\n";
    }
    out << log.str();
    if (ok) continue;
    all_ok = false;
    const std::filesystem::path dir = cfg.out.empty() ? "fuzz-failures" : cfg.out;
    std::filesystem::create_directories(dir);
    const auto tri_path = dir / ("trial_" + std::to_string(trial) + "_tri.json");
    write_json_file(tri_path.string(), triangulation_to_json(t));
    out << "counterexample triangulation: " << tri_path.string() << "\n";
    if (s && s->tet_count() == t.tet_count()) {
      const auto angles_path = dir / ("trial_" + std::to_string(trial) + "_angles.json");
      write_json_file(angles_path.string(), angles_to_json(t, *s));
      out << "counterexample angles: " << angles_path.string() << "\n";
    }
  }
  if (cfg.trials > 0) out << (all_ok ? "FUZZ: all trials passed" : "FUZZ: failures found") << "\n";
  return all_ok ? kOk : kCheckFailed;
}

/// Runs the CLI on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Angle structures on triangulated 3-manifolds and their Lambda^2 invariant", "angled"};
  app.require_subcommand(1);
  RunConfig cfg;
  // Options of different subcommands share cfg, so per-command defaults live
  // in their own variables and are copied in after parsing.
  std::size_t generate_moves = 0;
  std::size_t fuzz_moves = 20;

  auto add_group = [&](CLI::App* sub, bool many) {
    if (many) sub->add_option("--group", cfg.groups, "Group spec, may repeat (e.g. \"Z/2 x Z/4\")");
    else sub->add_option("--group", cfg.groups, "Group spec (e.g. \"Z^2 x Z/4\")")->expected(1);
  };

  auto* validate_cmd = app.add_subcommand("validate", "Validate a triangulation file");
  validate_cmd->add_option("triangulation", cfg.inputs, "Triangulation file")->required()->expected(1);

  auto* generate_cmd = app.add_subcommand("generate", "Write a builtin triangulation, optionally after Pachner moves");
  generate_cmd->add_option("name", cfg.inputs, "boundary-4-simplex | cross-polytope")->required()->expected(1);
  generate_cmd->add_option("--moves", generate_moves, "Random Pachner moves to apply")->capture_default_str();
  generate_cmd->add_option("--seed", cfg.seed, "Seed for the Pachner walk");
  generate_cmd->add_option("--out", cfg.out, "Output file (default: stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "Solve for angled structures over a group");
  solve_cmd->add_option("triangulation", cfg.inputs, "Triangulation file")->required()->expected(1);
  add_group(solve_cmd, false);
  solve_cmd->add_option("--out", cfg.out, "Directory for generator angle files");

  auto two_files = [&](CLI::App* sub) {
    sub->add_option("files", cfg.inputs, "Triangulation file and angles file")->required()->expected(2);
  };
  auto* check_cmd = app.add_subcommand("check", "Check vertex and edge equations");
  two_files(check_cmd);
  auto* invariant_cmd = app.add_subcommand("invariant", "Compute psi per tetrahedron and its total");
  two_files(invariant_cmd);
  auto* trace_cmd = app.add_subcommand("trace", "Replay and verify every step of the vanishing argument");
  two_files(trace_cmd);
  trace_cmd->add_option("--seed", cfg.seed, "Gauge seed for base points (0 = least labels)");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Random Pachner walks, groups and structures");
  fuzz_cmd->add_option("--seed", cfg.seed, "Seed");
  fuzz_cmd->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  fuzz_cmd->add_option("--moves", fuzz_moves, "Maximum Pachner moves per trial")->capture_default_str();
  add_group(fuzz_cmd, true);
  fuzz_cmd->add_option("--out", cfg.out, "Directory for counterexample bundles");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kMalformed;
  }

  cfg.moves = *generate_cmd ? generate_moves : fuzz_moves;
  try {
    if (*validate_cmd) return cmd_validate(cfg, out);
    if (*generate_cmd) return cmd_generate(cfg, out);
    if (*solve_cmd) return cmd_solve(cfg, out);
    if (*check_cmd) return cmd_check(cfg, out);
    if (*invariant_cmd) return cmd_invariant(cfg, out);
    if (*trace_cmd) return cmd_trace(cfg, out);
    if (*fuzz_cmd) return cmd_fuzz(cfg, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace angled::cli
