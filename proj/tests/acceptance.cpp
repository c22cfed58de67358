// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. All arithmetic is exact.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "angled/cli.hpp"
#include "angled/exterior.hpp"
#include "angled/invariant.hpp"
#include "angled/trace.hpp"
#include "oracles.hpp"

using namespace angled;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Counts checks and keeps the first few failure messages.
struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> notes;

  void check(bool ok, const std::function<std::string()>& describe) {
    ++checked;
    if (ok) return;
    if (failed++ < 5) notes.push_back(describe());
  }
};

bool report(int id, const std::string& title, const Tally& tally, double elapsed, double budget,
            const std::string& extra = {}) {
  const bool in_time = budget <= 0 || elapsed <= budget;
  const bool ok = tally.failed == 0 && tally.checked > 0 && in_time;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "): " << tally.checked
            << " checks, " << tally.failed << " failures, " << std::fixed << std::setprecision(1) << elapsed << "s";
  if (budget > 0) std::cout << " (budget " << budget << "s)";
  if (!extra.empty()) std::cout << ", " << extra;
  std::cout << "\n";
  for (const auto& n : tally.notes) std::cout << "    " << n << "\n";
  std::cout.flush();
  return ok;
}

const std::vector<std::string>& theorem_groups() {
  static const std::vector<std::string> groups{"Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z", "Z^2", "Z/2 x Z/4"};
  return groups;
}

std::vector<std::pair<std::string, Triangulation>> builtins() {
  return {{"boundary-4-simplex", boundary_4_simplex()}, {"cross-polytope", cross_polytope_boundary()}};
}

std::uint64_t seed_for(const std::string& a, const std::string& b, std::uint64_t salt = 0) {
  return mix_seed(std::hash<std::string>{}(a) ^ mix_seed(std::hash<std::string>{}(b)) ^ mix_seed(salt));
}

/// Calls f on every element of a finite solution space.
void enumerate(const SolutionSpace& space, const std::function<void(const AngleStructure&)>& f) {
  std::vector<Integer> coeffs(space.generator_count(), 0);
  while (true) {
    f(structure_from_coefficients(space, coeffs));
    std::size_t k = 0;
    while (k < coeffs.size() && ++coeffs[k] == space.generator_order(k)) coeffs[k++] = 0;
    if (k == coeffs.size()) return;
  }
}

/// Invariant and full trace on one structure, tallied separately.
void theorem_and_trace(const Triangulation& t, const AngleStructure& s, const std::string& where, Tally& theorem,
                       Tally& replay) {
  try {
    const PsiReport psi = total_invariant(t, s);
    theorem.check(psi.holds, [&] { return where + ": total " + psi.total.to_string(); });
  } catch (const Error& e) {
    theorem.check(false, [&] { return where + ": " + e.what(); });
  }
  try {
    const TraceReport trace = run_trace(t, s);
    replay.check(trace.ok(), [&] {
      std::ostringstream os;
      os << where << ":\n" << trace;
      return os.str();
    });
  } catch (const Error& e) {
    replay.check(false, [&] { return where + ": " + e.what(); });
  }
}

// ---------------------------------------------------------------------------
// 1 and 2: vanishing and proof replay on the builtins

std::pair<bool, bool> criteria_1_2() {
  const auto start = Clock::now();
  Tally theorem, replay;
  std::size_t enumerated = 0, sampled = 0;
  for (const auto& [name, t] : builtins()) {
    for (const auto& spec : theorem_groups()) {
      const Group g = make_group(spec);
      const SolutionSpace space = solve(t, g);
      const std::string where = name + " over " + spec;
      for (std::size_t k = 0; k < space.generator_count(); ++k) {
        theorem_and_trace(t, generator_structure(space, k), where + " generator " + std::to_string(k), theorem, replay);
      }
      const auto size = space.size();
      if (size && *size <= 100000) {
        enumerate(space, [&](const AngleStructure& s) {
          theorem_and_trace(t, s, where + " (enumerated)", theorem, replay);
          ++enumerated;
        });
      } else {
        Rng rng(seed_for(name, spec));
        for (int i = 0; i < 100; ++i) {
          theorem_and_trace(t, random_angled(space, rng), where + " sample " + std::to_string(i), theorem, replay);
          ++sampled;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  const std::string extra = std::to_string(enumerated) + " enumerated + " + std::to_string(sampled) +
                            " sampled structures plus all generators";
  bool ok1 = report(1, "theorem vanishing on builtins", theorem, elapsed, 120, extra);
  bool ok2 = report(2, "proof replay on the same structures", replay, elapsed, 120);
  return {ok1, ok2};
}

// ---------------------------------------------------------------------------
// 3: Pachner descendants

bool criterion_3() {
  const auto start = Clock::now();
  Tally tally;
  std::size_t structures = 0, max_tets = 0;
  for (const auto& [name, base] : builtins()) {
    for (std::uint64_t walk = 0; walk < 50; ++walk) {
      Rng rng(seed_for(name, "walk", walk));
      const std::size_t moves = 1 + rng.below(20);
      const Triangulation t = random_pachner_walk(base, moves, rng);
      max_tets = std::max(max_tets, t.tet_count());
      const std::string where = name + " walk " + std::to_string(walk) + " (" + std::to_string(moves) + " moves)";
      const ValidationReport valid = validate(t);
      tally.check(valid.ok(), [&] { return where + ": invalid, " + valid.issues.front().kind; });
      if (!valid.ok()) continue;
      for (const char* spec : {"Z/4", "Z/6", "Z/2 x Z/4"}) {
        const SolutionSpace space = solve(t, make_group(spec));
        for (int i = 0; i < 10; ++i) {
          theorem_and_trace(t, random_angled(space, rng), where + " over " + spec, tally, tally);
          ++structures;
        }
      }
    }
  }
  return report(3, "Pachner robustness", tally, seconds_since(start), 300,
                "100 walks, " + std::to_string(structures) + " structures, up to " + std::to_string(max_tets) +
                    " tetrahedra");
}

// ---------------------------------------------------------------------------
// 4: exterior square model against the presentation oracle

std::vector<std::vector<Integer>> torsion_parts() {
  std::vector<std::vector<Integer>> out{{}};
  std::function<void(std::vector<Integer>&, long, long)> grow = [&](std::vector<Integer>& cur, long min, long room) {
    if (cur.size() == 3) return;
    for (long d = min; d <= room; ++d) {
      cur.push_back(d);
      out.push_back(cur);
      grow(cur, d, room / d);
      cur.pop_back();
    }
  };
  std::vector<Integer> cur;
  grow(cur, 2, 64);
  return out;
}

GroupElement random_element(const Group& g, Rng& rng) {
  std::vector<Integer> c;
  for (const auto& d : g->factors()) {
    const long span = d.is_zero() ? 50 : 2 * static_cast<long>(d);
    c.push_back(Integer(static_cast<long long>(rng.below(2 * span + 1))) - span);
  }
  return GroupElement(g, std::move(c));
}

bool criterion_4() {
  const auto start = Clock::now();
  Tally tally;
  std::size_t groups = 0;
  Rng rng(4);
  for (const auto& torsion : torsion_parts()) {
    for (int free = 0; free <= 2; ++free) {
      std::vector<Integer> factors = torsion;
      factors.insert(factors.end(), free, Integer(0));
      const Group g = make_group(GroupSpec(factors));
      ++groups;
      const auto model = lambda2_model_factors(g);
      const auto oracle = lambda2_oracle(*g);
      tally.check(model == oracle, [&] { return g->to_string() + ": model and oracle disagree"; });
      for (int i = 0; i < 1000; ++i) {
        const auto a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
        const bool ok = wedge(a + b, c) == wedge(a, c) + wedge(b, c) && wedge(a, b + c) == wedge(a, b) + wedge(a, c) &&
                        wedge(a, b) == -wedge(b, a) && wedge(a + b, a + b) == wedge(a, a) + wedge(b, b) &&
                        (Integer(2) * wedge(a, a)).is_zero();
        tally.check(ok, [&] { return g->to_string() + ": identity fails at " + a.to_string() + ", " + b.to_string(); });
      }
    }
  }
  return report(4, "exterior square model vs oracle", tally, seconds_since(start), 0,
                std::to_string(groups) + " groups");
}

// ---------------------------------------------------------------------------
// 5: Smith normal form and kernels

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long long>(rng.below(2 * bound + 1)) - bound;
  }
  return m;
}

bool smith_shape_ok(const IntMatrix& d) {
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j && !d(i, j).is_zero()) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i).sign() < 0) return false;
    if (i + 1 == n) break;
    const Integer& a = d(i, i);
    const Integer& b = d(i + 1, i + 1);
    if (a.is_zero() ? !b.is_zero() : !Integer(b % a).is_zero()) return false;
  }
  return true;
}

bool criterion_5() {
  const auto start = Clock::now();
  Tally tally;
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
    const IntMatrix m = random_matrix(rng, rows, cols, 9);
    const auto s = snf(m);
    const bool ok = s.U * m * s.V == s.D && smith_shape_ok(s.D) && abs(determinant(s.U)) == 1 &&
                    abs(determinant(s.V)) == 1;
    tally.check(ok, [&] {
      std::ostringstream os;
      os << "snf failed on " << rows << "x" << cols << " matrix " << m;
      return os.str();
    });
  }
  std::size_t kernels = 0;
  for (long d = 2; d <= 16; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
      const IntMatrix m = random_matrix(rng, rows, cols, 9);
      const auto gens = kernel_mod(m, d);
      tally.check(oracle::span_mod(gens, cols, d) == oracle::brute_force_kernel(m, d), [&] {
        std::ostringstream os;
        os << "kernel mod " << d << " differs on " << m;
        return os.str();
      });
      ++kernels;
    }
  }
  return report(5, "Smith normal form and kernels", tally, seconds_since(start), 0,
                "1000 random matrices, " + std::to_string(kernels) + " brute-force kernels");
}

// ---------------------------------------------------------------------------
// 6 and 7: single tetrahedra

/// Random vertex-valid tetrahedra over g: the kernel of the 4 x 6 vertex
/// system, sampled with random coefficients.
class TetSampler {
 public:
  explicit TetSampler(const Group& g) : space_(solve_homogeneous(matrix(), g)) {}

  AngleStructure sample(Rng& rng) const {
    std::vector<Integer> coeffs(space_.generator_count());
    for (auto& c : coeffs) c = rng.up_to(64);
    return AngleStructure::from_columns(space_.group(), space_.assemble(coeffs));
  }

 private:
  static IntMatrix matrix() {
    IntMatrix m(4, 6);
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        if (q != p) m(p, tet_pair_index(p, q)) = 1;
      }
    }
    return m;
  }

  SolutionSpace space_;
};

bool criterion_6() {
  const auto start = Clock::now();
  Tally tally;
  for (const char* spec : {"Z/8", "Z/2 x Z/4"}) {
    TetSampler sampler(make_group(spec));
    Rng rng(seed_for("representatives", spec));
    for (int i = 0; i < 100; ++i) {
      const AngleStructure s = sampler.sample(rng);
      tally.check(tet_vertex_equations_hold(s.values(0)) && psi_representative_check(s, 0),
                  [&] { return std::string(spec) + " sample " + std::to_string(i); });
    }
  }
  return report(6, "representative independence", tally, seconds_since(start), 0);
}

bool criterion_7() {
  const auto start = Clock::now();
  Tally tally;
  for (const char* spec : {"Z/3", "Z/5", "Z/15", "Z/5 x Z/5", "Z/3 x Z/15"}) {
    TetSampler sampler(make_group(spec));
    Rng rng(seed_for("odd", spec));
    for (int i = 0; i < 100; ++i) {
      const AngleStructure s = sampler.sample(rng);
      bool ok = false;
      try {
        ok = odd_group_specialization(s, 0);
      } catch (const Error&) {
      }
      tally.check(ok, [&] { return std::string(spec) + " sample " + std::to_string(i); });
    }
  }
  bool refused = false;
  try {
    odd_group_specialization(AngleStructure(make_group("Z/2"), 1), 0);
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::GroupHasEvenTorsion;
  }
  tally.check(refused, [] { return std::string("Z/2 was not refused"); });
  return report(7, "odd-group specialization", tally, seconds_since(start), 0);
}

// ---------------------------------------------------------------------------
// 8: negative control

std::vector<GroupElement> nonzero_deltas(const Group& g) {
  std::vector<GroupElement> out;
  if (g->order()) {
    // Every nonzero element of a finite group.
    std::vector<Integer> c(g->rank(), 0);
    while (true) {
      std::size_t k = 0;
      while (k < c.size() && ++c[k] == g->factor(k)) c[k++] = 0;
      if (k == c.size()) break;
      out.emplace_back(g, c);
    }
  } else {
    for (long v : {1L, -1L, 2L, 7L}) out.emplace_back(g, std::vector<Integer>(g->rank(), v));
  }
  return out;
}

int run_binary(const std::vector<std::string>& args) {
  std::string cmd = ANGLED_CLI_PATH;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool criterion_8() {
  const auto start = Clock::now();
  Tally tally;
  const fs::path dir = fs::temp_directory_path() / "angled_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::size_t perturbations = 0, binary_runs = 0;
  for (const auto& [name, t] : builtins()) {
    const std::string tri = (dir / (name + ".json")).string();
    write_json_file(tri, triangulation_to_json(t));
    for (const char* spec : {"Z/4", "Z/2 x Z/4", "Z"}) {
      const Group g = make_group(spec);
      const AngleStructure s = random_angled(t, g, seed_for(name, spec, 8));
      tally.check(check_edge_equations(t, s).ok(), [&] { return name + " " + spec + ": base sample not angled"; });
      const auto deltas = nonzero_deltas(g);
      for (std::size_t i = 0; i < t.tet_count(); ++i) {
        for (int pair = 0; pair < 6; ++pair) {
          for (std::size_t di = 0; di < deltas.size(); ++di) {
            const AngleStructure bent = s.perturbed(i, pair, deltas[di]);
            const std::string where = name + " " + spec + " tet " + std::to_string(i) + " pair " +
                                      std::to_string(pair) + " by " + deltas[di].to_string();
            tally.check(!edge_equation_report(t, bent).ok(), [&] { return where + ": edges still hold"; });
            ++perturbations;
            // The CLI must refuse, never claim a violation.
            const std::string angles = (dir / "bent.json").string();
            write_json_file(angles, angles_to_json(t, bent));
            std::ostringstream out, err;
            const int inv = cli::run({"invariant", tri, angles}, out, err);
            const int trc = cli::run({"trace", tri, angles}, out, err);
            tally.check(inv == 3 && trc == 3, [&] {
              return where + ": exit codes " + std::to_string(inv) + "/" + std::to_string(trc);
            });
            if (di == 0 && pair == 0 && i < 2) {
              const int b1 = run_binary({"invariant", tri, angles});
              const int b2 = run_binary({"trace", tri, angles});
              tally.check(b1 == 3 && b2 == 3, [&] {
                return where + ": binary exit codes " + std::to_string(b1) + "/" + std::to_string(b2);
              });
              binary_runs += 2;
            }
          }
        }
      }
    }
  }
  fs::remove_all(dir);
  return report(8, "negative control", tally, seconds_since(start), 0,
                std::to_string(perturbations) + " perturbations, " + std::to_string(binary_runs) + " binary runs");
}

}  // namespace

int main() {
  std::cout << "angled acceptance run\n";
  bool ok = true;
  auto [ok1, ok2] = criteria_1_2();
  ok &= ok1;
  ok &= ok2;
  ok &= criterion_3();
  ok &= criterion_4();
  ok &= criterion_5();
  ok &= criterion_6();
  ok &= criterion_7();
  ok &= criterion_8();
  std::cout << (ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: some criteria failed") << "\n";
  return ok ? 0 : 1;
}
