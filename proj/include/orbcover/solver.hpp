#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbcover/formulations.hpp"
#include "orbcover/model_ir.hpp"

namespace orbcover {

enum class BranchingRule { MostFractional, PseudoCost };

struct SolveOptions {
  double time_limit_s = 600.0;
  double abs_gap = 1e-6;
  long long node_limit = 0;  // 0 = unlimited
  BranchingRule branching = BranchingRule::MostFractional;
  std::uint64_t seed = 1;
  bool reduced_cost_fixing = true;
  // Optional feasible assignment used as the starting incumbent; ignored
  // if it fails the exact feasibility check.
  std::optional<std::vector<double>> initial_incumbent;
};

enum class SolveStatus { Optimal, Infeasible, TimeLimit };

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  bool has_incumbent = false;
  std::vector<double> assignment;  // per model variable id
  double objective = 0.0;          // incumbent objective, original sense
  double bound = 0.0;              // proven bound, original sense
  long long node_count = 0;
  double wall_time_s = 0.0;
  bool warm_start_used = false;
};

// Enumerates pattern vectors (all 2^J subsets, or the N-subsets for
// cardinality formulations), derives every dependent variable from the
// metrics oracle, and returns the true optimum. Throws when the
// enumeration count would exceed `limit`.
Solution solve_exhaustive(const CompiledProblem& problem,
                          long long limit = 1LL << 22);

// Best-first branch and bound with LP-relaxation bounding (bounded-variable
// simplex) and warm-started dives. Deterministic for a fixed seed.
Solution solve_bnb(const MilpModel& model, const SolveOptions& opts = {});

struct VerifyReport {
  bool ok = false;
  std::vector<std::string> violations;
  double recomputed_objective = 0.0;
};

// Re-checks every model constraint at 1e-6, recomputes the objective, and
// cross-checks decoded auxiliaries against the metrics oracle.
VerifyReport verify(const CompiledProblem& problem, const Solution& solution);

// Greedy warm-start heuristic; returns a full assignment for the problem's
// model when it finds a feasible pattern, nullopt otherwise.
std::optional<std::vector<double>> greedy_incumbent(const CompiledProblem& problem);

// Completes a pattern vector into a full MILP assignment (y from the
// coverage indicator, gap counters and ART variables from the oracle
// recurrences). Returns nullopt when the pattern admits no feasible
// completion (e.g. cyclic counters with a never-covered target).
std::optional<std::vector<double>> complete_assignment(
    const CompiledProblem& problem, const std::vector<int>& x);

}  // namespace orbcover
