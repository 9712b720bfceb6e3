#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "orbcover/metrics.hpp"
#include "orbcover/model_ir.hpp"
#include "orbcover/scenario.hpp"
#include "orbcover/visibility.hpp"

namespace orbcover {

// Shared inputs for all builders. Requirement is indexed [p][t]; rewards
// likewise (empty means unit rewards).
struct ProblemData {
  std::shared_ptr<const VisTensor> vis;
  std::shared_ptr<const IslTensor> isl;
  std::vector<double> costs;
  std::vector<std::vector<int>> requirement;
  std::vector<std::vector<double>> rewards;
  double dt_s = 1.0;
  bool cyclic = false;
  double beta = 0.5;
  bool tighten_big_m = false;
  std::uint64_t scenario_hash = 0;

  int num_steps() const { return vis ? vis->num_steps() : 0; }
  int num_slots() const { return vis ? vis->num_slots() : 0; }
  int num_targets() const { return vis ? vis->num_targets() : 0; }
  double reward(int p, int t) const {
    return rewards.empty() ? 1.0 : rewards[p][t];
  }
};

// A compiled MILP plus the symbol->variable-id correspondence and the data
// needed to decode and independently verify solutions.
struct CompiledProblem {
  FormulationKind kind = FormulationKind::Sclp;
  MilpModel model;
  ProblemData data;

  std::vector<int> x_ids;                   // J
  std::vector<std::vector<int>> y_ids;      // [p][t]
  std::vector<std::vector<int>> omega_ids;  // [p][t]
  std::vector<std::vector<int>> gap_start_ids;  // i, [p][t]
  std::vector<std::vector<int>> a_ids;      // [p][t]
  std::vector<int> alpha_ids;               // P
  std::vector<int> u_ids;                   // P (cyclic MMRT)
  std::vector<int> z_per_target_ids;        // P (sum-of-MRTs variant)
  int z_id = -1;

  // Parameters frozen at build time.
  int cardinality = -1;                     // N, -1 when absent
  std::optional<double> cost_budget;
  std::vector<int> coverage_steps;          // D_p
  std::optional<long long> mean_coverage;   // D
  std::vector<int> mrt_bounds;              // z_p
  std::vector<double> art_bounds;           // gamma_p
  DegreeMode degree_mode = DegreeMode::Corrected;
  bool sum_of_mrts = false;

  // True when every model variable appears in exactly one index slot.
  bool var_index_complete() const;
};

CompiledProblem build_sclp(const ProblemData& data);
CompiledProblem build_psclp(const ProblemData& data,
                            const std::vector<int>& coverage_steps,
                            std::optional<long long> mean_coverage = {});
CompiledProblem build_mclp(const ProblemData& data, int num_satellites,
                           std::optional<double> cost_budget = {});
CompiledProblem build_mmrt(const ProblemData& data, int num_satellites,
                           bool sum_of_mrts = false);
CompiledProblem build_mart(const ProblemData& data, int num_satellites);
CompiledProblem build_max_isl(const ProblemData& data,
                              DegreeMode mode = DegreeMode::Corrected);
CompiledProblem build_z_mrt(const ProblemData& data,
                            const std::vector<int>& mrt_bounds);
CompiledProblem build_gamma_art(const ProblemData& data,
                                const std::vector<double>& art_bounds);

// Builds whichever formulation the scenario requests.
CompiledProblem compile(const Scenario& scenario,
                        std::shared_ptr<const VisTensor> vis,
                        std::shared_ptr<const IslTensor> isl = nullptr);
ProblemData make_problem_data(const Scenario& scenario,
                              std::shared_ptr<const VisTensor> vis,
                              std::shared_ptr<const IslTensor> isl = nullptr);

struct DecodedSolution {
  std::vector<int> x;                      // 0/1 per slot
  std::vector<int> selected;               // slot indices with x=1
  double objective = 0.0;                  // recomputed, original sense
  double objective_time = 0.0;             // objective * dt for MMRT/MART
  std::vector<std::vector<int>> y;         // [p][t], -1 when absent
  std::vector<std::vector<double>> omega;  // [p][t]
  std::vector<double> alpha;               // P
  double z = 0.0;
  std::vector<double> z_per_target;
};

// Extracts domain values from a raw assignment. Recomputes the objective
// and throws ValidationError if it disagrees with `reported_objective`
// beyond 1e-6.
DecodedSolution decode(const CompiledProblem& problem,
                       const std::vector<double>& assignment,
                       double reported_objective);

}  // namespace orbcover
