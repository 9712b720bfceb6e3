#include "orbcover/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace orbcover {

namespace {

std::string idx2(const char* sym, int t, int p) {
  return std::string(sym) + "_" + std::to_string(t + 1) + "_" +
         std::to_string(p + 1);
}

void check_data(const ProblemData& d) {
  if (!d.vis) throw ValidationError("formulation: visibility tensor missing");
  const int T = d.num_steps(), J = d.num_slots(), P = d.num_targets();
  if (static_cast<int>(d.costs.size()) != J) {
    throw ValidationError("formulation: cost vector length != num_slots");
  }
  if (static_cast<int>(d.requirement.size()) != P) {
    throw ValidationError("formulation: requirement rows != num_targets");
  }
  for (const auto& row : d.requirement) {
    if (static_cast<int>(row.size()) != T) {
      throw ValidationError("formulation: requirement row length != num_steps");
    }
  }
  if (!d.rewards.empty()) {
    if (static_cast<int>(d.rewards.size()) != P) {
      throw ValidationError("formulation: rewards rows != num_targets");
    }
    for (const auto& row : d.rewards) {
      if (static_cast<int>(row.size()) != T) {
        throw ValidationError("formulation: rewards row length != num_steps");
      }
    }
  }
  if (d.beta <= 0.0 || d.beta >= 1.0) {
    throw ValidationError("formulation: beta must lie in (0, 1)");
  }
}

CompiledProblem start(const ProblemData& data, FormulationKind kind) {
  check_data(data);
  CompiledProblem cp;
  cp.kind = kind;
  cp.data = data;
  cp.model.set_metadata({formulation_kind_name(kind), data.scenario_hash});
  cp.x_ids.reserve(data.num_slots());
  for (int j = 0; j < data.num_slots(); ++j) {
    cp.x_ids.push_back(cp.model.add_binary("x_" + std::to_string(j + 1), 0));
  }
  return cp;
}

void add_cost_objective(CompiledProblem& cp) {
  std::vector<LinearTerm> terms;
  for (int j = 0; j < cp.data.num_slots(); ++j) {
    if (cp.data.costs[j] != 0.0) terms.push_back({cp.x_ids[j], cp.data.costs[j]});
  }
  cp.model.set_objective(ObjectiveSense::Minimize, std::move(terms));
}

// sum_j V_tjp x_j >= r_tp for every (t, p).
void add_cover_rows(CompiledProblem& cp) {
  const auto& d = cp.data;
  for (int t = 0; t < d.num_steps(); ++t) {
    for (int p = 0; p < d.num_targets(); ++p) {
      std::vector<LinearTerm> terms;
      for (int j = 0; j < d.num_slots(); ++j) {
        if (d.vis->get(t, j, p)) terms.push_back({cp.x_ids[j], 1.0});
      }
      cp.model.add_constraint(idx2("cover", t, p), std::move(terms),
                              ConstraintSense::GE,
                              static_cast<double>(d.requirement[p][t]));
    }
  }
}

void add_y_vars(CompiledProblem& cp, int priority = 1) {
  const auto& d = cp.data;
  cp.y_ids.assign(d.num_targets(), {});
  for (int p = 0; p < d.num_targets(); ++p) {
    for (int t = 0; t < d.num_steps(); ++t) {
      cp.y_ids[p].push_back(cp.model.add_binary(idx2("y", t, p), priority));
    }
  }
}

// Linking rows sum_j V_tjp x_j >= r_tp y_tp (PSCLP/MCLP).
void add_link_rows(CompiledProblem& cp) {
  const auto& d = cp.data;
  for (int t = 0; t < d.num_steps(); ++t) {
    for (int p = 0; p < d.num_targets(); ++p) {
      std::vector<LinearTerm> terms;
      for (int j = 0; j < d.num_slots(); ++j) {
        if (d.vis->get(t, j, p)) terms.push_back({cp.x_ids[j], 1.0});
      }
      terms.push_back(
          {cp.y_ids[p][t], -static_cast<double>(d.requirement[p][t])});
      cp.model.add_constraint(idx2("link", t, p), std::move(terms),
                              ConstraintSense::GE, 0.0);
    }
  }
}

void add_cardinality_row(CompiledProblem& cp, int n) {
  if (n < 1) throw ValidationError("formulation: N must be >= 1");
  if (n > cp.data.num_slots()) {
    throw ValidationError("formulation: N exceeds number of slots");
  }
  std::vector<LinearTerm> terms;
  for (int id : cp.x_ids) terms.push_back({id, 1.0});
  cp.model.add_constraint("card", std::move(terms), ConstraintSense::EQ,
                          static_cast<double>(n));
  cp.cardinality = n;
}

// Big-M coverage indicators:
//   sum_j V x - r >= -M(1-y) - beta   and   sum_j V x - r <= M y - beta.
// M = T as written; the tightened variant uses M = T - r.
void add_indicator_rows(CompiledProblem& cp) {
  const auto& d = cp.data;
  const int T = d.num_steps();
  for (int t = 0; t < T; ++t) {
    for (int p = 0; p < d.num_targets(); ++p) {
      const double r = d.requirement[p][t];
      const double big_m = d.tighten_big_m ? std::max(1.0, T - r) : T;
      std::vector<LinearTerm> lo, hi;
      for (int j = 0; j < d.num_slots(); ++j) {
        if (d.vis->get(t, j, p)) {
          lo.push_back({cp.x_ids[j], 1.0});
          hi.push_back({cp.x_ids[j], 1.0});
        }
      }
      lo.push_back({cp.y_ids[p][t], -big_m});
      cp.model.add_constraint(idx2("covlo", t, p), std::move(lo),
                              ConstraintSense::GE, r - big_m - d.beta);
      hi.push_back({cp.y_ids[p][t], -big_m});
      cp.model.add_constraint(idx2("covhi", t, p), std::move(hi),
                              ConstraintSense::LE, r - d.beta);
    }
  }
}

// Gap-length counters omega with either the epoch initialization or the
// cyclic wrap coupling through u_p.
void add_gap_counters(CompiledProblem& cp) {
  const auto& d = cp.data;
  const int T = d.num_steps();
  const double bigT = T;
  cp.omega_ids.assign(d.num_targets(), {});
  for (int p = 0; p < d.num_targets(); ++p) {
    for (int t = 0; t < T; ++t) {
      cp.omega_ids[p].push_back(cp.model.add_variable(
          idx2("w", t, p), VarDomain::Integer, 0.0, bigT, 2));
    }
  }
  if (d.cyclic) {
    cp.u_ids.clear();
    for (int p = 0; p < d.num_targets(); ++p) {
      cp.u_ids.push_back(cp.model.add_variable(
          "u_" + std::to_string(p + 1), VarDomain::Integer, 0.0, bigT, 2));
    }
  }
  for (int p = 0; p < d.num_targets(); ++p) {
    if (!d.cyclic) {
      // w_1 = 1 - y_1
      cp.model.add_constraint(
          "gap0_" + std::to_string(p + 1),
          {{cp.omega_ids[p][0], 1.0}, {cp.y_ids[p][0], 1.0}},
          ConstraintSense::EQ, 1.0);
    } else {
      // w_1 = w_T + 1 - y_1 - u;  u = min(T y_1, w_T) via four rows.
      const int u = cp.u_ids[p];
      const std::string sp = std::to_string(p + 1);
      cp.model.add_constraint("cyc0_" + sp,
                              {{cp.omega_ids[p][0], 1.0},
                               {cp.omega_ids[p][T - 1], -1.0},
                               {cp.y_ids[p][0], 1.0},
                               {u, 1.0}},
                              ConstraintSense::EQ, 1.0);
      cp.model.add_constraint("cycu1_" + sp,
                              {{u, 1.0}, {cp.y_ids[p][0], -bigT}},
                              ConstraintSense::LE, 0.0);
      cp.model.add_constraint("cycu2_" + sp,
                              {{u, 1.0}, {cp.omega_ids[p][T - 1], -1.0}},
                              ConstraintSense::LE, 0.0);
      cp.model.add_constraint("cycu3_" + sp,
                              {{u, 1.0},
                               {cp.omega_ids[p][T - 1], -1.0},
                               {cp.y_ids[p][0], -bigT}},
                              ConstraintSense::GE, -bigT);
    }
    for (int t = 0; t < T; ++t) {
      // w_t <= T (1 - y_t)
      cp.model.add_constraint(
          idx2("gapcap", t, p),
          {{cp.omega_ids[p][t], 1.0}, {cp.y_ids[p][t], bigT}},
          ConstraintSense::LE, bigT);
      if (t >= 1) {
        // w_t - w_{t-1} <= 1 and w_t - w_{t-1} >= 1 - T y_t
        cp.model.add_constraint(idx2("gapinc", t, p),
                                {{cp.omega_ids[p][t], 1.0},
                                 {cp.omega_ids[p][t - 1], -1.0}},
                                ConstraintSense::LE, 1.0);
        cp.model.add_constraint(idx2("gapfrc", t, p),
                                {{cp.omega_ids[p][t], 1.0},
                                 {cp.omega_ids[p][t - 1], -1.0},
                                 {cp.y_ids[p][t], bigT}},
                                ConstraintSense::GE, 1.0);
      }
    }
  }
}

// Gap-start indicators i plus the a = alpha * i linearization and the
// total-uncovered coupling rows of the average-revisit-time machinery.
void add_art_machinery(CompiledProblem& cp) {
  const auto& d = cp.data;
  const int T = d.num_steps();
  const double bigT = T;
  cp.gap_start_ids.assign(d.num_targets(), {});
  cp.a_ids.assign(d.num_targets(), {});
  cp.alpha_ids.clear();
  for (int p = 0; p < d.num_targets(); ++p) {
    for (int t = 0; t < T; ++t) {
      cp.gap_start_ids[p].push_back(
          cp.model.add_binary(idx2("i", t, p), 2));
    }
  }
  for (int p = 0; p < d.num_targets(); ++p) {
    cp.alpha_ids.push_back(cp.model.add_variable(
        "alpha_" + std::to_string(p + 1), VarDomain::Continuous, 0.0, bigT, 3));
    for (int t = 0; t < T; ++t) {
      cp.a_ids[p].push_back(cp.model.add_variable(
          idx2("a", t, p), VarDomain::Continuous, 0.0, bigT, 3));
    }
  }
  for (int p = 0; p < d.num_targets(); ++p) {
    const std::string sp = std::to_string(p + 1);
    for (int t = 0; t < T; ++t) {
      // a <= T i;  a <= alpha;  a >= alpha - T(1 - i)
      cp.model.add_constraint(
          idx2("lina", t, p),
          {{cp.a_ids[p][t], 1.0}, {cp.gap_start_ids[p][t], -bigT}},
          ConstraintSense::LE, 0.0);
      cp.model.add_constraint(
          idx2("linb", t, p),
          {{cp.a_ids[p][t], 1.0}, {cp.alpha_ids[p], -1.0}},
          ConstraintSense::LE, 0.0);
      cp.model.add_constraint(idx2("linc", t, p),
                              {{cp.a_ids[p][t], 1.0},
                               {cp.alpha_ids[p], -1.0},
                               {cp.gap_start_ids[p][t], -bigT}},
                              ConstraintSense::GE, -bigT);
    }
    // sum_t a_tp >= T - sum_t y_tp
    std::vector<LinearTerm> sum_row;
    for (int t = 0; t < T; ++t) {
      sum_row.push_back({cp.a_ids[p][t], 1.0});
      sum_row.push_back({cp.y_ids[p][t], 1.0});
    }
    cp.model.add_constraint("artsum_" + sp, std::move(sum_row),
                            ConstraintSense::GE, bigT);
    if (!d.cyclic) {
      // i_1 <= 1 - y_1
      cp.model.add_constraint(
          "gs0_" + sp,
          {{cp.gap_start_ids[p][0], 1.0}, {cp.y_ids[p][0], 1.0}},
          ConstraintSense::LE, 1.0);
    } else {
      // i_1 <= T(1-y_1);  i_1 >= y_T - T y_1;  i_1 <= y_T + y_1
      cp.model.add_constraint(
          "gsc1_" + sp,
          {{cp.gap_start_ids[p][0], 1.0}, {cp.y_ids[p][0], bigT}},
          ConstraintSense::LE, bigT);
      cp.model.add_constraint(idx2("gslo", 0, p),
                              {{cp.gap_start_ids[p][0], 1.0},
                               {cp.y_ids[p][T - 1], -1.0},
                               {cp.y_ids[p][0], bigT}},
                              ConstraintSense::GE, 0.0);
      cp.model.add_constraint(idx2("gshi", 0, p),
                              {{cp.gap_start_ids[p][0], 1.0},
                               {cp.y_ids[p][T - 1], -1.0},
                               {cp.y_ids[p][0], -1.0}},
                              ConstraintSense::LE, 0.0);
    }
    for (int t = 1; t < T; ++t) {
      // i_t <= T(1-y_t);  i_t >= y_{t-1} - T y_t;  i_t <= y_{t-1} + y_t
      cp.model.add_constraint(
          idx2("gscap", t, p),
          {{cp.gap_start_ids[p][t], 1.0}, {cp.y_ids[p][t], bigT}},
          ConstraintSense::LE, bigT);
      cp.model.add_constraint(idx2("gslo", t, p),
                              {{cp.gap_start_ids[p][t], 1.0},
                               {cp.y_ids[p][t - 1], -1.0},
                               {cp.y_ids[p][t], bigT}},
                              ConstraintSense::GE, 0.0);
      cp.model.add_constraint(idx2("gshi", t, p),
                              {{cp.gap_start_ids[p][t], 1.0},
                               {cp.y_ids[p][t - 1], -1.0},
                               {cp.y_ids[p][t], -1.0}},
                              ConstraintSense::LE, 0.0);
    }
  }
}

}  // namespace

bool CompiledProblem::var_index_complete() const {
  std::set<int> seen;
  auto take = [&](int id) {
    if (id < 0) return true;
    return seen.insert(id).second;
  };
  for (int id : x_ids) if (!take(id)) return false;
  for (const auto& row : y_ids) for (int id : row) if (!take(id)) return false;
  for (const auto& row : omega_ids) for (int id : row) if (!take(id)) return false;
  for (const auto& row : gap_start_ids) for (int id : row) if (!take(id)) return false;
  for (const auto& row : a_ids) for (int id : row) if (!take(id)) return false;
  for (int id : alpha_ids) if (!take(id)) return false;
  for (int id : u_ids) if (!take(id)) return false;
  for (int id : z_per_target_ids) if (!take(id)) return false;
  if (z_id >= 0 && !take(z_id)) return false;
  return static_cast<int>(seen.size()) == model.num_variables();
}

CompiledProblem build_sclp(const ProblemData& data) {
  CompiledProblem cp = start(data, FormulationKind::Sclp);
  add_cost_objective(cp);
  add_cover_rows(cp);
  cp.model.validate();
  return cp;
}

CompiledProblem build_psclp(const ProblemData& data,
                            const std::vector<int>& coverage_steps,
                            std::optional<long long> mean_coverage) {
  CompiledProblem cp = start(data, FormulationKind::Psclp);
  const int T = data.num_steps(), P = data.num_targets();
  if (!mean_coverage) {
    if (static_cast<int>(coverage_steps.size()) != P) {
      throw ValidationError("psclp: coverage_steps size != num_targets");
    }
    for (int dp : coverage_steps) {
      if (dp < 0 || dp > T) {
        throw ValidationError("psclp: D_p must lie in [0, T]");
      }
    }
  } else if (*mean_coverage < 0 ||
             *mean_coverage > static_cast<long long>(T) * P) {
    throw ValidationError("psclp: D must lie in [0, T*P]");
  }
  add_cost_objective(cp);
  add_y_vars(cp);
  add_link_rows(cp);
  if (mean_coverage) {
    std::vector<LinearTerm> terms;
    for (int p = 0; p < P; ++p) {
      for (int t = 0; t < T; ++t) terms.push_back({cp.y_ids[p][t], 1.0});
    }
    cp.model.add_constraint("pct_mean", std::move(terms), ConstraintSense::GE,
                            static_cast<double>(*mean_coverage));
    cp.mean_coverage = mean_coverage;
  } else {
    for (int p = 0; p < P; ++p) {
      std::vector<LinearTerm> terms;
      for (int t = 0; t < T; ++t) terms.push_back({cp.y_ids[p][t], 1.0});
      cp.model.add_constraint("pct_" + std::to_string(p + 1), std::move(terms),
                              ConstraintSense::GE,
                              static_cast<double>(coverage_steps[p]));
    }
    cp.coverage_steps = coverage_steps;
  }
  cp.model.validate();
  return cp;
}

CompiledProblem build_mclp(const ProblemData& data, int num_satellites,
                           std::optional<double> cost_budget) {
  CompiledProblem cp = start(data, FormulationKind::Mclp);
  add_y_vars(cp);
  std::vector<LinearTerm> obj;
  for (int p = 0; p < data.num_targets(); ++p) {
    for (int t = 0; t < data.num_steps(); ++t) {
      if (data.reward(p, t) != 0.0) {
        obj.push_back({cp.y_ids[p][t], data.reward(p, t)});
      }
    }
  }
  cp.model.set_objective(ObjectiveSense::Maximize, std::move(obj));
  add_link_rows(cp);
  if (cost_budget) {
    if (*cost_budget < 0.0) throw ValidationError("mclp: budget must be >= 0");
    std::vector<LinearTerm> terms;
    for (int j = 0; j < data.num_slots(); ++j) {
      if (data.costs[j] != 0.0) terms.push_back({cp.x_ids[j], data.costs[j]});
    }
    cp.model.add_constraint("budget", std::move(terms), ConstraintSense::LE,
                            *cost_budget);
    cp.cost_budget = cost_budget;
  } else {
    add_cardinality_row(cp, num_satellites);
  }
  cp.model.validate();
  return cp;
}

CompiledProblem build_mmrt(const ProblemData& data, int num_satellites,
                           bool sum_of_mrts) {
  CompiledProblem cp = start(data, FormulationKind::Mmrt);
  cp.sum_of_mrts = sum_of_mrts;
  const int T = data.num_steps(), P = data.num_targets();
  add_y_vars(cp);
  add_cardinality_row(cp, num_satellites);
  add_indicator_rows(cp);
  add_gap_counters(cp);
  if (sum_of_mrts) {
    std::vector<LinearTerm> obj;
    for (int p = 0; p < P; ++p) {
      cp.z_per_target_ids.push_back(cp.model.add_variable(
          "Z_" + std::to_string(p + 1), VarDomain::Integer, 0.0, T, 3));
      obj.push_back({cp.z_per_target_ids[p], 1.0});
    }
    cp.model.set_objective(ObjectiveSense::Minimize, std::move(obj));
    for (int p = 0; p < P; ++p) {
      for (int t = 0; t < T; ++t) {
        cp.model.add_constraint(
            idx2("mrt", t, p),
            {{cp.omega_ids[p][t], 1.0}, {cp.z_per_target_ids[p], -1.0}},
            ConstraintSense::LE, 0.0);
      }
    }
  } else {
    cp.z_id = cp.model.add_variable("Z", VarDomain::Integer, 0.0, T, 3);
    cp.model.set_objective(ObjectiveSense::Minimize, {{cp.z_id, 1.0}});
    for (int p = 0; p < P; ++p) {
      for (int t = 0; t < T; ++t) {
        cp.model.add_constraint(
            idx2("mrt", t, p),
            {{cp.omega_ids[p][t], 1.0}, {cp.z_id, -1.0}},
            ConstraintSense::LE, 0.0);
      }
    }
  }
  cp.model.validate();
  return cp;
}

CompiledProblem build_mart(const ProblemData& data, int num_satellites) {
  CompiledProblem cp = start(data, FormulationKind::Mart);
  add_y_vars(cp);
  add_cardinality_row(cp, num_satellites);
  add_indicator_rows(cp);
  add_art_machinery(cp);
  std::vector<LinearTerm> obj;
  for (int p = 0; p < data.num_targets(); ++p) {
    obj.push_back({cp.alpha_ids[p], 1.0});
  }
  cp.model.set_objective(ObjectiveSense::Minimize, std::move(obj));
  cp.model.validate();
  return cp;
}

CompiledProblem build_max_isl(const ProblemData& data, DegreeMode mode) {
  if (!data.isl) throw ValidationError("max-isl: W tensor missing");
  if (data.isl->num_slots() != data.num_slots() ||
      data.isl->num_steps() != data.num_steps()) {
    throw ValidationError("max-isl: W shape mismatch");
  }
  CompiledProblem cp = start(data, FormulationKind::MaxIsl);
  cp.degree_mode = mode;
  add_cost_objective(cp);
  add_cover_rows(cp);
  // At least three satellites so a Hamiltonian cycle can exist.
  {
    std::vector<LinearTerm> terms;
    for (int id : cp.x_ids) terms.push_back({id, 1.0});
    cp.model.add_constraint("mincard", std::move(terms), ConstraintSense::GE,
                            3.0);
  }
  const int T = data.num_steps(), J = data.num_slots();
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < J; ++k) {
      // sum_{j != k} W_tjk x_j - 0.5 sum_j x_j >= 0, gated by x_k in
      // corrected mode: ... >= -J (1 - x_k).
      std::vector<LinearTerm> terms;
      for (int j = 0; j < J; ++j) {
        double coef = j == k ? 0.0 : (data.isl->get(t, j, k) ? 1.0 : 0.0);
        coef -= 0.5;
        if (mode == DegreeMode::Corrected && j == k) coef -= J;
        if (coef != 0.0) terms.push_back({cp.x_ids[j], coef});
      }
      const double rhs = mode == DegreeMode::Corrected ? -J : 0.0;
      cp.model.add_constraint(idx2("deg", t, k), std::move(terms),
                              ConstraintSense::GE, rhs);
    }
  }
  cp.model.validate();
  return cp;
}

CompiledProblem build_z_mrt(const ProblemData& data,
                            const std::vector<int>& mrt_bounds) {
  CompiledProblem cp = start(data, FormulationKind::Zmrt);
  const int T = data.num_steps(), P = data.num_targets();
  if (static_cast<int>(mrt_bounds.size()) != P) {
    throw ValidationError("z-mrt: bounds size != num_targets");
  }
  for (int z : mrt_bounds) {
    if (z < 0 || z > T) throw ValidationError("z-mrt: z_p must lie in [0, T]");
  }
  cp.mrt_bounds = mrt_bounds;
  add_cost_objective(cp);
  add_y_vars(cp);
  add_indicator_rows(cp);
  add_gap_counters(cp);
  for (int p = 0; p < P; ++p) {
    for (int t = 0; t < T; ++t) {
      cp.model.add_constraint(idx2("zcap", t, p),
                              {{cp.omega_ids[p][t], 1.0}},
                              ConstraintSense::LE,
                              static_cast<double>(mrt_bounds[p]));
    }
  }
  cp.model.validate();
  return cp;
}

CompiledProblem build_gamma_art(const ProblemData& data,
                                const std::vector<double>& art_bounds) {
  CompiledProblem cp = start(data, FormulationKind::GammaArt);
  const int P = data.num_targets();
  if (static_cast<int>(art_bounds.size()) != P) {
    throw ValidationError("gamma-art: bounds size != num_targets");
  }
  for (double g : art_bounds) {
    if (g < 0.0 || g > data.num_steps()) {
      throw ValidationError("gamma-art: gamma_p must lie in [0, T]");
    }
  }
  cp.art_bounds = art_bounds;
  add_cost_objective(cp);
  add_y_vars(cp);
  add_indicator_rows(cp);
  add_art_machinery(cp);
  for (int p = 0; p < P; ++p) {
    cp.model.add_constraint("gcap_" + std::to_string(p + 1),
                            {{cp.alpha_ids[p], 1.0}}, ConstraintSense::LE,
                            art_bounds[p]);
  }
  cp.model.validate();
  return cp;
}

ProblemData make_problem_data(const Scenario& sc,
                              std::shared_ptr<const VisTensor> vis,
                              std::shared_ptr<const IslTensor> isl) {
  ProblemData d;
  d.vis = std::move(vis);
  d.isl = std::move(isl);
  d.costs.reserve(sc.slots.size());
  for (const auto& s : sc.slots) d.costs.push_back(s.cost);
  for (const auto& t : sc.targets) d.requirement.push_back(t.requirement);
  d.rewards = sc.formulation.rewards;
  d.dt_s = sc.grid.dt_s;
  d.cyclic = sc.formulation.cyclic;
  d.beta = sc.formulation.beta;
  d.tighten_big_m = sc.formulation.tighten_big_m;
  d.scenario_hash = sc.content_hash;
  return d;
}

CompiledProblem compile(const Scenario& sc,
                        std::shared_ptr<const VisTensor> vis,
                        std::shared_ptr<const IslTensor> isl) {
  ProblemData d = make_problem_data(sc, std::move(vis), std::move(isl));
  const auto& f = sc.formulation;
  const int T = sc.grid.num_steps;
  const int P = static_cast<int>(sc.targets.size());
  switch (f.kind) {
    case FormulationKind::Sclp:
      return build_sclp(d);
    case FormulationKind::Psclp: {
      if (f.mean_coverage) return build_psclp(d, {}, f.mean_coverage);
      std::vector<int> cov = f.coverage_steps;
      if (cov.empty()) cov.assign(P, T);
      return build_psclp(d, cov);
    }
    case FormulationKind::Mclp:
      return build_mclp(d, f.num_satellites, f.cost_budget);
    case FormulationKind::Mmrt:
      return build_mmrt(d, f.num_satellites, f.sum_of_mrts);
    case FormulationKind::Mart:
      return build_mart(d, f.num_satellites);
    case FormulationKind::MaxIsl:
      return build_max_isl(d, f.degree_mode);
    case FormulationKind::Zmrt: {
      std::vector<int> z = f.mrt_bound_steps;
      if (z.empty()) z.assign(P, 0);
      return build_z_mrt(d, z);
    }
    case FormulationKind::GammaArt: {
      std::vector<double> g = f.art_bound_steps;
      if (g.empty()) g.assign(P, 0.0);
      return build_gamma_art(d, g);
    }
  }
  throw ValidationError("compile: unknown formulation kind");
}

DecodedSolution decode(const CompiledProblem& cp,
                       const std::vector<double>& assignment,
                       double reported_objective) {
  if (static_cast<int>(assignment.size()) != cp.model.num_variables()) {
    throw ValidationError("decode: assignment does not cover all variables");
  }
  DecodedSolution out;
  out.x.resize(cp.x_ids.size());
  for (size_t j = 0; j < cp.x_ids.size(); ++j) {
    out.x[j] = assignment[cp.x_ids[j]] > 0.5 ? 1 : 0;
    if (out.x[j]) out.selected.push_back(static_cast<int>(j));
  }
  out.objective = objective_value(cp.model.objective(), assignment);
  if (std::abs(out.objective - reported_objective) > 1e-6) {
    throw ValidationError(
        "decode: recomputed objective " + std::to_string(out.objective) +
        " does not match reported " + std::to_string(reported_objective));
  }
  out.objective_time = out.objective * cp.data.dt_s;

  auto grab = [&](const std::vector<std::vector<int>>& ids,
                  std::vector<std::vector<double>>& dst) {
    for (const auto& row : ids) {
      std::vector<double> vals;
      vals.reserve(row.size());
      for (int id : row) vals.push_back(assignment[id]);
      dst.push_back(std::move(vals));
    }
  };
  if (!cp.y_ids.empty()) {
    for (const auto& row : cp.y_ids) {
      std::vector<int> vals;
      vals.reserve(row.size());
      for (int id : row) vals.push_back(assignment[id] > 0.5 ? 1 : 0);
      out.y.push_back(std::move(vals));
    }
  }
  grab(cp.omega_ids, out.omega);
  for (int id : cp.alpha_ids) out.alpha.push_back(assignment[id]);
  if (cp.z_id >= 0) out.z = assignment[cp.z_id];
  for (int id : cp.z_per_target_ids) out.z_per_target.push_back(assignment[id]);
  return out;
}

}  // namespace orbcover
