#include "orbcover/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>

#include "orbcover/lp_simplex.hpp"
#include "orbcover/metrics.hpp"

namespace orbcover {

namespace {

constexpr double kFeasCheckTol = 1e-6;
constexpr double kIntTol = 1e-6;

bool is_cardinality_problem(const CompiledProblem& cp) {
  return cp.cardinality > 0;
}

std::vector<int> coverage_indicator(const CompiledProblem& cp,
                                    const std::vector<int>& x, int p) {
  const auto& d = cp.data;
  std::vector<int> y(d.num_steps(), 0);
  for (int t = 0; t < d.num_steps(); ++t) {
    y[t] = d.vis->coverage_count(t, p, x) >= d.requirement[p][t] ? 1 : 0;
  }
  return y;
}

}  // namespace

std::optional<std::vector<double>> complete_assignment(
    const CompiledProblem& cp, const std::vector<int>& x) {
  const auto& d = cp.data;
  const int T = d.num_steps(), P = d.num_targets(), J = d.num_slots();
  if (static_cast<int>(x.size()) != J) {
    throw ValidationError("complete_assignment: pattern length != num_slots");
  }
  std::vector<double> a(cp.model.num_variables(), 0.0);
  for (int j = 0; j < J; ++j) a[cp.x_ids[j]] = x[j];

  std::vector<std::vector<int>> y(P);
  if (!cp.y_ids.empty()) {
    for (int p = 0; p < P; ++p) {
      y[p] = coverage_indicator(cp, x, p);
      for (int t = 0; t < T; ++t) a[cp.y_ids[p][t]] = y[p][t];
    }
  }

  if (!cp.omega_ids.empty()) {
    double z_all = 0.0;
    for (int p = 0; p < P; ++p) {
      int trailing = 0;
      if (d.cyclic) {
        bool any = false;
        for (int t = 0; t < T; ++t) any = any || y[p][t];
        if (!any) return std::nullopt;  // cyclic counters have no fixpoint
        while (trailing < T && !y[p][T - 1 - trailing]) ++trailing;
      }
      std::vector<double> w(T, 0.0);
      w[0] = y[p][0] ? 0.0 : (d.cyclic ? trailing + 1.0 : 1.0);
      for (int t = 1; t < T; ++t) w[t] = y[p][t] ? 0.0 : w[t - 1] + 1.0;
      double zp = 0.0;
      for (int t = 0; t < T; ++t) {
        a[cp.omega_ids[p][t]] = w[t];
        zp = std::max(zp, w[t]);
      }
      if (!cp.u_ids.empty()) a[cp.u_ids[p]] = y[p][0] ? w[T - 1] : 0.0;
      if (!cp.z_per_target_ids.empty()) a[cp.z_per_target_ids[p]] = zp;
      z_all = std::max(z_all, zp);
    }
    if (cp.z_id >= 0) a[cp.z_id] = z_all;
  }

  if (!cp.gap_start_ids.empty()) {
    for (int p = 0; p < P; ++p) {
      int uncovered = 0;
      for (int t = 0; t < T; ++t) uncovered += 1 - y[p][t];
      std::vector<int> gap_start(T, 0);
      gap_start[0] = d.cyclic ? (!y[p][0] && y[p][T - 1] ? 1 : 0)
                              : (!y[p][0] ? 1 : 0);
      for (int t = 1; t < T; ++t) {
        gap_start[t] = (!y[p][t] && y[p][t - 1]) ? 1 : 0;
      }
      int gaps = 0;
      for (int t = 0; t < T; ++t) gaps += gap_start[t];
      if (uncovered > 0 && gaps == 0) return std::nullopt;
      const double alpha =
          uncovered > 0 ? static_cast<double>(uncovered) / gaps : 0.0;
      a[cp.alpha_ids[p]] = alpha;
      for (int t = 0; t < T; ++t) {
        a[cp.gap_start_ids[p][t]] = gap_start[t];
        a[cp.a_ids[p][t]] = alpha * gap_start[t];
      }
    }
  }
  return a;
}

Solution solve_exhaustive(const CompiledProblem& cp, long long limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const int J = cp.data.num_slots();
  const bool card = is_cardinality_problem(cp);

  double count;
  if (card) {
    count = 1.0;
    for (int i = 0; i < cp.cardinality; ++i) {
      count = count * (J - i) / (i + 1);
    }
  } else {
    count = std::pow(2.0, J);
  }
  if (count > static_cast<double>(limit)) {
    throw ValidationError("solve_exhaustive: enumeration budget exceeded");
  }

  const bool maximize =
      cp.model.objective().sense == ObjectiveSense::Maximize;
  Solution best;
  best.status = SolveStatus::Infeasible;
  long long visited = 0;

  auto consider = [&](const std::vector<int>& x) {
    ++visited;
    auto assignment = complete_assignment(cp, x);
    if (!assignment) return;
    for (const auto& c : cp.model.constraints()) {
      if (!constraint_satisfied(c, *assignment, 1e-9)) return;
    }
    const double obj = objective_value(cp.model.objective(), *assignment);
    const bool better =
        !best.has_incumbent ||
        (maximize ? obj > best.objective + 1e-12 : obj < best.objective - 1e-12);
    if (better) {
      best.has_incumbent = true;
      best.objective = obj;
      best.assignment = std::move(*assignment);
    }
  };

  std::vector<int> x(J, 0);
  if (card) {
    const int n = cp.cardinality;
    std::vector<int> comb(n);
    for (int i = 0; i < n; ++i) comb[i] = i;
    while (true) {
      std::fill(x.begin(), x.end(), 0);
      for (int i : comb) x[i] = 1;
      consider(x);
      int i = n - 1;
      while (i >= 0 && comb[i] == J - n + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int k2 = i + 1; k2 < n; ++k2) comb[k2] = comb[k2 - 1] + 1;
    }
  } else {
    for (unsigned long long mask = 0; mask < (1ULL << J); ++mask) {
      for (int j = 0; j < J; ++j) x[j] = (mask >> j) & 1ULL;
      consider(x);
    }
  }

  best.node_count = visited;
  if (best.has_incumbent) {
    best.status = SolveStatus::Optimal;
    best.bound = best.objective;
  }
  best.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return best;
}

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

namespace {

struct BoundDelta {
  int var;
  double lo, hi;
  std::shared_ptr<BoundDelta> parent;
};

struct QNode {
  double bound;  // internal (minimize) sense
  long long seq;
  int depth;
  std::shared_ptr<BoundDelta> chain;
};

struct QNodeCompare {
  bool operator()(const QNode& a, const QNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

struct PseudoCost {
  double sum_up = 0.0, sum_down = 0.0;
  long cnt_up = 0, cnt_down = 0;
};

bool all_integral(const MilpModel& model, const std::vector<double>& v) {
  for (const auto& var : model.variables()) {
    if (var.domain == VarDomain::Continuous) continue;
    if (std::abs(v[var.id] - std::round(v[var.id])) > kIntTol) return false;
  }
  return true;
}

std::vector<double> snap_integers(const MilpModel& model,
                                  std::vector<double> v) {
  for (const auto& var : model.variables()) {
    if (var.domain == VarDomain::Continuous) continue;
    v[var.id] = std::round(v[var.id]);
  }
  return v;
}

bool feasible_exact(const MilpModel& model, const std::vector<double>& v,
                    const std::vector<double>& lo,
                    const std::vector<double>& hi) {
  for (const auto& var : model.variables()) {
    if (v[var.id] < lo[var.id] - kFeasCheckTol ||
        v[var.id] > hi[var.id] + kFeasCheckTol) {
      return false;
    }
  }
  for (const auto& c : model.constraints()) {
    if (!constraint_satisfied(c, v, kFeasCheckTol)) return false;
  }
  return true;
}

}  // namespace

Solution solve_bnb(const MilpModel& model, const SolveOptions& opts) {
  model.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto deadline =
      t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(opts.time_limit_s));
  const int n = model.num_variables();
  const bool maximize = model.objective().sense == ObjectiveSense::Maximize;
  const double sense_sign = maximize ? -1.0 : 1.0;

  // Integral objective => bounds can be rounded up to the next integer.
  bool integral_objective = true;
  for (const auto& t : model.objective().terms) {
    const auto& var = model.variable(t.var);
    if (var.domain == VarDomain::Continuous ||
        std::abs(t.coef - std::round(t.coef)) > 1e-12) {
      integral_objective = false;
      break;
    }
  }
  if (std::abs(model.objective().constant -
               std::round(model.objective().constant)) > 1e-12) {
    integral_objective = false;
  }
  auto round_bound = [&](double b) {
    return integral_objective ? std::ceil(b - 1e-6) : b;
  };

  std::vector<double> base_lo(n), base_hi(n);
  for (int j = 0; j < n; ++j) {
    base_lo[j] = model.variable(j).lo;
    base_hi[j] = model.variable(j).hi;
  }

  LpRelaxation lp(model);

  Solution sol;
  sol.status = SolveStatus::Infeasible;
  double incumbent = std::numeric_limits<double>::infinity();  // internal
  std::vector<double> incumbent_values;

  auto install_incumbent = [&](const std::vector<double>& values) {
    const double obj =
        sense_sign * objective_value(model.objective(), values);
    if (obj < incumbent - 1e-12) {
      incumbent = obj;
      incumbent_values = values;
      return true;
    }
    return false;
  };

  if (opts.initial_incumbent &&
      static_cast<int>(opts.initial_incumbent->size()) == n) {
    std::vector<double> v = snap_integers(model, *opts.initial_incumbent);
    if (feasible_exact(model, v, base_lo, base_hi)) {
      install_incumbent(v);
      sol.warm_start_used = true;
    }
  }

  // Root dual info for reduced-cost fixing.
  bool have_root_info = false;
  LpDualInfo root_info;
  auto apply_rc_fixing = [&]() {
    if (!opts.reduced_cost_fixing || !have_root_info ||
        incumbent == std::numeric_limits<double>::infinity()) {
      return;
    }
    const double budget = incumbent - root_info.bound + 1e-9;
    if (budget < 0.0) return;
    for (int j = 0; j < n; ++j) {
      const auto& var = model.variable(j);
      if (var.domain == VarDomain::Continuous) continue;
      const double dj = root_info.reduced_costs[j];
      if (dj > 1e-9) {
        const double span = std::floor(budget / dj);
        const double new_hi = base_lo[j] + span;
        if (new_hi < base_hi[j]) base_hi[j] = std::max(base_lo[j], new_hi);
      } else if (dj < -1e-9) {
        const double span = std::floor(budget / -dj);
        const double new_lo = base_hi[j] - span;
        if (new_lo > base_lo[j]) base_lo[j] = std::min(base_hi[j], new_lo);
      }
    }
  };

  std::priority_queue<QNode, std::vector<QNode>, QNodeCompare> open;
  long long seq = 0;
  open.push({-std::numeric_limits<double>::infinity(), seq++, 0, nullptr});

  std::vector<PseudoCost> pseudo(n);
  auto pseudo_init = [&](int j) {
    // Deterministic seed-dependent jitter for tie diversity.
    const std::uint64_t h =
        fnv1a64(std::to_string(opts.seed) + ":" + std::to_string(j));
    return 1e-9 * static_cast<double>(h % 1024);
  };

  std::vector<double> lo(n), hi(n);
  std::vector<int> stamp(n, -1);
  int stamp_gen = 0;
  bool hit_limit = false;
  double interrupted_bound = std::numeric_limits<double>::infinity();

  auto out_of_budget = [&]() {
    if (opts.node_limit > 0 && sol.node_count >= opts.node_limit) return true;
    return std::chrono::steady_clock::now() > deadline;
  };

  while (!open.empty()) {
    QNode node = open.top();
    if (incumbent < std::numeric_limits<double>::infinity() &&
        round_bound(node.bound) >= incumbent - opts.abs_gap) {
      open.pop();
      continue;  // pruned by bound
    }
    open.pop();
    if (out_of_budget()) {
      hit_limit = true;
      interrupted_bound = std::min(interrupted_bound, node.bound);
      break;
    }

    // Materialize node bounds: base plus deepest-first deltas.
    ++stamp_gen;
    lo = base_lo;
    hi = base_hi;
    for (const BoundDelta* d = node.chain.get(); d; d = d->parent.get()) {
      if (stamp[d->var] == stamp_gen) continue;  // deeper delta wins
      stamp[d->var] = stamp_gen;
      lo[d->var] = std::max(lo[d->var], d->lo);
      hi[d->var] = std::min(hi[d->var], d->hi);
    }
    for (int j = 0; j < n; ++j) {
      if (lo[j] > hi[j]) {
        lo[j] = hi[j] = std::numeric_limits<double>::quiet_NaN();
      }
    }
    bool empty_node = false;
    for (int j = 0; j < n && !empty_node; ++j) {
      empty_node = std::isnan(lo[j]);
    }
    if (empty_node) continue;  // RC fixing emptied this subtree

    // Dive from this node.
    std::shared_ptr<BoundDelta> chain = node.chain;
    int depth = node.depth;
    // Pending pseudo-cost update from the previous branching step.
    int pc_var = -1;
    double pc_frac = 0.0, pc_parent = 0.0;
    bool pc_down = false;
    while (true) {
      if (out_of_budget()) {
        hit_limit = true;
        interrupted_bound = std::min(interrupted_bound, node.bound);
        break;
      }
      lp.set_structural_bounds(lo, hi);
      LpResult res = lp.solve(true, deadline);
      ++sol.node_count;
      if (res.status == LpStatus::Aborted) {
        hit_limit = true;
        interrupted_bound = std::min(interrupted_bound, node.bound);
        break;
      }
      if (res.status == LpStatus::Infeasible) break;
      if (res.status == LpStatus::Unbounded) {
        throw ValidationError("solve_bnb: LP relaxation unbounded");
      }
      if (res.status == LpStatus::IterLimit) {
        throw ValidationError(
            "solve_bnb: numerical failure in LP relaxation (iteration limit)");
      }
      LpDualInfo dual = lp.certified_dual_info();
      if (!have_root_info && depth == 0) {
        root_info = dual;
        have_root_info = true;
        apply_rc_fixing();
      }
      if (pc_var >= 0) {
        const double degradation = std::max(0.0, dual.bound - pc_parent);
        if (pc_down) {
          pseudo[pc_var].sum_down += degradation / std::max(pc_frac, 1e-6);
          ++pseudo[pc_var].cnt_down;
        } else {
          pseudo[pc_var].sum_up +=
              degradation / std::max(1.0 - pc_frac, 1e-6);
          ++pseudo[pc_var].cnt_up;
        }
        pc_var = -1;
      }
      const double node_bound = round_bound(dual.bound);
      if (node_bound >= incumbent - opts.abs_gap) break;  // prune

      const std::vector<double>& xlp = lp.structural_values();
      if (all_integral(model, xlp)) {
        std::vector<double> snapped = snap_integers(model, xlp);
        if (feasible_exact(model, snapped, lo, hi)) {
          if (install_incumbent(snapped)) apply_rc_fixing();
          break;
        }
        // Integral but fails the exact recheck: numerical residue. Branch
        // on the least-integral integer variable to split the box anyway.
      }

      int best_var = -1;
      double best_score = -1.0;
      int best_prio = std::numeric_limits<int>::max();
      for (int j = 0; j < n; ++j) {
        const auto& var = model.variable(j);
        if (var.domain == VarDomain::Continuous) continue;
        const double v = xlp[j];
        const double frac = std::abs(v - std::round(v));
        if (frac <= kIntTol) continue;
        const int prio = var.branch_priority;
        double score;
        if (opts.branching == BranchingRule::PseudoCost) {
          const PseudoCost& pc = pseudo[j];
          const double f = v - std::floor(v);
          const double up =
              pc.cnt_up ? pc.sum_up / pc.cnt_up : 1.0 + pseudo_init(j);
          const double dn =
              pc.cnt_down ? pc.sum_down / pc.cnt_down : 1.0 + pseudo_init(j);
          score = std::max(f * up, 1e-12) * std::max((1.0 - f) * dn, 1e-12);
        } else {
          score = std::min(v - std::floor(v), std::ceil(v) - v);
        }
        if (prio < best_prio ||
            (prio == best_prio && score > best_score + 1e-12)) {
          best_prio = prio;
          best_var = j;
          best_score = score;
        }
      }
      if (best_var < 0) {
        throw ValidationError(
            "solve_bnb: integral relaxation failed the exact feasibility "
            "check");
      }

      const double v = xlp[best_var];
      const double fl = std::floor(v), cl = std::ceil(v);
      const double frac = v - fl;
      const bool dive_down = frac < 0.5;

      auto down_delta = std::make_shared<BoundDelta>(
          BoundDelta{best_var, lo[best_var], fl, chain});
      auto up_delta = std::make_shared<BoundDelta>(
          BoundDelta{best_var, cl, hi[best_var], chain});
      if (dive_down) {
        open.push({dual.bound, seq++, depth + 1, up_delta});
        hi[best_var] = fl;
        chain = down_delta;
      } else {
        open.push({dual.bound, seq++, depth + 1, down_delta});
        lo[best_var] = cl;
        chain = up_delta;
      }
      ++depth;
      if (opts.branching == BranchingRule::PseudoCost) {
        pc_var = best_var;
        pc_frac = frac;
        pc_parent = dual.bound;
        pc_down = dive_down;
      }
    }
    if (hit_limit) break;
  }

  // Final status assembly.
  const bool has_inc = incumbent < std::numeric_limits<double>::infinity();
  sol.has_incumbent = has_inc;
  if (has_inc) {
    sol.assignment = incumbent_values;
    sol.objective = sense_sign * incumbent;
  }
  double open_bound = std::numeric_limits<double>::infinity();
  while (!open.empty()) {
    open_bound = std::min(open_bound, open.top().bound);
    open.pop();
  }
  if (hit_limit) {
    sol.status = SolveStatus::TimeLimit;
    double b = std::min(open_bound, interrupted_bound);
    if (b == std::numeric_limits<double>::infinity()) b = incumbent;
    sol.bound = sense_sign * round_bound(b);
  } else if (has_inc) {
    sol.status = SolveStatus::Optimal;
    sol.bound = sol.objective;  // tree exhausted: proven within abs_gap
  } else {
    sol.status = SolveStatus::Infeasible;
    sol.bound = sense_sign * std::numeric_limits<double>::infinity();
  }
  sol.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return sol;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

VerifyReport verify(const CompiledProblem& cp, const Solution& solution) {
  VerifyReport report;
  if (!solution.has_incumbent) {
    report.violations.push_back("no incumbent to verify");
    return report;
  }
  const auto& a = solution.assignment;
  if (static_cast<int>(a.size()) != cp.model.num_variables()) {
    report.violations.push_back("assignment does not cover all variables");
    return report;
  }
  for (const auto& c : cp.model.constraints()) {
    if (!constraint_satisfied(c, a, kFeasCheckTol)) {
      report.violations.push_back("constraint violated: " + c.name);
    }
  }
  report.recomputed_objective = objective_value(cp.model.objective(), a);
  if (std::abs(report.recomputed_objective - solution.objective) > 1e-6) {
    report.violations.push_back("objective mismatch: recomputed " +
                                std::to_string(report.recomputed_objective) +
                                " vs reported " +
                                std::to_string(solution.objective));
  }

  const auto& d = cp.data;
  const int T = d.num_steps(), P = d.num_targets();
  std::vector<int> x(d.num_slots());
  for (int j = 0; j < d.num_slots(); ++j) x[j] = a[cp.x_ids[j]] > 0.5 ? 1 : 0;
  const CoverageReport oracle =
      analyze(*d.vis, x, d.requirement, d.cyclic, d.dt_s);
  const bool optimal = solution.status == SolveStatus::Optimal;

  // Indicator variables must agree with the oracle coverage state wherever
  // the big-M rows pin them (MMRT/MART/z-MRT/gamma-ART); for PSCLP/MCLP the
  // linking rows only force y=1 => covered.
  const bool pinned_y = cp.kind == FormulationKind::Mmrt ||
                        cp.kind == FormulationKind::Mart ||
                        cp.kind == FormulationKind::Zmrt ||
                        cp.kind == FormulationKind::GammaArt;
  if (!cp.y_ids.empty()) {
    for (int p = 0; p < P; ++p) {
      for (int t = 0; t < T; ++t) {
        const int y = a[cp.y_ids[p][t]] > 0.5 ? 1 : 0;
        const int ind = oracle.per_target[p].covered[t];
        if (pinned_y ? y != ind : (y == 1 && ind == 0)) {
          report.violations.push_back("y_" + std::to_string(t + 1) + "_" +
                                      std::to_string(p + 1) +
                                      " disagrees with coverage oracle");
        }
      }
    }
  }

  switch (cp.kind) {
    case FormulationKind::Sclp:
    case FormulationKind::MaxIsl: {
      for (int p = 0; p < P; ++p) {
        if (!oracle.per_target[p].continuously_covered) {
          report.violations.push_back("target " + std::to_string(p + 1) +
                                      " not continuously covered");
        }
      }
      if (cp.kind == FormulationKind::MaxIsl) {
        int sel = 0;
        for (int xi : x) sel += xi;
        if (sel < 3) report.violations.push_back("fewer than 3 satellites");
        for (int t = 0; t < T && sel >= 1; ++t) {
          const IslAudit audit = isl_audit(*d.isl, x, t);
          if (!audit.dirac_ok) {
            report.violations.push_back("dirac condition fails at t=" +
                                        std::to_string(t + 1));
            break;
          }
        }
      }
      break;
    }
    case FormulationKind::Psclp: {
      for (int p = 0; p < P; ++p) {
        int steps = 0;
        for (int t = 0; t < T; ++t) steps += a[cp.y_ids[p][t]] > 0.5 ? 1 : 0;
        if (!cp.coverage_steps.empty() && steps < cp.coverage_steps[p]) {
          report.violations.push_back("percent coverage below D_p for target " +
                                      std::to_string(p + 1));
        }
      }
      break;
    }
    case FormulationKind::Mclp: {
      double reward = 0.0;
      for (int p = 0; p < P; ++p) {
        for (int t = 0; t < T; ++t) {
          if (oracle.per_target[p].covered[t]) reward += d.reward(p, t);
        }
      }
      if (report.recomputed_objective > reward + 1e-6) {
        report.violations.push_back(
            "objective exceeds the reward attainable under this pattern");
      }
      if (optimal && report.recomputed_objective < reward - 1e-6) {
        report.violations.push_back(
            "optimal objective below the pattern's attainable reward");
      }
      break;
    }
    case FormulationKind::Mmrt: {
      if (cp.sum_of_mrts) {
        for (int p = 0; p < P; ++p) {
          const double zp = a[cp.z_per_target_ids[p]];
          const int mrt = oracle.per_target[p].mrt_steps;
          if (zp < mrt - 1e-9 || (optimal && std::abs(zp - mrt) > 1e-9)) {
            report.violations.push_back("Z_" + std::to_string(p + 1) +
                                        " disagrees with oracle MRT");
          }
        }
      } else {
        int mrt = 0;
        for (int p = 0; p < P; ++p) {
          mrt = std::max(mrt, oracle.per_target[p].mrt_steps);
        }
        const double z = a[cp.z_id];
        if (z < mrt - 1e-9 || (optimal && std::abs(z - mrt) > 1e-9)) {
          report.violations.push_back("Z disagrees with oracle MRT");
        }
      }
      break;
    }
    case FormulationKind::Mart: {
      for (int p = 0; p < P; ++p) {
        const double alpha = a[cp.alpha_ids[p]];
        const double art = oracle.per_target[p].art_steps;
        if (alpha < art - 1e-6 || (optimal && std::abs(alpha - art) > 1e-6)) {
          report.violations.push_back("alpha_" + std::to_string(p + 1) +
                                      " disagrees with oracle ART");
        }
      }
      break;
    }
    case FormulationKind::Zmrt: {
      for (int p = 0; p < P; ++p) {
        if (oracle.per_target[p].mrt_steps > cp.mrt_bounds[p]) {
          report.violations.push_back("oracle MRT exceeds z_p for target " +
                                      std::to_string(p + 1));
        }
      }
      break;
    }
    case FormulationKind::GammaArt: {
      for (int p = 0; p < P; ++p) {
        if (oracle.per_target[p].art_steps > cp.art_bounds[p] + 1e-6) {
          report.violations.push_back("oracle ART exceeds gamma_p for target " +
                                      std::to_string(p + 1));
        }
      }
      break;
    }
  }

  report.ok = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Greedy warm starts
// ---------------------------------------------------------------------------

namespace {

// Max-gap (in steps) over all targets for the pattern, using the oracle.
double pattern_metric(const CompiledProblem& cp, const std::vector<int>& x,
                      bool use_art) {
  const CoverageReport rep =
      analyze(*cp.data.vis, x, cp.data.requirement, cp.data.cyclic, 1.0);
  double m = 0.0;
  for (const auto& tc : rep.per_target) {
    if (use_art) {
      m += tc.covered == std::vector<int>(tc.covered.size(), 0)
               ? cp.data.num_steps()
               : tc.art_steps;
    } else {
      m = std::max(m, static_cast<double>(tc.mrt_steps));
    }
  }
  return m;
}

std::optional<std::vector<int>> greedy_cover(const CompiledProblem& cp) {
  const auto& d = cp.data;
  const int T = d.num_steps(), P = d.num_targets(), J = d.num_slots();
  std::vector<std::vector<int>> deficit(P, std::vector<int>(T));
  long long total = 0;
  for (int p = 0; p < P; ++p) {
    for (int t = 0; t < T; ++t) {
      deficit[p][t] = d.requirement[p][t];
      total += deficit[p][t];
    }
  }
  std::vector<int> x(J, 0);
  while (total > 0) {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < J; ++j) {
      if (x[j]) continue;
      long long gain = 0;
      for (int p = 0; p < P; ++p) {
        for (int t = 0; t < T; ++t) {
          if (deficit[p][t] > 0 && d.vis->get(t, j, p)) ++gain;
        }
      }
      if (gain == 0) continue;
      const double score =
          d.costs[j] > 0.0 ? gain / d.costs[j] : gain * 1e9;
      if (score > best_score + 1e-15) {
        best_score = score;
        best = j;
      }
    }
    if (best < 0) return std::nullopt;  // stuck: continuous cover impossible
    x[best] = 1;
    for (int p = 0; p < P; ++p) {
      for (int t = 0; t < T; ++t) {
        if (deficit[p][t] > 0 && d.vis->get(t, best, p)) {
          --deficit[p][t];
          --total;
        }
      }
    }
  }
  return x;
}

std::vector<int> greedy_cardinality(const CompiledProblem& cp, int n,
                                    bool use_art) {
  const auto& d = cp.data;
  const int J = d.num_slots();
  std::vector<int> x(J, 0);
  for (int pick = 0; pick < n; ++pick) {
    int best = -1;
    double best_metric = std::numeric_limits<double>::infinity();
    for (int j = 0; j < J; ++j) {
      if (x[j]) continue;
      x[j] = 1;
      const double m = pattern_metric(cp, x, use_art);
      x[j] = 0;
      if (m < best_metric - 1e-12) {
        best_metric = m;
        best = j;
      }
    }
    if (best < 0) break;
    x[best] = 1;
  }
  // One pass of pairwise improvement.
  double cur = pattern_metric(cp, x, use_art);
  for (int out = 0; out < J; ++out) {
    if (!x[out]) continue;
    for (int in = 0; in < J; ++in) {
      if (x[in]) continue;
      x[out] = 0;
      x[in] = 1;
      const double m = pattern_metric(cp, x, use_art);
      if (m < cur - 1e-12) {
        cur = m;
        out = -1;  // restart outer scan
        break;
      }
      x[out] = 1;
      x[in] = 0;
    }
    if (out < 0) continue;
  }
  return x;
}

std::vector<int> greedy_reward(const CompiledProblem& cp, int n,
                               std::optional<double> budget) {
  const auto& d = cp.data;
  const int T = d.num_steps(), P = d.num_targets(), J = d.num_slots();
  std::vector<int> x(J, 0);
  std::vector<std::vector<int>> b(P, std::vector<int>(T, 0));
  double spent = 0.0;
  const int picks = n > 0 ? n : J;
  for (int pick = 0; pick < picks; ++pick) {
    int best = -1;
    double best_gain = -1.0;
    for (int j = 0; j < J; ++j) {
      if (x[j]) continue;
      if (budget && spent + d.costs[j] > *budget + 1e-9) continue;
      double gain = 0.0;
      for (int p = 0; p < P; ++p) {
        for (int t = 0; t < T; ++t) {
          if (b[p][t] < d.requirement[p][t] && d.vis->get(t, j, p) &&
              b[p][t] + 1 >= d.requirement[p][t]) {
            gain += d.reward(p, t);
          }
        }
      }
      if (gain > best_gain + 1e-15 || best < 0) {
        best_gain = gain;
        best = j;
      }
    }
    if (best < 0) break;
    x[best] = 1;
    spent += d.costs[best];
    for (int p = 0; p < P; ++p) {
      for (int t = 0; t < T; ++t) {
        if (d.vis->get(t, best, p)) ++b[p][t];
      }
    }
  }
  return x;
}

}  // namespace

std::optional<std::vector<double>> greedy_incumbent(const CompiledProblem& cp) {
  std::optional<std::vector<int>> x;
  switch (cp.kind) {
    case FormulationKind::Sclp:
    case FormulationKind::Zmrt:
    case FormulationKind::GammaArt:
    case FormulationKind::Psclp:
      x = greedy_cover(cp);
      break;
    case FormulationKind::MaxIsl: {
      x = greedy_cover(cp);
      if (x) {
        // Grow the selection until the degree rows hold or we run out.
        auto ok = [&](const std::vector<int>& pat) {
          auto asg = complete_assignment(cp, pat);
          if (!asg) return false;
          for (const auto& c : cp.model.constraints()) {
            if (!constraint_satisfied(c, *asg, 1e-9)) return false;
          }
          return true;
        };
        int guard = cp.data.num_slots();
        while (!ok(*x) && guard-- > 0) {
          int bestj = -1;
          for (int j = 0; j < cp.data.num_slots(); ++j) {
            if (!(*x)[j]) {
              bestj = j;
              break;
            }
          }
          if (bestj < 0) break;
          (*x)[bestj] = 1;
        }
        if (!ok(*x)) x = std::nullopt;
      }
      break;
    }
    case FormulationKind::Mclp:
      x = greedy_reward(cp, cp.cardinality, cp.cost_budget);
      break;
    case FormulationKind::Mmrt:
      x = greedy_cardinality(cp, cp.cardinality, false);
      break;
    case FormulationKind::Mart:
      x = greedy_cardinality(cp, cp.cardinality, true);
      break;
  }
  if (!x) return std::nullopt;
  auto assignment = complete_assignment(cp, *x);
  if (!assignment) return std::nullopt;
  for (const auto& c : cp.model.constraints()) {
    if (!constraint_satisfied(c, *assignment, 1e-9)) return std::nullopt;
  }
  return assignment;
}

}  // namespace orbcover
