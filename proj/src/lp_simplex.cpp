#include "orbcover/lp_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbcover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-7;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kLuSingularTol = 1e-11;
constexpr int kMaxEtas = 64;
constexpr long kStallLimit = 2000;

// Solves (LU) x = b in place given packed factors with a swap list.
void lu_solve(const std::vector<double>& lu, const std::vector<int>& perm,
              int k, std::vector<double>& b) {
  for (int c = 0; c < k; ++c) {
    if (perm[c] != c) std::swap(b[c], b[perm[c]]);
  }
  for (int i = 1; i < k; ++i) {
    double s = b[i];
    const double* row = &lu[static_cast<std::size_t>(i) * k];
    for (int j = 0; j < i; ++j) s -= row[j] * b[j];
    b[i] = s;
  }
  for (int i = k - 1; i >= 0; --i) {
    double s = b[i];
    const double* row = &lu[static_cast<std::size_t>(i) * k];
    for (int j = i + 1; j < k; ++j) s -= row[j] * b[j];
    b[i] = s / row[i];
  }
}

// Solves (LU)^T x = b, undoing the row swaps at the end.
void lu_solve_t(const std::vector<double>& lu, const std::vector<int>& perm,
                int k, std::vector<double>& b) {
  for (int i = 0; i < k; ++i) {
    double s = b[i];
    for (int j = 0; j < i; ++j) {
      s -= lu[static_cast<std::size_t>(j) * k + i] * b[j];
    }
    b[i] = s / lu[static_cast<std::size_t>(i) * k + i];
  }
  for (int i = k - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < k; ++j) {
      s -= lu[static_cast<std::size_t>(j) * k + i] * b[j];
    }
    b[i] = s;
  }
  for (int c = k - 1; c >= 0; --c) {
    if (perm[c] != c) std::swap(b[c], b[perm[c]]);
  }
}

}  // namespace

LpRelaxation::LpRelaxation(const MilpModel& model) {
  n_ = model.num_variables();
  m_ = model.num_constraints();
  cost_.assign(n_, 0.0);
  const double sign =
      model.objective().sense == ObjectiveSense::Minimize ? 1.0 : -1.0;
  for (const auto& t : model.objective().terms) cost_[t.var] = sign * t.coef;
  obj_const_ = sign * model.objective().constant;

  std::vector<std::vector<std::pair<int, double>>> cols(n_);
  for (int i = 0; i < m_; ++i) {
    for (const auto& t : model.constraints()[i].terms) {
      if (t.coef != 0.0) cols[t.var].push_back({i, t.coef});
    }
  }
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) {
    col_start_[j + 1] = col_start_[j] + static_cast<int>(cols[j].size());
  }
  col_row_.resize(col_start_[n_]);
  col_val_.resize(col_start_[n_]);
  for (int j = 0; j < n_; ++j) {
    int at = col_start_[j];
    for (const auto& [r, v] : cols[j]) {
      col_row_[at] = r;
      col_val_[at] = v;
      ++at;
    }
  }

  lo_.assign(n_ + m_, 0.0);
  hi_.assign(n_ + m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    lo_[j] = model.variable(j).lo;
    hi_[j] = model.variable(j).hi;
  }
  for (int i = 0; i < m_; ++i) {
    const auto& c = model.constraints()[i];
    switch (c.sense) {
      case ConstraintSense::LE:
        lo_[n_ + i] = -kInf;
        hi_[n_ + i] = c.rhs;
        break;
      case ConstraintSense::GE:
        lo_[n_ + i] = c.rhs;
        hi_[n_ + i] = kInf;
        break;
      case ConstraintSense::EQ:
        lo_[n_ + i] = c.rhs;
        hi_[n_ + i] = c.rhs;
        break;
    }
  }

  x_struct_.assign(n_, 0.0);
  beta_.assign(m_, 0.0);
  reset_to_slack_basis();
}

void LpRelaxation::set_structural_bounds(const std::vector<double>& lo,
                                         const std::vector<double>& hi) {
  for (int j = 0; j < n_; ++j) {
    lo_[j] = lo[j];
    hi_[j] = hi[j];
  }
  for (int j = 0; j < n_; ++j) {
    if (state_[j] == kBasic) continue;
    if (state_[j] == kAtLower && lo_[j] == -kInf) {
      state_[j] = hi_[j] < kInf ? kAtUpper : kFree;
    } else if (state_[j] == kAtUpper && hi_[j] == kInf) {
      state_[j] = lo_[j] > -kInf ? kAtLower : kFree;
    }
    xn_[j] = pinned_value(j);
  }
}

double LpRelaxation::pinned_value(int var) const {
  switch (state_[var]) {
    case kAtLower: return lo_[var];
    case kAtUpper: return hi_[var];
    case kFree: return 0.0;
    case kBasic: break;
  }
  return 0.0;
}

void LpRelaxation::reset_to_slack_basis() {
  basic_.resize(m_);
  state_.assign(n_ + m_, kAtLower);
  pos_of_.assign(n_ + m_, -1);
  xn_.assign(n_ + m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    basic_[i] = n_ + i;
    state_[n_ + i] = kBasic;
    pos_of_[n_ + i] = i;
  }
  for (int j = 0; j < n_; ++j) {
    if (lo_[j] > -kInf) {
      state_[j] = kAtLower;
    } else if (hi_[j] < kInf) {
      state_[j] = kAtUpper;
    } else {
      state_[j] = kFree;
    }
    xn_[j] = pinned_value(j);
  }
  etas_.clear();
  factor_valid_ = false;
}

bool LpRelaxation::refactorize() {
  etas_.clear();
  kernel_cols_.clear();
  kernel_rows_.clear();
  row_kind_.assign(m_, -1);
  kernel_row_of_.assign(m_, -1);
  col_pos_in_basis_.clear();

  for (int q = 0; q < m_; ++q) {
    const int v = basic_[q];
    if (v >= n_) {
      row_kind_[v - n_] = q;
    } else {
      kernel_cols_.push_back(v);
      col_pos_in_basis_.push_back(q);
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (row_kind_[i] < 0) {
      kernel_row_of_[i] = static_cast<int>(kernel_rows_.size());
      kernel_rows_.push_back(i);
    }
  }
  k_ = static_cast<int>(kernel_cols_.size());
  if (static_cast<int>(kernel_rows_.size()) != k_) {
    factor_valid_ = false;
    return false;
  }

  lu_.assign(static_cast<std::size_t>(k_) * k_, 0.0);
  lu_perm_.resize(k_);
  for (int cc = 0; cc < k_; ++cc) {
    const int j = kernel_cols_[cc];
    for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
      const int rr = kernel_row_of_[col_row_[e]];
      if (rr >= 0) lu_[static_cast<std::size_t>(rr) * k_ + cc] = col_val_[e];
    }
  }
  for (int c = 0; c < k_; ++c) {
    int piv = c;
    double best = std::abs(lu_[static_cast<std::size_t>(c) * k_ + c]);
    for (int r = c + 1; r < k_; ++r) {
      const double v = std::abs(lu_[static_cast<std::size_t>(r) * k_ + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < kLuSingularTol) {
      factor_valid_ = false;
      return false;
    }
    lu_perm_[c] = piv;
    if (piv != c) {
      for (int x = 0; x < k_; ++x) {
        std::swap(lu_[static_cast<std::size_t>(c) * k_ + x],
                  lu_[static_cast<std::size_t>(piv) * k_ + x]);
      }
    }
    const double diag = lu_[static_cast<std::size_t>(c) * k_ + c];
    for (int r = c + 1; r < k_; ++r) {
      double& mult = lu_[static_cast<std::size_t>(r) * k_ + c];
      if (mult == 0.0) continue;
      mult /= diag;
      const double mu = mult;
      const double* src = &lu_[static_cast<std::size_t>(c) * k_];
      double* dst = &lu_[static_cast<std::size_t>(r) * k_];
      for (int x = c + 1; x < k_; ++x) dst[x] -= mu * src[x];
    }
  }
  factor_valid_ = true;
  return true;
}

void LpRelaxation::ftran(std::vector<double>& rhs_m,
                         std::vector<double>& out_pos) const {
  out_pos.assign(m_, 0.0);
  std::vector<double> rk(k_);
  for (int rr = 0; rr < k_; ++rr) rk[rr] = rhs_m[kernel_rows_[rr]];
  lu_solve(lu_, lu_perm_, k_, rk);
  // L rows: w = A[L,S] * wS - rhs_L  (rhs_m doubles as the accumulator).
  for (int i = 0; i < m_; ++i) {
    if (row_kind_[i] >= 0) rhs_m[i] = -rhs_m[i];
  }
  for (int cc = 0; cc < k_; ++cc) {
    const double w = rk[cc];
    out_pos[col_pos_in_basis_[cc]] = w;
    if (w == 0.0) continue;
    const int j = kernel_cols_[cc];
    for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
      const int row = col_row_[e];
      if (row_kind_[row] >= 0) rhs_m[row] += col_val_[e] * w;
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (row_kind_[i] >= 0) out_pos[row_kind_[i]] = rhs_m[i];
  }
  for (const Eta& e : etas_) {
    const double wr = out_pos[e.pos] / e.d[e.pos];
    if (wr != 0.0) {
      for (int i = 0; i < m_; ++i) out_pos[i] -= e.d[i] * wr;
    }
    out_pos[e.pos] = wr;
  }
}

void LpRelaxation::btran(const std::vector<double>& cost_pos,
                         std::vector<double>& y) const {
  std::vector<double> z = cost_pos;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double dot = 0.0;
    for (int i = 0; i < m_; ++i) dot += it->d[i] * z[i];
    const double c_pos = z[it->pos];
    z[it->pos] = (c_pos - (dot - it->d[it->pos] * c_pos)) / it->d[it->pos];
  }
  y.assign(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    if (row_kind_[i] >= 0) y[i] = -z[row_kind_[i]];
  }
  std::vector<double> rhs(k_);
  for (int cc = 0; cc < k_; ++cc) {
    const int j = kernel_cols_[cc];
    double s = z[col_pos_in_basis_[cc]];
    for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
      const int row = col_row_[e];
      if (row_kind_[row] >= 0) s -= col_val_[e] * y[row];
    }
    rhs[cc] = s;
  }
  lu_solve_t(lu_, lu_perm_, k_, rhs);
  for (int rr = 0; rr < k_; ++rr) y[kernel_rows_[rr]] = rhs[rr];
}

void LpRelaxation::column_times(int var, std::vector<double>& dense) const {
  if (var < n_) {
    for (int e = col_start_[var]; e < col_start_[var + 1]; ++e) {
      dense[col_row_[e]] += col_val_[e];
    }
  } else {
    dense[var - n_] -= 1.0;
  }
}

double LpRelaxation::column_dot(int var, const std::vector<double>& y) const {
  if (var < n_) {
    double s = 0.0;
    for (int e = col_start_[var]; e < col_start_[var + 1]; ++e) {
      s += col_val_[e] * y[col_row_[e]];
    }
    return s;
  }
  return -y[var - n_];
}

void LpRelaxation::recompute_basic_values() {
  std::vector<double> rhs(m_, 0.0);
  for (int v = 0; v < n_ + m_; ++v) {
    if (state_[v] == kBasic) continue;
    const double val = xn_[v];
    if (val == 0.0) continue;
    if (v < n_) {
      for (int e = col_start_[v]; e < col_start_[v + 1]; ++e) {
        rhs[col_row_[e]] -= col_val_[e] * val;
      }
    } else {
      rhs[v - n_] += val;
    }
  }
  ftran(rhs, beta_);
}

double LpRelaxation::infeasibility_sum() const {
  double f = 0.0;
  for (int q = 0; q < m_; ++q) {
    const int v = basic_[q];
    if (beta_[q] > hi_[v]) f += beta_[q] - hi_[v];
    if (beta_[q] < lo_[v]) f += lo_[v] - beta_[q];
  }
  return f;
}

SimplexBasis LpRelaxation::basis() const {
  SimplexBasis b;
  b.basic = basic_;
  b.at_upper.assign(n_ + m_, 0);
  for (int v = 0; v < n_ + m_; ++v) {
    if (state_[v] == kAtUpper) b.at_upper[v] = 1;
  }
  return b;
}

void LpRelaxation::set_basis(const SimplexBasis& b) {
  if (static_cast<int>(b.basic.size()) != m_) return;
  basic_ = b.basic;
  state_.assign(n_ + m_, kAtLower);
  pos_of_.assign(n_ + m_, -1);
  for (int q = 0; q < m_; ++q) {
    state_[basic_[q]] = kBasic;
    pos_of_[basic_[q]] = q;
  }
  for (int v = 0; v < n_ + m_; ++v) {
    if (state_[v] == kBasic) continue;
    if (v < static_cast<int>(b.at_upper.size()) && b.at_upper[v] &&
        hi_[v] < kInf) {
      state_[v] = kAtUpper;
    } else if (lo_[v] > -kInf) {
      state_[v] = kAtLower;
    } else if (hi_[v] < kInf) {
      state_[v] = kAtUpper;
    } else {
      state_[v] = kFree;
    }
    xn_[v] = pinned_value(v);
  }
  etas_.clear();
  factor_valid_ = false;
}

bool LpRelaxation::is_nonbasic_at_lower(int j) const {
  return state_[j] == kAtLower;
}
bool LpRelaxation::is_nonbasic_at_upper(int j) const {
  return state_[j] == kAtUpper;
}

void LpRelaxation::collect_values() {
  for (int j = 0; j < n_; ++j) {
    x_struct_[j] = state_[j] == kBasic ? beta_[pos_of_[j]] : xn_[j];
  }
}

std::vector<double> LpRelaxation::structural_reduced_costs() {
  std::vector<double> cb(m_, 0.0);
  for (int q = 0; q < m_; ++q) {
    if (basic_[q] < n_) cb[q] = cost_[basic_[q]];
  }
  std::vector<double> y;
  btran(cb, y);
  std::vector<double> d(n_);
  for (int j = 0; j < n_; ++j) d[j] = cost_[j] - column_dot(j, y);
  return d;
}

LpDualInfo LpRelaxation::certified_dual_info() {
  std::vector<double> cb(m_, 0.0);
  for (int q = 0; q < m_; ++q) {
    if (basic_[q] < n_) cb[q] = cost_[basic_[q]];
  }
  std::vector<double> y;
  btran(cb, y);
  // One-sided rows force the dual sign; clamping keeps the Lagrangian
  // bound finite and valid for any y.
  for (int i = 0; i < m_; ++i) {
    if (lo_[n_ + i] == -kInf && y[i] > 0.0) y[i] = 0.0;
    if (hi_[n_ + i] == kInf && y[i] < 0.0) y[i] = 0.0;
  }
  LpDualInfo info;
  info.reduced_costs.resize(n_);
  double bound = obj_const_;
  auto contrib = [](double coef, double l, double h) {
    if (coef == 0.0) return 0.0;
    const double pick = coef > 0.0 ? l : h;
    if (pick == -kInf || pick == kInf) return -kInf;
    return coef * pick;
  };
  for (int j = 0; j < n_; ++j) {
    const double d = cost_[j] - column_dot(j, y);
    info.reduced_costs[j] = d;
    bound += contrib(d, lo_[j], hi_[j]);
  }
  for (int i = 0; i < m_; ++i) {
    bound += contrib(y[i], lo_[n_ + i], hi_[n_ + i]);
  }
  info.bound = bound;
  return info;
}

LpResult LpRelaxation::run(
    bool phase_one, long& iter_budget, bool* lost_feasibility,
    const std::optional<std::chrono::steady_clock::time_point>& deadline) {
  LpResult res;
  std::vector<double> cb(m_), y, dvec, colbuf;
  long stall = 0;
  double last_metric = kInf;

  while (true) {
    if (iter_budget-- <= 0) {
      res.status = LpStatus::IterLimit;
      return res;
    }
    if (deadline && (total_iterations_ & 127) == 0 &&
        std::chrono::steady_clock::now() > *deadline) {
      res.status = LpStatus::Aborted;
      return res;
    }
    ++total_iterations_;
    ++res.iterations;

    double metric;
    if (phase_one) {
      metric = infeasibility_sum();
      if (metric <= kFeasTol) {
        res.status = LpStatus::Optimal;
        return res;
      }
    } else {
      if (lost_feasibility && infeasibility_sum() > 64 * kFeasTol) {
        *lost_feasibility = true;
        res.status = LpStatus::IterLimit;
        return res;
      }
      metric = obj_const_;
      for (int j = 0; j < n_; ++j) {
        metric += cost_[j] * (state_[j] == kBasic ? beta_[pos_of_[j]] : xn_[j]);
      }
    }
    if (metric < last_metric - 1e-12) {
      last_metric = metric;
      stall = 0;
    } else if (++stall > kStallLimit) {
      bland_ = true;
    }

    for (int q = 0; q < m_; ++q) {
      const int v = basic_[q];
      if (phase_one) {
        cb[q] = beta_[q] > hi_[v] + kFeasTol    ? 1.0
                : beta_[q] < lo_[v] - kFeasTol ? -1.0
                                               : 0.0;
      } else {
        cb[q] = v < n_ ? cost_[v] : 0.0;
      }
    }
    btran(cb, y);

    int enter = -1;
    double best_score = 0.0;
    double d_enter = 0.0;
    for (int v = 0; v < n_ + m_; ++v) {
      const State st = state_[v];
      if (st == kBasic) continue;
      if (lo_[v] == hi_[v]) continue;
      const double cj = phase_one ? 0.0 : (v < n_ ? cost_[v] : 0.0);
      const double d = cj - column_dot(v, y);
      bool eligible = false;
      if (st == kAtLower && d < -kDualTol) eligible = true;
      if (st == kAtUpper && d > kDualTol) eligible = true;
      if (st == kFree && std::abs(d) > kDualTol) eligible = true;
      if (!eligible) continue;
      if (bland_) {
        enter = v;
        d_enter = d;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        enter = v;
        d_enter = d;
      }
    }
    if (enter < 0) {
      if (phase_one && infeasibility_sum() > kFeasTol) {
        res.status = LpStatus::Infeasible;
        return res;
      }
      res.status = LpStatus::Optimal;
      return res;
    }

    double sigma;
    if (state_[enter] == kAtLower) {
      sigma = 1.0;
    } else if (state_[enter] == kAtUpper) {
      sigma = -1.0;
    } else {
      sigma = d_enter < 0.0 ? 1.0 : -1.0;
    }

    colbuf.assign(m_, 0.0);
    column_times(enter, colbuf);
    ftran(colbuf, dvec);

    const double own_range = hi_[enter] - lo_[enter];
    double best_theta = own_range;  // may be +inf
    int leave_pos = -1;
    double leave_pivot = 0.0;
    State leave_state = kAtLower;
    for (int q = 0; q < m_; ++q) {
      const double dq = dvec[q];
      if (std::abs(dq) <= kPivotTol) continue;
      const double rate = -sigma * dq;
      const int v = basic_[q];
      double cand;
      State target;
      if (phase_one && beta_[q] > hi_[v] + kFeasTol) {
        if (rate >= 0.0) continue;
        cand = (hi_[v] - beta_[q]) / rate;
        target = kAtUpper;
      } else if (phase_one && beta_[q] < lo_[v] - kFeasTol) {
        if (rate <= 0.0) continue;
        cand = (lo_[v] - beta_[q]) / rate;
        target = kAtLower;
      } else if (rate > 0.0) {
        if (hi_[v] == kInf) continue;
        cand = (hi_[v] - beta_[q]) / rate;
        target = kAtUpper;
      } else {
        if (lo_[v] == -kInf) continue;
        cand = (lo_[v] - beta_[q]) / rate;
        target = kAtLower;
      }
      if (cand < 0.0) cand = 0.0;
      bool take;
      if (leave_pos < 0) {
        take = cand <= best_theta;
      } else if (cand < best_theta - 1e-10) {
        take = true;
      } else if (cand <= best_theta + 1e-10) {
        take = bland_ ? basic_[q] < basic_[leave_pos]
                      : std::abs(dq) > std::abs(leave_pivot);
      } else {
        take = false;
      }
      if (take) {
        if (cand < best_theta) best_theta = cand;
        leave_pos = q;
        leave_pivot = dq;
        leave_state = target;
      }
    }

    if (leave_pos < 0) {
      if (best_theta == kInf) {
        res.status = phase_one ? LpStatus::IterLimit : LpStatus::Unbounded;
        return res;
      }
      const double theta = best_theta;
      for (int q = 0; q < m_; ++q) {
        if (dvec[q] != 0.0) beta_[q] -= theta * sigma * dvec[q];
      }
      state_[enter] = state_[enter] == kAtLower ? kAtUpper : kAtLower;
      xn_[enter] = pinned_value(enter);
      continue;
    }

    const double theta = best_theta;
    const double enter_val = xn_[enter] + sigma * theta;
    for (int q = 0; q < m_; ++q) {
      if (dvec[q] != 0.0) beta_[q] -= theta * sigma * dvec[q];
    }
    const int leaving = basic_[leave_pos];
    state_[leaving] = leave_state;
    xn_[leaving] = pinned_value(leaving);
    pos_of_[leaving] = -1;
    basic_[leave_pos] = enter;
    state_[enter] = kBasic;
    pos_of_[enter] = leave_pos;
    beta_[leave_pos] = enter_val;

    etas_.push_back({leave_pos, dvec});
    if (static_cast<int>(etas_.size()) >= kMaxEtas) {
      if (!refactorize()) {
        reset_to_slack_basis();
        if (!refactorize()) {
          res.status = LpStatus::IterLimit;
          return res;
        }
      }
      recompute_basic_values();
    }
  }
}

LpResult LpRelaxation::solve(
    bool warm, std::optional<std::chrono::steady_clock::time_point> deadline) {
  if (!warm) reset_to_slack_basis();
  if (!factor_valid_) {
    if (!refactorize()) {
      reset_to_slack_basis();
      refactorize();
    }
  }
  recompute_basic_values();

  long iter_budget = 20000 + 200L * (m_ + n_);
  bland_ = false;
  LpResult out;
  int rounds = 0;
  while (true) {
    if (++rounds > 6) {
      out.status = LpStatus::IterLimit;
      collect_values();
      return out;
    }
    bool confirmed_infeasible = false;
    for (int attempt = 0; infeasibility_sum() > kFeasTol; ++attempt) {
      LpResult r1 = run(true, iter_budget, nullptr, deadline);
      out.iterations += r1.iterations;
      if (r1.status == LpStatus::Optimal) break;
      if (r1.status == LpStatus::Infeasible && attempt == 0) {
        // Confirm on fresh factors before declaring infeasible.
        if (!refactorize()) {
          reset_to_slack_basis();
          refactorize();
        }
        recompute_basic_values();
        continue;
      }
      out.status = r1.status;
      if (r1.status == LpStatus::Infeasible) confirmed_infeasible = true;
      collect_values();
      if (!confirmed_infeasible) return out;
      return out;
    }
    bool lost = false;
    LpResult r2 = run(false, iter_budget, &lost, deadline);
    out.iterations += r2.iterations;
    if (lost) continue;
    out.status = r2.status;
    break;
  }
  collect_values();
  double obj = obj_const_;
  for (int j = 0; j < n_; ++j) obj += cost_[j] * x_struct_[j];
  out.objective = obj;
  return out;
}

}  // namespace orbcover
