#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "orbcover/model_ir.hpp"

namespace orbcover {

// Basis snapshot for warm starts: per combined variable (structural columns
// first, then one logical per row) whether it is basic or pinned at a bound.
struct SimplexBasis {
  std::vector<std::int32_t> basic;    // m combined indices
  std::vector<std::uint8_t> at_upper; // n+m flags for nonbasic position
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit, Aborted };

struct LpResult {
  LpStatus status = LpStatus::IterLimit;
  double objective = 0.0;
  long iterations = 0;
};

// Safe lower bound from the Lagrangian at the current duals, plus the exact
// reduced costs used to derive it. Valid for any dual vector, so pruning on
// it stays sound even when the factorization has drifted.
struct LpDualInfo {
  double bound = 0.0;
  std::vector<double> reduced_costs;
};

// Bounded-variable primal simplex over the continuous relaxation of a
// MilpModel. Revised form: the basis inverse is applied through an LU
// factorization of the "kernel" (the square submatrix of structural basic
// columns on rows whose logicals are nonbasic) plus a product-form eta
// chain, so the factorization cost scales with the number of structural
// basics rather than the row count.
//
// Minimization is assumed; callers negate maximize objectives.
class LpRelaxation {
 public:
  explicit LpRelaxation(const MilpModel& model);

  // Node bounds for structural variables (same length as model variables).
  void set_structural_bounds(const std::vector<double>& lo,
                             const std::vector<double>& hi);

  // Solves from the current basis (warm) or from the all-logical basis.
  LpResult solve(bool warm = true,
                 std::optional<std::chrono::steady_clock::time_point> deadline =
                     std::nullopt);

  const std::vector<double>& structural_values() const { return x_struct_; }
  // Reduced costs of structural variables at the last optimal basis.
  std::vector<double> structural_reduced_costs();
  LpDualInfo certified_dual_info();
  bool is_nonbasic_at_lower(int structural) const;
  bool is_nonbasic_at_upper(int structural) const;

  SimplexBasis basis() const;
  void set_basis(const SimplexBasis& basis);
  void reset_to_slack_basis();

  int num_rows() const { return m_; }
  int num_structural() const { return n_; }

 private:
  struct Eta {
    int pos;
    std::vector<double> d;
  };

  enum State : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

  double lo(int var) const { return lo_[var]; }
  double hi(int var) const { return hi_[var]; }
  double pinned_value(int var) const;
  bool refactorize();
  void recompute_basic_values();
  void ftran(std::vector<double>& rhs_m, std::vector<double>& out_pos) const;
  void btran(const std::vector<double>& cost_pos, std::vector<double>& y) const;
  void column_times(int var, std::vector<double>& dense) const;  // dense += a_var
  double column_dot(int var, const std::vector<double>& y) const;
  LpResult run(bool phase_one, long& iter_budget, bool* lost_feasibility,
               const std::optional<std::chrono::steady_clock::time_point>& deadline);
  double infeasibility_sum() const;
  void collect_values();

  int n_ = 0;  // structural
  int m_ = 0;  // rows
  // Structural columns, CSC-ish.
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  std::vector<double> cost_;  // structural costs (minimize)
  double obj_const_ = 0.0;

  std::vector<double> lo_, hi_;  // n+m combined bounds

  std::vector<std::int32_t> basic_;   // m combined ids
  std::vector<State> state_;          // n+m
  std::vector<std::int32_t> pos_of_;  // combined -> basis position or -1
  std::vector<double> beta_;          // basic values by position
  std::vector<double> xn_;            // nonbasic pinned values (combined)

  // Kernel factorization snapshot.
  std::vector<int> kernel_cols_;   // structural ids, basis order
  std::vector<int> kernel_rows_;   // rows R
  std::vector<int> row_kind_;      // -1 if row in R, else basis pos of logical
  std::vector<int> kernel_row_of_; // row id -> kernel row index or -1
  std::vector<double> lu_;         // k*k, row-major, L\U packed
  std::vector<int> lu_perm_;       // row permutation
  std::vector<int> col_pos_in_basis_;  // kernel col -> basis position
  int k_ = 0;
  std::vector<Eta> etas_;
  bool factor_valid_ = false;

  std::vector<double> x_struct_;
  std::vector<double> last_y_;  // duals of the last optimal pricing pass
  bool bland_ = false;
  long total_iterations_ = 0;
};

}  // namespace orbcover
