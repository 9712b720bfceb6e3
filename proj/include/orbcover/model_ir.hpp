#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbcover/core.hpp"

namespace orbcover {

enum class VarDomain { Binary, Integer, Continuous };

struct Variable {
  int id = -1;
  std::string name;
  VarDomain domain = VarDomain::Continuous;
  double lo = 0.0;
  double hi = 0.0;
  // Branching preference class; lower first (0 = structural pattern vars).
  int branch_priority = 0;
};

enum class ConstraintSense { LE, GE, EQ };

struct LinearTerm {
  int var = -1;
  double coef = 0.0;
};

struct LinearConstraint {
  int id = -1;
  std::string name;
  std::vector<LinearTerm> terms;  // unique var ids
  ConstraintSense sense = ConstraintSense::LE;
  double rhs = 0.0;
};

enum class ObjectiveSense { Minimize, Maximize };

struct Objective {
  ObjectiveSense sense = ObjectiveSense::Minimize;
  std::vector<LinearTerm> terms;
  double constant = 0.0;
};

struct ModelMetadata {
  std::string formulation;
  std::uint64_t scenario_hash = 0;
};

// Solver-agnostic MILP. Built once by a formulation compiler, then treated
// as immutable by solvers (branching keeps its own bound arrays).
class MilpModel {
 public:
  int add_variable(const std::string& name, VarDomain domain, double lo,
                   double hi, int branch_priority = 0);
  int add_binary(const std::string& name, int branch_priority = 0) {
    return add_variable(name, VarDomain::Binary, 0.0, 1.0, branch_priority);
  }
  int add_constraint(const std::string& name, std::vector<LinearTerm> terms,
                     ConstraintSense sense, double rhs);
  // Replaces any existing objective.
  void set_objective(ObjectiveSense sense, std::vector<LinearTerm> terms,
                     double constant = 0.0);

  void set_var_bounds(int var_id, double lo, double hi);
  void set_metadata(ModelMetadata md) { metadata_ = std::move(md); }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const {
    return constraints_;
  }
  const Objective& objective() const { return objective_; }
  const ModelMetadata& metadata() const { return metadata_; }
  const Variable& variable(int id) const { return variables_.at(id); }
  int find_variable(const std::string& name) const;  // -1 if absent

  // Every term must reference an existing variable; throws otherwise.
  void validate() const;

 private:
  std::vector<Variable> variables_;
  std::vector<LinearConstraint> constraints_;
  Objective objective_;
  ModelMetadata metadata_;
  std::unordered_map<std::string, int> name_index_;
};

// CPLEX-LP text: Minimize/Maximize, Subject To, Bounds, Generals, Binaries,
// End. Deterministic: terms ordered by variable id, 17 significant digits.
std::string export_lp(const MilpModel& model);
void write_lp_file(const MilpModel& model, const std::string& path);

// Debug dump; schema mirrors the IR field names.
std::string model_to_json(const MilpModel& model);

// Structural equality (ignores branch priorities).
bool models_equal(const MilpModel& a, const MilpModel& b, std::string* why);

double activity(const LinearConstraint& c, const std::vector<double>& values);
bool constraint_satisfied(const LinearConstraint& c,
                          const std::vector<double>& values, double tol);
double objective_value(const Objective& obj, const std::vector<double>& values);

}  // namespace orbcover
