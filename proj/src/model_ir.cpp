#include "orbcover/model_ir.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace orbcover {

int MilpModel::add_variable(const std::string& name, VarDomain domain,
                            double lo, double hi, int branch_priority) {
  if (name.empty()) throw ValidationError("variable name must be non-empty");
  if (name_index_.count(name)) {
    throw ValidationError("duplicate variable name '" + name + "'");
  }
  if (lo > hi) {
    throw ValidationError("variable '" + name + "': lo > hi");
  }
  Variable v;
  v.id = static_cast<int>(variables_.size());
  v.name = name;
  v.domain = domain;
  v.lo = lo;
  v.hi = hi;
  v.branch_priority = branch_priority;
  name_index_[name] = v.id;
  variables_.push_back(std::move(v));
  return variables_.back().id;
}

int MilpModel::add_constraint(const std::string& name,
                              std::vector<LinearTerm> terms,
                              ConstraintSense sense, double rhs) {
  std::set<int> seen;
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw ValidationError("constraint '" + name +
                            "': unknown variable id " + std::to_string(t.var));
    }
    if (!seen.insert(t.var).second) {
      throw ValidationError("constraint '" + name +
                            "': duplicate variable in terms");
    }
  }
  LinearConstraint c;
  c.id = static_cast<int>(constraints_.size());
  c.name = name.empty() ? "c" + std::to_string(c.id + 1) : name;
  c.terms = std::move(terms);
  std::sort(c.terms.begin(), c.terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
  c.sense = sense;
  c.rhs = rhs;
  constraints_.push_back(std::move(c));
  return constraints_.back().id;
}

void MilpModel::set_objective(ObjectiveSense sense,
                              std::vector<LinearTerm> terms, double constant) {
  std::set<int> seen;
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw ValidationError("objective references unknown variable id " +
                            std::to_string(t.var));
    }
    if (!seen.insert(t.var).second) {
      throw ValidationError("objective has a duplicate variable term");
    }
  }
  objective_.sense = sense;
  objective_.terms = std::move(terms);
  std::sort(objective_.terms.begin(), objective_.terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
  objective_.constant = constant;
}

void MilpModel::set_var_bounds(int var_id, double lo, double hi) {
  if (var_id < 0 || var_id >= num_variables()) {
    throw ValidationError("set_var_bounds: unknown variable id");
  }
  if (lo > hi) throw ValidationError("set_var_bounds: lo > hi");
  variables_[var_id].lo = lo;
  variables_[var_id].hi = hi;
}

int MilpModel::find_variable(const std::string& name) const {
  const auto it = name_index_.find(name);
  return it == name_index_.end() ? -1 : it->second;
}

void MilpModel::validate() const {
  for (const auto& c : constraints_) {
    for (const auto& t : c.terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw ValidationError("constraint '" + c.name +
                              "' references unknown variable");
      }
    }
  }
  for (const auto& t : objective_.terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw ValidationError("objective references unknown variable");
    }
  }
}

namespace {

std::string fmt_coef(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void append_terms(std::string& out, const std::vector<LinearTerm>& terms,
                  const std::vector<Variable>& vars) {
  bool first = true;
  for (const auto& t : terms) {
    if (t.coef == 0.0) continue;
    if (first) {
      if (t.coef < 0.0) out += "- ";
      first = false;
    } else {
      out += t.coef < 0.0 ? " - " : " + ";
    }
    out += fmt_coef(std::abs(t.coef));
    out += ' ';
    out += vars[t.var].name;
  }
  if (first) out += "0";
}

}  // namespace

std::string export_lp(const MilpModel& model) {
  model.validate();
  const auto& vars = model.variables();
  std::string out;
  out += "\\ orbcover model";
  if (!model.metadata().formulation.empty()) {
    out += " formulation=" + model.metadata().formulation;
  }
  if (model.metadata().scenario_hash != 0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), " scenario=%016llx",
                  static_cast<unsigned long long>(model.metadata().scenario_hash));
    out += buf;
  }
  out += '\n';
  out += model.objective().sense == ObjectiveSense::Minimize ? "Minimize\n"
                                                             : "Maximize\n";
  out += " obj: ";
  if (model.objective().terms.empty() && !vars.empty()) {
    // Empty objective: a single zero term keeps the row well-formed.
    out += "0 " + vars.front().name;
  } else {
    append_terms(out, model.objective().terms, vars);
  }
  if (model.objective().constant != 0.0) {
    const double c = model.objective().constant;
    out += c < 0.0 ? " - " : " + ";
    out += fmt_coef(std::abs(c));
  }
  out += '\n';

  out += "Subject To\n";
  for (const auto& c : model.constraints()) {
    out += ' ' + c.name + ": ";
    append_terms(out, c.terms, vars);
    switch (c.sense) {
      case ConstraintSense::LE: out += " <= "; break;
      case ConstraintSense::GE: out += " >= "; break;
      case ConstraintSense::EQ: out += " = "; break;
    }
    out += fmt_coef(c.rhs);
    out += '\n';
  }

  // Bounds for every variable, in id order, so a reader can recover the
  // full variable list and ordering from this section alone.
  out += "Bounds\n";
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& v : vars) {
    out += ' ';
    if (v.lo == v.hi) {
      out += v.name + " = " + fmt_coef(v.lo);
    } else if (v.lo == -inf && v.hi == inf) {
      out += v.name + " free";
    } else if (v.hi == inf) {
      out += v.name + " >= " + fmt_coef(v.lo);
    } else if (v.lo == -inf) {
      out += v.name + " <= " + fmt_coef(v.hi);
    } else {
      out += fmt_coef(v.lo) + " <= " + v.name + " <= " + fmt_coef(v.hi);
    }
    out += '\n';
  }

  std::string generals, binaries;
  for (const auto& v : vars) {
    if (v.domain == VarDomain::Integer) generals += ' ' + v.name + '\n';
    if (v.domain == VarDomain::Binary) binaries += ' ' + v.name + '\n';
  }
  if (!generals.empty()) out += "Generals\n" + generals;
  if (!binaries.empty()) out += "Binaries\n" + binaries;
  out += "End\n";
  return out;
}

void write_lp_file(const MilpModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write LP file '" + path + "'");
  out << export_lp(model);
}

std::string model_to_json(const MilpModel& model) {
  nlohmann::json j;
  j["formulation"] = model.metadata().formulation;
  j["scenario_hash"] = model.metadata().scenario_hash;
  j["variables"] = nlohmann::json::array();
  for (const auto& v : model.variables()) {
    const char* dom = v.domain == VarDomain::Binary    ? "binary"
                      : v.domain == VarDomain::Integer ? "integer"
                                                       : "continuous";
    j["variables"].push_back({{"id", v.id},
                              {"name", v.name},
                              {"domain", dom},
                              {"lo", v.lo},
                              {"hi", v.hi},
                              {"branch_priority", v.branch_priority}});
  }
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : model.constraints()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.terms) terms.push_back({{"var", t.var}, {"coef", t.coef}});
    const char* s = c.sense == ConstraintSense::LE   ? "<="
                    : c.sense == ConstraintSense::GE ? ">="
                                                     : "=";
    j["constraints"].push_back(
        {{"name", c.name}, {"terms", terms}, {"sense", s}, {"rhs", c.rhs}});
  }
  nlohmann::json obj;
  obj["sense"] =
      model.objective().sense == ObjectiveSense::Minimize ? "min" : "max";
  nlohmann::json oterms = nlohmann::json::array();
  for (const auto& t : model.objective().terms) {
    oterms.push_back({{"var", t.var}, {"coef", t.coef}});
  }
  obj["terms"] = oterms;
  obj["constant"] = model.objective().constant;
  j["objective"] = obj;
  return j.dump(2);
}

bool models_equal(const MilpModel& a, const MilpModel& b, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (a.num_variables() != b.num_variables()) return fail("variable count");
  for (int i = 0; i < a.num_variables(); ++i) {
    const auto& va = a.variable(i);
    const auto& vb = b.variable(i);
    if (va.name != vb.name) return fail("variable name at id " + std::to_string(i));
    if (va.domain != vb.domain) return fail("domain of " + va.name);
    if (va.lo != vb.lo || va.hi != vb.hi) return fail("bounds of " + va.name);
  }
  if (a.num_constraints() != b.num_constraints()) return fail("constraint count");
  for (int i = 0; i < a.num_constraints(); ++i) {
    const auto& ca = a.constraints()[i];
    const auto& cb = b.constraints()[i];
    if (ca.name != cb.name) return fail("constraint name at " + std::to_string(i));
    if (ca.sense != cb.sense || ca.rhs != cb.rhs) return fail("sense/rhs of " + ca.name);
    if (ca.terms.size() != cb.terms.size()) return fail("terms of " + ca.name);
    for (size_t k = 0; k < ca.terms.size(); ++k) {
      if (ca.terms[k].var != cb.terms[k].var ||
          ca.terms[k].coef != cb.terms[k].coef) {
        return fail("term " + std::to_string(k) + " of " + ca.name);
      }
    }
  }
  const auto& oa = a.objective();
  const auto& ob = b.objective();
  if (oa.sense != ob.sense || oa.constant != ob.constant ||
      oa.terms.size() != ob.terms.size()) {
    return fail("objective");
  }
  for (size_t k = 0; k < oa.terms.size(); ++k) {
    if (oa.terms[k].var != ob.terms[k].var ||
        oa.terms[k].coef != ob.terms[k].coef) {
      return fail("objective term " + std::to_string(k));
    }
  }
  if (a.metadata().formulation != b.metadata().formulation ||
      a.metadata().scenario_hash != b.metadata().scenario_hash) {
    return fail("metadata");
  }
  return true;
}

double activity(const LinearConstraint& c, const std::vector<double>& values) {
  double s = 0.0;
  for (const auto& t : c.terms) s += t.coef * values[t.var];
  return s;
}

bool constraint_satisfied(const LinearConstraint& c,
                          const std::vector<double>& values, double tol) {
  const double a = activity(c, values);
  switch (c.sense) {
    case ConstraintSense::LE: return a <= c.rhs + tol;
    case ConstraintSense::GE: return a >= c.rhs - tol;
    case ConstraintSense::EQ: return std::abs(a - c.rhs) <= tol;
  }
  return false;
}

double objective_value(const Objective& obj, const std::vector<double>& values) {
  double s = obj.constant;
  for (const auto& t : obj.terms) s += t.coef * values[t.var];
  return s;
}

}  // namespace orbcover
