#pragma once

// Test-only LP reader: parses exactly the dialect export_lp emits so tests
// can assert write->read round trips. Not part of the library.

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbcover/model_ir.hpp"

namespace orbcover::testing {

struct ParsedTerm {
  std::string name;
  double coef;
};

inline std::vector<ParsedTerm> parse_expression(const std::string& text) {
  std::vector<ParsedTerm> terms;
  std::istringstream ss(text);
  std::string tok;
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  while (ss >> tok) {
    if (tok == "+") {
      sign = 1.0;
      continue;
    }
    if (tok == "-") {
      sign = -1.0;
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end && *end == '\0') {
      coef = v;
      have_coef = true;
    } else {
      terms.push_back({tok, sign * (have_coef ? coef : 1.0)});
      sign = 1.0;
      coef = 1.0;
      have_coef = false;
    }
  }
  return terms;
}

inline MilpModel read_lp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  enum Section { None, Objective, SubjectTo, Bounds, Generals, Binaries };
  Section section = None;
  ObjectiveSense sense = ObjectiveSense::Minimize;
  std::string obj_text;
  std::vector<std::pair<std::string, std::string>> raw_constraints;
  struct BoundEntry {
    std::string name;
    double lo, hi;
  };
  std::vector<BoundEntry> bounds;
  std::set<std::string> generals, binaries;
  ModelMetadata meta;

  const double inf = std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '\\') {
      std::istringstream cs(line.substr(1));
      std::string tok;
      while (cs >> tok) {
        if (tok.rfind("formulation=", 0) == 0) {
          meta.formulation = tok.substr(12);
        } else if (tok.rfind("scenario=", 0) == 0) {
          meta.scenario_hash =
              std::stoull(tok.substr(9), nullptr, 16);
        }
      }
      continue;
    }
    if (line == "Minimize") {
      section = Objective;
      sense = ObjectiveSense::Minimize;
      continue;
    }
    if (line == "Maximize") {
      section = Objective;
      sense = ObjectiveSense::Maximize;
      continue;
    }
    if (line == "Subject To") {
      section = SubjectTo;
      continue;
    }
    if (line == "Bounds") {
      section = Bounds;
      continue;
    }
    if (line == "Generals") {
      section = Generals;
      continue;
    }
    if (line == "Binaries") {
      section = Binaries;
      continue;
    }
    if (line == "End") break;

    switch (section) {
      case Objective: {
        auto colon = line.find(':');
        obj_text += colon == std::string::npos ? line : line.substr(colon + 1);
        break;
      }
      case SubjectTo: {
        const auto colon = line.find(':');
        std::string name = line.substr(0, colon);
        while (!name.empty() && name.front() == ' ') name.erase(0, 1);
        raw_constraints.push_back({name, line.substr(colon + 1)});
        break;
      }
      case Bounds: {
        std::istringstream bs(line);
        std::vector<std::string> toks;
        std::string t;
        while (bs >> t) toks.push_back(t);
        BoundEntry e{"", -inf, inf};
        if (toks.size() == 2 && toks[1] == "free") {
          e.name = toks[0];
        } else if (toks.size() == 3 && toks[1] == "=") {
          e.name = toks[0];
          e.lo = e.hi = std::stod(toks[2]);
        } else if (toks.size() == 3 && toks[1] == ">=") {
          e.name = toks[0];
          e.lo = std::stod(toks[2]);
        } else if (toks.size() == 3 && toks[1] == "<=") {
          e.name = toks[0];
          e.hi = std::stod(toks[2]);
        } else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
          e.name = toks[2];
          e.lo = std::stod(toks[0]);
          e.hi = std::stod(toks[4]);
        } else {
          throw ParseError("lp reader: bad bounds line '" + line + "'");
        }
        bounds.push_back(e);
        break;
      }
      case Generals: {
        std::istringstream gs(line);
        std::string name;
        while (gs >> name) generals.insert(name);
        break;
      }
      case Binaries: {
        std::istringstream gs(line);
        std::string name;
        while (gs >> name) binaries.insert(name);
        break;
      }
      case None:
        break;
    }
  }

  MilpModel model;
  model.set_metadata(meta);
  std::map<std::string, int> ids;
  for (const auto& e : bounds) {
    VarDomain dom = VarDomain::Continuous;
    if (binaries.count(e.name)) dom = VarDomain::Binary;
    else if (generals.count(e.name)) dom = VarDomain::Integer;
    ids[e.name] = model.add_variable(e.name, dom, e.lo, e.hi);
  }

  auto to_terms = [&](const std::vector<ParsedTerm>& parsed) {
    std::vector<LinearTerm> terms;
    for (const auto& p : parsed) {
      if (p.coef == 0.0) continue;  // synthesized empty-objective marker
      terms.push_back({ids.at(p.name), p.coef});
    }
    return terms;
  };

  model.set_objective(sense, to_terms(parse_expression(obj_text)));

  for (const auto& [name, body] : raw_constraints) {
    ConstraintSense cs;
    std::size_t at;
    if ((at = body.find("<=")) != std::string::npos) {
      cs = ConstraintSense::LE;
    } else if ((at = body.find(">=")) != std::string::npos) {
      cs = ConstraintSense::GE;
    } else if ((at = body.find(" = ")) != std::string::npos) {
      cs = ConstraintSense::EQ;
    } else {
      throw ParseError("lp reader: no sense in '" + body + "'");
    }
    const std::string lhs = body.substr(0, at);
    const std::string rhs =
        body.substr(at + (cs == ConstraintSense::EQ ? 3 : 2));
    model.add_constraint(name, to_terms(parse_expression(lhs)), cs,
                         std::stod(rhs));
  }
  return model;
}

}  // namespace orbcover::testing
