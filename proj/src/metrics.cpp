#include "orbcover/metrics.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace orbcover {

std::vector<GapSpan> gap_spans(const std::vector<int>& covered, bool cyclic) {
  const int T = static_cast<int>(covered.size());
  std::vector<GapSpan> gaps;
  int run_start = -1;
  for (int t = 0; t < T; ++t) {
    if (!covered[t]) {
      if (run_start < 0) run_start = t;
    } else if (run_start >= 0) {
      gaps.push_back({run_start, t - run_start});
      run_start = -1;
    }
  }
  if (run_start >= 0) gaps.push_back({run_start, T - run_start});

  if (cyclic && gaps.size() >= 2 && !covered.front() && !covered.back()) {
    // Last gap wraps into the first.
    GapSpan merged{gaps.back().start, gaps.back().length + gaps.front().length};
    gaps.back() = merged;
    gaps.erase(gaps.begin());
  }
  return gaps;
}

CoverageReport analyze(const VisTensor& v, const std::vector<int>& x,
                       const std::vector<std::vector<int>>& requirement,
                       bool cyclic, double dt_s,
                       const std::vector<std::string>& target_ids) {
  const int T = v.num_steps();
  const int P = v.num_targets();
  if (static_cast<int>(requirement.size()) != P) {
    throw ValidationError("analyze: requirement rows != num_targets");
  }
  CoverageReport report;
  report.timeline = coverage_timeline(v, x);
  report.per_target.resize(P);
  for (int p = 0; p < P; ++p) {
    if (static_cast<int>(requirement[p].size()) != T) {
      throw ValidationError("analyze: requirement row length != num_steps");
    }
    TargetCoverage& tc = report.per_target[p];
    tc.target_id = p < static_cast<int>(target_ids.size())
                       ? target_ids[p]
                       : "p" + std::to_string(p + 1);
    tc.covered.resize(T);
    int covered_steps = 0;
    for (int t = 0; t < T; ++t) {
      tc.covered[t] = report.timeline.at(t, p) >= requirement[p][t] ? 1 : 0;
      covered_steps += tc.covered[t];
    }
    tc.gaps = gap_spans(tc.covered, cyclic);
    tc.percent_coverage = 100.0 * covered_steps / T;
    tc.continuously_covered = covered_steps == T;
    int total_gap = 0, max_gap = 0;
    for (const auto& g : tc.gaps) {
      total_gap += g.length;
      max_gap = std::max(max_gap, g.length);
    }
    tc.mrt_steps = max_gap;
    tc.art_steps =
        tc.gaps.empty() ? 0.0
                        : static_cast<double>(total_gap) /
                              static_cast<double>(tc.gaps.size());
    tc.mrt_time_s = tc.mrt_steps * dt_s;
    tc.art_time_s = tc.art_steps * dt_s;
  }
  return report;
}

IslAudit isl_audit(const IslTensor& w, const std::vector<int>& x, int t) {
  std::vector<int> sel;
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (x[j]) sel.push_back(j);
  }
  IslAudit audit;
  audit.num_selected = static_cast<int>(sel.size());
  if (sel.empty()) {
    throw ValidationError("isl_audit: pattern selects no slots");
  }
  const int n = audit.num_selected;
  int min_deg = n;
  for (int a = 0; a < n; ++a) {
    int deg = 0;
    for (int b = 0; b < n; ++b) {
      if (a != b && w.get(t, sel[a], sel[b])) ++deg;
    }
    min_deg = std::min(min_deg, deg);
  }
  audit.min_degree = min_deg;
  audit.dirac_ok = n >= 3 && 2 * min_deg >= n;

  // BFS over the induced subgraph.
  std::vector<int> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  int visited = 1;
  while (!queue.empty()) {
    const int a = queue.back();
    queue.pop_back();
    for (int b = 0; b < n; ++b) {
      if (!seen[b] && w.get(t, sel[a], sel[b])) {
        seen[b] = 1;
        ++visited;
        queue.push_back(b);
      }
    }
  }
  audit.connected = visited == n;
  return audit;
}

FailureAnalysis failure_analysis(const VisTensor& v, const IslTensor* w,
                                 const std::vector<int>& x, int drop_slot,
                                 const std::vector<std::vector<int>>& requirement,
                                 bool cyclic, double dt_s) {
  if (drop_slot < 0 || drop_slot >= static_cast<int>(x.size()) ||
      !x[drop_slot]) {
    throw ValidationError("failure_analysis: dropped slot is not selected");
  }
  std::vector<int> reduced = x;
  reduced[drop_slot] = 0;
  FailureAnalysis fa;
  fa.coverage = analyze(v, reduced, requirement, cyclic, dt_s);
  if (w != nullptr) {
    bool any = false;
    for (int xi : reduced) any = any || xi;
    if (any) {
      fa.isl_per_step.reserve(v.num_steps());
      for (int t = 0; t < v.num_steps(); ++t) {
        fa.isl_per_step.push_back(isl_audit(*w, reduced, t));
      }
    }
  }
  return fa;
}

std::string report_to_json(const CoverageReport& report, double dt_s) {
  nlohmann::json j;
  j["dt_s"] = dt_s;
  j["targets"] = nlohmann::json::array();
  for (const auto& tc : report.per_target) {
    nlohmann::json jt;
    jt["id"] = tc.target_id;
    jt["percent_coverage"] = tc.percent_coverage;
    jt["mrt_steps"] = tc.mrt_steps;
    jt["mrt_time_s"] = tc.mrt_time_s;
    jt["art_steps"] = tc.art_steps;
    jt["art_time_s"] = tc.art_time_s;
    jt["continuously_covered"] = tc.continuously_covered;
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& g : tc.gaps) {
      gaps.push_back({{"start", g.start + 1}, {"length", g.length}});
    }
    jt["gaps"] = gaps;
    j["targets"].push_back(jt);
  }
  return j.dump(2);
}

std::string report_to_csv(const CoverageReport& report, double dt_s) {
  std::ostringstream out;
  out << "target,percent_coverage,mrt_steps,mrt_time_s,art_steps,art_time_s,"
         "num_gaps,continuously_covered\n";
  for (const auto& tc : report.per_target) {
    out << tc.target_id << ',' << tc.percent_coverage << ',' << tc.mrt_steps
        << ',' << tc.mrt_steps * dt_s << ',' << tc.art_steps << ','
        << tc.art_steps * dt_s << ',' << tc.gaps.size() << ','
        << (tc.continuously_covered ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace orbcover
