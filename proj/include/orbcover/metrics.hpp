#pragma once

#include <string>
#include <vector>

#include "orbcover/visibility.hpp"

namespace orbcover {

struct GapSpan {
  int start = 0;   // 0-based step where the gap begins
  int length = 0;
};

struct TargetCoverage {
  std::string target_id;
  std::vector<int> covered;        // y timeline, 0/1 per step
  std::vector<GapSpan> gaps;       // wrap-merged when cyclic
  double percent_coverage = 0.0;   // in [0, 100]
  int mrt_steps = 0;               // max gap length, 0 if none
  double art_steps = 0.0;          // mean gap length, 0 if none
  double mrt_time_s = 0.0;
  double art_time_s = 0.0;
  bool continuously_covered = false;  // b >= r at every step
};

struct CoverageReport {
  std::vector<TargetCoverage> per_target;
  CoverageTimeline timeline;
};

// Solver-free coverage analytics from the tensor and a pattern vector.
// covered(t) = [sum_j V(t,j,p) x_j >= r(t,p)]; gaps are maximal uncovered
// runs, merging across the horizon wrap when cyclic.
CoverageReport analyze(const VisTensor& v, const std::vector<int>& x,
                       const std::vector<std::vector<int>>& requirement,
                       bool cyclic, double dt_s,
                       const std::vector<std::string>& target_ids = {});

// Gap decomposition of a single 0/1 coverage timeline.
std::vector<GapSpan> gap_spans(const std::vector<int>& covered, bool cyclic);

struct IslAudit {
  int num_selected = 0;
  int min_degree = 0;     // over selected vertices
  bool dirac_ok = false;  // n >= 3 and min_degree >= n/2
  bool connected = false; // induced graph connected (true for n <= 1)
};

IslAudit isl_audit(const IslTensor& w, const std::vector<int>& x, int t);

struct FailureAnalysis {
  CoverageReport coverage;
  std::vector<IslAudit> isl_per_step;  // empty when W not supplied
};

// Re-runs the analysis with one selected slot removed.
FailureAnalysis failure_analysis(const VisTensor& v, const IslTensor* w,
                                 const std::vector<int>& x, int drop_slot,
                                 const std::vector<std::vector<int>>& requirement,
                                 bool cyclic, double dt_s);

std::string report_to_json(const CoverageReport& report, double dt_s);
std::string report_to_csv(const CoverageReport& report, double dt_s);

}  // namespace orbcover
