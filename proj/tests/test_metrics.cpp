#include <random>

#include "doctest.h"
#include "orbcover/metrics.hpp"

using namespace orbcover;

namespace {

// Tensor with one slot whose column for target 0 is `col`.
VisTensor column_tensor(const std::vector<int>& col) {
  VisTensor v(static_cast<int>(col.size()), 1, 1);
  for (size_t t = 0; t < col.size(); ++t) {
    if (col[t]) v.set(static_cast<int>(t), 0, 0, true);
  }
  return v;
}

std::vector<std::vector<int>> unit_req(int T) {
  return {std::vector<int>(T, 1)};
}

}  // namespace

TEST_CASE("gap decomposition: plain, wrap merge, leading/trailing") {
  CHECK(gap_spans({1, 0, 0, 1}, false).size() == 1);
  CHECK(gap_spans({1, 0, 0, 1}, false)[0].start == 1);
  CHECK(gap_spans({1, 0, 0, 1}, false)[0].length == 2);

  const auto wrapped = gap_spans({0, 1, 1, 0}, true);
  REQUIRE(wrapped.size() == 1);
  CHECK(wrapped[0].start == 3);
  CHECK(wrapped[0].length == 2);

  const auto unwrapped = gap_spans({0, 1, 1, 0}, false);
  REQUIRE(unwrapped.size() == 2);
  CHECK(unwrapped[0].length == 1);
  CHECK(unwrapped[1].length == 1);

  CHECK(gap_spans({1, 1, 1}, false).empty());
  CHECK(gap_spans({0, 0, 0}, false).size() == 1);
  CHECK(gap_spans({0, 0, 0}, true).size() == 1);
  CHECK(gap_spans({0, 0, 0}, true)[0].length == 3);
}

TEST_CASE("analyze: y=[1,0,0,1] non-cyclic") {
  const VisTensor v = column_tensor({1, 0, 0, 1});
  const auto rep = analyze(v, {1}, unit_req(4), false, 60.0);
  REQUIRE(rep.per_target.size() == 1);
  const auto& tc = rep.per_target[0];
  CHECK(tc.percent_coverage == doctest::Approx(50.0));
  CHECK(tc.mrt_steps == 2);
  CHECK(tc.art_steps == doctest::Approx(2.0));
  CHECK(tc.mrt_time_s == doctest::Approx(120.0));
  REQUIRE(tc.gaps.size() == 1);
  CHECK_FALSE(tc.continuously_covered);
}

TEST_CASE("analyze: y=[0,1,1,0] cyclic wrap merge") {
  const VisTensor v = column_tensor({0, 1, 1, 0});
  const auto rep = analyze(v, {1}, unit_req(4), true, 1.0);
  const auto& tc = rep.per_target[0];
  REQUIRE(tc.gaps.size() == 1);
  CHECK(tc.gaps[0].length == 2);
  CHECK(tc.art_steps == doctest::Approx(2.0));
  CHECK(tc.mrt_steps == 2);
}

TEST_CASE("analyze: y=[0,1,0,0,1] matches the MART example") {
  const VisTensor v = column_tensor({0, 1, 0, 0, 1});
  const auto rep = analyze(v, {1}, unit_req(5), false, 1.0);
  const auto& tc = rep.per_target[0];
  REQUIRE(tc.gaps.size() == 2);
  CHECK(tc.gaps[0].length == 1);
  CHECK(tc.gaps[1].length == 2);
  CHECK(tc.mrt_steps == 2);
  CHECK(tc.art_steps == doctest::Approx(1.5));
}

TEST_CASE("analyze respects the fold requirement") {
  VisTensor v(3, 2, 1);
  for (int t = 0; t < 3; ++t) {
    v.set(t, 0, 0, true);
    if (t != 1) v.set(t, 1, 0, true);
  }
  // r = 2: step 1 has only one satellite.
  const auto rep = analyze(v, {1, 1}, {{2, 2, 2}}, false, 1.0);
  CHECK(rep.per_target[0].covered == std::vector<int>{1, 0, 1});
  CHECK_FALSE(rep.per_target[0].continuously_covered);
}

TEST_CASE("invariants: gaps account for all uncovered steps") {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const int T = 2 + static_cast<int>(rng() % 16);
    std::vector<int> col(T);
    for (auto& c : col) c = rng() % 2;
    const bool cyclic = rng() % 2;
    const VisTensor v = column_tensor(col);
    const auto r = analyze(v, {1}, unit_req(T), cyclic, 1.0);
    const auto& tc = r.per_target[0];
    int uncovered = 0;
    for (int c : col) uncovered += 1 - c;
    int total = 0, longest = 0;
    for (const auto& g : tc.gaps) {
      total += g.length;
      longest = std::max(longest, g.length);
    }
    CHECK(total == uncovered);
    CHECK(tc.mrt_steps == longest);
    if (!tc.gaps.empty()) {
      CHECK(tc.art_steps ==
            doctest::Approx(static_cast<double>(total) / tc.gaps.size()));
    } else {
      CHECK(tc.art_steps == 0.0);
      CHECK(tc.mrt_steps == 0);
    }
    // Cyclic multiset equals non-cyclic unless both ends are uncovered.
    const auto plain = analyze(v, {1}, unit_req(T), false, 1.0).per_target[0];
    if (cyclic && uncovered < T) {
      if (col.front() == 0 && col.back() == 0) {
        CHECK(tc.gaps.size() == plain.gaps.size() - 1);
      } else {
        CHECK(tc.gaps.size() == plain.gaps.size());
        CHECK(tc.mrt_steps == plain.mrt_steps);
      }
    }
  }
}

TEST_CASE("percent coverage is monotone in the pattern support") {
  std::mt19937 rng(37);
  VisTensor v(10, 6, 2);
  for (int t = 0; t < 10; ++t) {
    for (int j = 0; j < 6; ++j) {
      for (int p = 0; p < 2; ++p) {
        if (rng() % 3 == 0) v.set(t, j, p, true);
      }
    }
  }
  const std::vector<std::vector<int>> req(2, std::vector<int>(10, 1));
  for (int it = 0; it < 30; ++it) {
    std::vector<int> x(6), bigger(6);
    for (int j = 0; j < 6; ++j) {
      x[j] = rng() % 2;
      bigger[j] = x[j] | (rng() % 2);
    }
    const auto a = analyze(v, x, req, false, 1.0);
    const auto b = analyze(v, bigger, req, false, 1.0);
    for (int p = 0; p < 2; ++p) {
      CHECK(a.per_target[p].percent_coverage <=
            b.per_target[p].percent_coverage + 1e-12);
    }
  }
}

TEST_CASE("isl audit: complete graph, path, dirac boundary") {
  // Complete graph on 4 selected.
  IslTensor wc(1, 5);
  for (int j = 0; j < 4; ++j) {
    for (int k = j + 1; k < 4; ++k) wc.set(0, j, k, true);
  }
  const auto full = isl_audit(wc, {1, 1, 1, 1, 0}, 0);
  CHECK(full.num_selected == 4);
  CHECK(full.min_degree == 3);
  CHECK(full.dirac_ok);
  CHECK(full.connected);

  // Path on 3 selected: min degree 1 < 1.5.
  IslTensor wp(1, 3);
  wp.set(0, 0, 1, true);
  wp.set(0, 1, 2, true);
  const auto path = isl_audit(wp, {1, 1, 1}, 0);
  CHECK(path.min_degree == 1);
  CHECK_FALSE(path.dirac_ok);
  CHECK(path.connected);

  // n=15 with min degree 8 >= 7.5 passes.
  IslTensor wbig(1, 15);
  for (int j = 0; j < 15; ++j) {
    for (int d = 1; d <= 4; ++d) {
      wbig.set(0, j, (j + d) % 15, true);
      wbig.set(0, j, (j + 15 - d) % 15, true);
    }
  }
  const auto ring = isl_audit(wbig, std::vector<int>(15, 1), 0);
  CHECK(ring.num_selected == 15);
  CHECK(ring.min_degree == 8);
  CHECK(ring.dirac_ok);

  CHECK_THROWS_AS(isl_audit(wp, {0, 0, 0}, 0), ValidationError);
}

TEST_CASE("failure analysis drops one slot") {
  // Two slots, both covering everything; r=2 falls to single fold.
  VisTensor v(4, 2, 1);
  for (int t = 0; t < 4; ++t) {
    v.set(t, 0, 0, true);
    v.set(t, 1, 0, true);
  }
  IslTensor w(4, 2);
  for (int t = 0; t < 4; ++t) w.set(t, 0, 1, true);

  const std::vector<std::vector<int>> req2 = {{2, 2, 2, 2}};
  const auto fa = failure_analysis(v, &w, {1, 1}, 1, req2, false, 1.0);
  // Coverage drops below the two-fold requirement but b stays >= 1.
  CHECK_FALSE(fa.coverage.per_target[0].continuously_covered);
  for (int t = 0; t < 4; ++t) CHECK(fa.coverage.timeline.at(t, 0) == 1);

  CHECK_THROWS_AS(failure_analysis(v, &w, {1, 0}, 1, req2, false, 1.0),
                  ValidationError);

  // Dropping the only covering slot of a step opens a gap.
  VisTensor v2(3, 2, 1);
  v2.set(0, 0, 0, true);
  v2.set(1, 1, 0, true);
  v2.set(2, 0, 0, true);
  const auto fa2 = failure_analysis(v2, nullptr, {1, 1}, 1,
                                    {{1, 1, 1}}, false, 1.0);
  CHECK(fa2.coverage.per_target[0].covered == std::vector<int>{1, 0, 1});
  CHECK(fa2.coverage.per_target[0].mrt_steps == 1);
}

TEST_CASE("report exports are well formed") {
  const VisTensor v = column_tensor({1, 0, 0, 1});
  const auto rep = analyze(v, {1}, unit_req(4), false, 300.0, {"sd"});
  const std::string js = report_to_json(rep, 300.0);
  CHECK(js.find("\"sd\"") != std::string::npos);
  CHECK(js.find("percent_coverage") != std::string::npos);
  const std::string csv = report_to_csv(rep, 300.0);
  CHECK(csv.find("sd,50") != std::string::npos);
}
