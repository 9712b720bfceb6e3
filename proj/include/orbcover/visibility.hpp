#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbcover/geometry.hpp"
#include "orbcover/scenario.hpp"

namespace orbcover {

// Boolean visibility tensor V, indexed (t, j, p), bit-packed along t per
// (j, p) column.
class VisTensor {
 public:
  VisTensor() = default;
  VisTensor(int num_steps, int num_slots, int num_targets);

  int num_steps() const { return T_; }
  int num_slots() const { return J_; }
  int num_targets() const { return P_; }

  bool get(int t, int j, int p) const {
    const std::size_t bit = bit_index(t, j, p);
    return (bits_[bit >> 6] >> (bit & 63)) & 1u;
  }
  void set(int t, int j, int p, bool value);

  long long count_ones() const;
  // Number of slots covering target p at step t under pattern x.
  int coverage_count(int t, int p, const std::vector<int>& x) const;

 private:
  std::size_t bit_index(int t, int j, int p) const {
    return (static_cast<std::size_t>(j) * P_ + p) * words_per_col_ * 64 + t;
  }
  int T_ = 0, J_ = 0, P_ = 0;
  std::size_t words_per_col_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Boolean inter-satellite link tensor W, indexed (t, j, k); symmetric with
// zero diagonal.
class IslTensor {
 public:
  IslTensor() = default;
  IslTensor(int num_steps, int num_slots);

  int num_steps() const { return T_; }
  int num_slots() const { return J_; }

  bool get(int t, int j, int k) const {
    const std::size_t bit = bit_index(t, j, k);
    return (bits_[bit >> 6] >> (bit & 63)) & 1u;
  }
  void set(int t, int j, int k, bool value);  // sets (k, j) as well

  long long count_ones() const;

 private:
  std::size_t bit_index(int t, int j, int k) const {
    return (static_cast<std::size_t>(t) * J_ + j) * words_per_row_ * 64 + k;
  }
  int T_ = 0, J_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Integer coverage counts b(t, p) = sum_j V(t,j,p) x_j.
struct CoverageTimeline {
  int num_steps = 0;
  int num_targets = 0;
  std::vector<int> counts;  // row-major (t, p)

  int at(int t, int p) const { return counts[static_cast<std::size_t>(t) * num_targets + p]; }
  int& at(int t, int p) { return counts[static_cast<std::size_t>(t) * num_targets + p]; }
};

// Static targets use the elevation mask; dynamic targets use spherical-Earth
// line of sight plus the optional inclusive range gate.
VisTensor build_visibility(const std::vector<OrbitalSlot>& slots,
                           const std::vector<Target>& targets,
                           const TimeGrid& grid, int num_threads = 1);

IslTensor build_isl(const std::vector<OrbitalSlot>& slots, const TimeGrid& grid,
                    const IslGeometry& geo, int num_threads = 1);

CoverageTimeline coverage_timeline(const VisTensor& v,
                                   const std::vector<int>& x);

// Sparse CSV of ones: header `t,j,p,1`, 1-based indices.
void write_visibility_csv(const VisTensor& v, const std::string& path);
VisTensor read_visibility_csv(const std::string& path, int num_steps,
                              int num_slots, int num_targets);

// Same triple format with header `t,j,k,1`; only j < k rows are written.
void write_isl_csv(const IslTensor& w, const std::string& path);
IslTensor read_isl_csv(const std::string& path, int num_steps, int num_slots);

}  // namespace orbcover
