#include "orbcover/visibility.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace orbcover {

VisTensor::VisTensor(int num_steps, int num_slots, int num_targets)
    : T_(num_steps),
      J_(num_slots),
      P_(num_targets),
      words_per_col_((static_cast<std::size_t>(num_steps) + 63) / 64),
      bits_(words_per_col_ * num_slots * num_targets, 0) {}

void VisTensor::set(int t, int j, int p, bool value) {
  const std::size_t bit = bit_index(t, j, p);
  if (value) {
    bits_[bit >> 6] |= (1ULL << (bit & 63));
  } else {
    bits_[bit >> 6] &= ~(1ULL << (bit & 63));
  }
}

long long VisTensor::count_ones() const {
  long long n = 0;
  for (std::uint64_t w : bits_) n += std::popcount(w);
  return n;
}

int VisTensor::coverage_count(int t, int p, const std::vector<int>& x) const {
  int b = 0;
  for (int j = 0; j < J_; ++j) {
    if (x[j] && get(t, j, p)) ++b;
  }
  return b;
}

IslTensor::IslTensor(int num_steps, int num_slots)
    : T_(num_steps),
      J_(num_slots),
      words_per_row_((static_cast<std::size_t>(num_slots) + 63) / 64),
      bits_(words_per_row_ * static_cast<std::size_t>(num_steps) * num_slots,
            0) {}

void IslTensor::set(int t, int j, int k, bool value) {
  if (j == k) return;  // diagonal stays zero
  for (auto [a, b] : {std::pair{j, k}, std::pair{k, j}}) {
    const std::size_t bit = bit_index(t, a, b);
    if (value) {
      bits_[bit >> 6] |= (1ULL << (bit & 63));
    } else {
      bits_[bit >> 6] &= ~(1ULL << (bit & 63));
    }
  }
}

long long IslTensor::count_ones() const {
  long long n = 0;
  for (std::uint64_t w : bits_) n += std::popcount(w);
  return n;
}

namespace {

int clamp_threads(int requested, int work_items) {
  if (requested < 1) requested = 1;
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw > 0 && requested > hw) requested = hw;
  if (requested > work_items) requested = work_items;
  return requested;
}

void parallel_over(int count, int num_threads,
                   const std::function<void(int)>& fn) {
  num_threads = clamp_threads(num_threads, count);
  if (num_threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(num_threads);
  for (int w = 0; w < num_threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += num_threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

VisTensor build_visibility(const std::vector<OrbitalSlot>& slots,
                           const std::vector<Target>& targets,
                           const TimeGrid& grid, int num_threads) {
  const int T = grid.num_steps;
  const int J = static_cast<int>(slots.size());
  const int P = static_cast<int>(targets.size());
  for (const auto& tgt : targets) {
    if (tgt.kind == TargetKind::Dynamic &&
        static_cast<int>(tgt.ephemeris_eci_km.size()) != T) {
      throw ValidationError("target '" + tgt.id +
                            "': ephemeris length != num_steps");
    }
  }

  // Site positions and Earth angles are shared across slots.
  std::vector<Vec3> static_sites(P);
  for (int p = 0; p < P; ++p) {
    if (targets[p].kind == TargetKind::Static) {
      static_sites[p] = site_ecef(targets[p].lat_deg, targets[p].lon_deg,
                                  targets[p].alt_m);
    }
  }
  std::vector<double> theta(T);
  for (int t = 0; t < T; ++t) theta[t] = gmst_deg(grid, t);

  VisTensor v(T, J, P);
  parallel_over(J, num_threads, [&](int j) {
    const auto states = propagate_circular(slots[j], grid);
    for (int t = 0; t < T; ++t) {
      const Vec3& sat_eci = states[t].position_km;
      const Vec3 sat_ecef = rotate_z(sat_eci, theta[t]);
      for (int p = 0; p < P; ++p) {
        const Target& tgt = targets[p];
        bool vis = false;
        if (tgt.kind == TargetKind::Static) {
          vis = elevation_deg(sat_ecef, static_sites[p]) >=
                tgt.min_elevation_deg;
        } else {
          const Vec3& tp = tgt.ephemeris_eci_km[t];
          vis = line_of_sight_clear(sat_eci, tp, kEarthRadiusKm);
          if (vis && tgt.max_range_km) {
            vis = (tp - sat_eci).norm() <= *tgt.max_range_km;
          }
        }
        if (vis) v.set(t, j, p, true);
      }
    }
  });
  return v;
}

IslTensor build_isl(const std::vector<OrbitalSlot>& slots, const TimeGrid& grid,
                    const IslGeometry& geo, int num_threads) {
  const int T = grid.num_steps;
  const int J = static_cast<int>(slots.size());
  std::vector<std::vector<EciState>> states(J);
  parallel_over(J, num_threads, [&](int j) {
    states[j] = propagate_circular(slots[j], grid);
  });

  IslTensor w(T, J);
  parallel_over(T, num_threads, [&](int t) {
    for (int j = 0; j < J; ++j) {
      for (int k = j + 1; k < J; ++k) {
        const auto vis = isl_visibility(states[j][t].position_km,
                                        states[k][t].position_km, geo);
        if (vis.visible) w.set(t, j, k, true);
      }
    }
  });
  return w;
}

CoverageTimeline coverage_timeline(const VisTensor& v,
                                   const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != v.num_slots()) {
    throw ValidationError("coverage_timeline: pattern length != num_slots");
  }
  for (int xi : x) {
    if (xi != 0 && xi != 1) {
      throw ValidationError("coverage_timeline: pattern entries must be 0/1");
    }
  }
  CoverageTimeline b;
  b.num_steps = v.num_steps();
  b.num_targets = v.num_targets();
  b.counts.assign(static_cast<std::size_t>(b.num_steps) * b.num_targets, 0);
  for (int j = 0; j < v.num_slots(); ++j) {
    if (!x[j]) continue;
    for (int p = 0; p < b.num_targets; ++p) {
      for (int t = 0; t < b.num_steps; ++t) {
        if (v.get(t, j, p)) ++b.at(t, p);
      }
    }
  }
  return b;
}

void write_visibility_csv(const VisTensor& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << "t,j,p,1\n";
  for (int t = 0; t < v.num_steps(); ++t) {
    for (int j = 0; j < v.num_slots(); ++j) {
      for (int p = 0; p < v.num_targets(); ++p) {
        if (v.get(t, j, p)) {
          out << (t + 1) << ',' << (j + 1) << ',' << (p + 1) << ",1\n";
        }
      }
    }
  }
}

namespace {

std::vector<std::array<int, 3>> read_triples(const std::string& path,
                                             const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::string("cannot open ") + what + " '" + path + "'");
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::array<int, 3>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::array<int, 3> idx{};
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(ss, cell, ',')) {
        throw ParseError(std::string(what) + " '" + path + "' line " +
                         std::to_string(lineno) + ": expected 4 columns");
      }
      idx[i] = std::stoi(cell);
    }
    rows.push_back(idx);
  }
  return rows;
}

}  // namespace

VisTensor read_visibility_csv(const std::string& path, int num_steps,
                              int num_slots, int num_targets) {
  VisTensor v(num_steps, num_slots, num_targets);
  for (const auto& [t, j, p] : read_triples(path, "visibility csv")) {
    if (t < 1 || t > num_steps || j < 1 || j > num_slots || p < 1 ||
        p > num_targets) {
      throw ValidationError("visibility csv '" + path +
                            "': index out of range");
    }
    v.set(t - 1, j - 1, p - 1, true);
  }
  return v;
}

void write_isl_csv(const IslTensor& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << "t,j,k,1\n";
  for (int t = 0; t < w.num_steps(); ++t) {
    for (int j = 0; j < w.num_slots(); ++j) {
      for (int k = j + 1; k < w.num_slots(); ++k) {
        if (w.get(t, j, k)) {
          out << (t + 1) << ',' << (j + 1) << ',' << (k + 1) << ",1\n";
        }
      }
    }
  }
}

IslTensor read_isl_csv(const std::string& path, int num_steps, int num_slots) {
  IslTensor w(num_steps, num_slots);
  for (const auto& [t, j, k] : read_triples(path, "isl csv")) {
    if (t < 1 || t > num_steps || j < 1 || j > num_slots || k < 1 ||
        k > num_slots) {
      throw ValidationError("isl csv '" + path + "': index out of range");
    }
    w.set(t - 1, j - 1, k - 1, true);
  }
  return w;
}

}  // namespace orbcover
