// Copyright 2026 The kerrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kerrsim/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace kerrsim {

namespace {
void check_same_keys(const std::map<std::string, cplx>& a,
                     const std::map<std::string, cplx>& b) {
  if (a.size() != b.size() ||
      !std::equal(a.begin(), a.end(), b.begin(),
                  [](const auto& x, const auto& y) { return x.first == y.first; }))
    throw std::invalid_argument(
        "DriveSchedule: all segments must assign the same drive names");
}
}  // namespace

DriveSchedule::DriveSchedule(std::vector<DriveSegment> segments,
                             double ramp_duration) {
  if (segments.empty())
    throw std::invalid_argument("DriveSchedule: no segments");
  if (ramp_duration < 0.0)
    throw std::invalid_argument("DriveSchedule: negative ramp duration");
  ramp_ = ramp_duration;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (!(s.t1 > s.t0))
      throw std::invalid_argument("DriveSchedule: empty or reversed segment");
    if (i > 0) {
      if (s.t0 != segments[i - 1].t1)
        throw std::invalid_argument("DriveSchedule: segments must be contiguous");
      check_same_keys(segments[i - 1].levels, s.levels);
      if (ramp_ > s.t1 - s.t0)
        throw std::invalid_argument(
            "DriveSchedule: ramp longer than a segment");
    }
  }
  for (const auto& [name, v] : segments.front().levels) {
    (void)v;
    names_.push_back(name);
  }
  // knots: segment start, then (boundary, old) -> (boundary + ramp, new)
  times_.push_back(segments.front().t0);
  levels_.push_back(segments.front().levels);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i + 1 < segments.size()) {
      const double tb = segments[i].t1;
      times_.push_back(tb);
      levels_.push_back(segments[i].levels);
      // with a zero ramp this degenerates to a step: two knots share a time
      times_.push_back(tb + ramp_);
      levels_.push_back(segments[i + 1].levels);
    } else {
      times_.push_back(segments[i].t1);
      levels_.push_back(segments[i].levels);
    }
  }
}

DriveSchedule DriveSchedule::constant(std::map<std::string, cplx> levels,
                                      double t0, double t1) {
  DriveSegment s;
  s.t0 = t0;
  s.t1 = t1;
  s.levels = std::move(levels);
  return DriveSchedule({s}, 0.0);
}

DriveSchedule DriveSchedule::linear_sweep(const std::string& name, cplx v0,
                                          cplx v1, double t0, double t1) {
  if (!(t1 > t0))
    throw std::invalid_argument("DriveSchedule: empty sweep interval");
  DriveSchedule s;
  s.ramp_ = 0.0;
  s.names_ = {name};
  s.times_ = {t0, t1};
  s.levels_ = {{{name, v0}}, {{name, v1}}};
  return s;
}

std::map<std::string, cplx> DriveSchedule::drives_at(double t) const {
  if (t <= times_.front()) return levels_.front();
  if (t >= times_.back()) return levels_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  const std::size_t lo = hi - 1;
  const double span = times_[hi] - times_[lo];
  if (span <= 0.0) return levels_[hi];
  const double w = (t - times_[lo]) / span;
  std::map<std::string, cplx> out = levels_[lo];
  for (auto& [name, v] : out) v += w * (levels_[hi].at(name) - v);
  return out;
}

bool DriveSchedule::constant_between(int i) const {
  const auto n = static_cast<std::size_t>(i);
  if (i < 0 || n + 1 >= times_.size())
    throw std::out_of_range("DriveSchedule: knot interval out of range");
  for (const auto& [name, v] : levels_[n])
    if (levels_[n + 1].at(name) != v) return false;
  return true;
}

bool DriveSchedule::constant_on(double a, double b) const {
  const double mid = 0.5 * (a + b);
  if (mid <= times_.front() || mid >= times_.back()) return true;
  const auto it = std::upper_bound(times_.begin(), times_.end(), mid);
  const int lo = static_cast<int>(it - times_.begin()) - 1;
  return constant_between(lo);
}

std::vector<double> merge_boundaries(const DriveSchedule& sched,
                                     const std::vector<double>& grid) {
  if (grid.empty())
    throw std::invalid_argument("merge_boundaries: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("merge_boundaries: grid must ascend");
  std::vector<double> out = grid;
  for (double k : sched.knots())
    if (k > grid.front() && k < grid.back()) out.push_back(k);
  std::sort(out.begin(), out.end());
  const double tol =
      1e-12 * std::max(1.0, std::abs(out.back()) + std::abs(out.front()));
  std::vector<double> dedup;
  for (double t : out)
    if (dedup.empty() || t - dedup.back() > tol) dedup.push_back(t);
  // keep sample points exactly representable: snap near-duplicates of grid
  // values to the grid value itself
  std::size_t gi = 0;
  for (double& t : dedup) {
    while (gi + 1 < grid.size() && grid[gi] < t - tol) ++gi;
    if (std::abs(grid[gi] - t) <= tol) t = grid[gi];
  }
  return dedup;
}

}  // namespace kerrsim
