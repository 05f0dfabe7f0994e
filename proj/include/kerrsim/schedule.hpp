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

#ifndef KERRSIM_SCHEDULE_HPP_
#define KERRSIM_SCHEDULE_HPP_

#include <map>
#include <string>
#include <vector>

#include "kerrsim/fock.hpp"

namespace kerrsim {

struct DriveSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  std::map<std::string, cplx> levels;
};

// Piecewise drive program.  Within a segment the drives sit at the segment
// levels; at each internal boundary they move linearly to the next levels
// over `ramp_duration`, starting at the boundary.  Internally the schedule is
// a piecewise-linear knot sequence, which also expresses continuous sweeps.
class DriveSchedule {
 public:
  DriveSchedule(std::vector<DriveSegment> segments, double ramp_duration = 0.2);

  static DriveSchedule constant(std::map<std::string, cplx> levels, double t0,
                                double t1);
  // One drive moving linearly from `v0` at t0 to `v1` at t1.
  static DriveSchedule linear_sweep(const std::string& name, cplx v0, cplx v1,
                                    double t0, double t1);

  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  double ramp_duration() const { return ramp_; }
  const std::vector<std::string>& parameter_names() const { return names_; }

  std::map<std::string, cplx> drives_at(double t) const;

  // Knot times: the drives are linear (or constant) between consecutive
  // knots.  Integrators restart at these points.
  const std::vector<double>& knots() const { return times_; }

  // True when every drive is exactly constant on [knots()[i], knots()[i+1]].
  bool constant_between(int i) const;

  // True when every drive is constant on [a, b].  The interval must not
  // straddle a knot (callers split at knots first); outside the program
  // the drives extend flat and count as constant.
  bool constant_on(double a, double b) const;

 private:
  DriveSchedule() = default;
  std::vector<double> times_;
  std::vector<std::map<std::string, cplx>> levels_;
  std::vector<std::string> names_;
  double ramp_ = 0.0;
};

// Ascending union of the sample grid and the schedule knots inside the
// grid span, deduplicated.  Propagators restart on these boundaries so no
// step straddles a drive discontinuity or a sample time.
std::vector<double> merge_boundaries(const DriveSchedule& sched,
                                     const std::vector<double>& grid);

}  // namespace kerrsim

#endif  // KERRSIM_SCHEDULE_HPP_
