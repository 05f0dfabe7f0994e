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

#ifndef KERRSIM_OBSERVABLES_HPP_
#define KERRSIM_OBSERVABLES_HPP_

#include <string>
#include <vector>

#include "kerrsim/fock.hpp"
#include "kerrsim/slh.hpp"

namespace kerrsim {

// A reported quantity: <op> in the current state plus a c-number offset
// evaluated at the scheduled drives.  Output fields are of this shape — the
// operator part of the coupling entry plus its drive constant; plain
// observables such as photon numbers have a zero offset.
struct Observable {
  std::string name;
  Operator op;
  DriveExpr offset;

  Observable(std::string name_, Operator op_, DriveExpr offset_ = DriveExpr())
      : name(std::move(name_)), op(std::move(op_)), offset(std::move(offset_)) {}
};

// Worst-case state-validity figures encountered over a run.
struct StateValiditySummary {
  double max_trace_defect = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  int checked_states = 0;

  void absorb(const QuantumState::Validity& v) {
    max_trace_defect = std::max(max_trace_defect, std::abs(v.trace_defect));
    max_hermiticity_defect =
        std::max(max_hermiticity_defect, v.hermiticity_defect);
    min_eigenvalue = std::min(min_eigenvalue, v.min_eigenvalue);
    ++checked_states;
  }
  bool ok(double tol = 1e-10) const {
    return checked_states >= 0 && max_trace_defect <= tol &&
           max_hermiticity_defect <= tol && min_eigenvalue >= -tol;
  }
};

// Time series of observable means on a common grid.  Standard errors are
// filled by trajectory ensembles and stay empty for deterministic solvers.
struct ExpectationSeries {
  std::vector<double> time;
  std::vector<std::string> names;
  std::vector<std::vector<cplx>> means;      // [observable][time]
  std::vector<std::vector<double>> stderrs;  // [observable][time] or empty
  StateValiditySummary validity;

  int observable_index(const std::string& want) const {
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == want) return static_cast<int>(k);
    return -1;
  }
};

}  // namespace kerrsim

#endif  // KERRSIM_OBSERVABLES_HPP_
