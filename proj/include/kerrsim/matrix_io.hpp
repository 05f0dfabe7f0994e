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

#ifndef KERRSIM_MATRIX_IO_HPP
#define KERRSIM_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "kerrsim/fock.hpp"

namespace kerrsim {

// Plain-text operator serialization.
//
//   kerrsim-operator v1
//   modes <k>
//   dims <d1> ... <dk>
//   format coo            (or: format dense)
//   nnz <count>           (coo only)
//   <row> <col> <re> <im> (coo: one triplet line per stored entry)
//   ...
//
// The dense layout writes total_dim rows of 2*total_dim numbers (re im pairs,
// row major).  Values are written with 17 significant digits so a round trip
// reproduces the operator bit for bit.

void save_operator(std::ostream& os, const Operator& op,
                   const std::string& format = "coo");
void save_operator(const std::string& path, const Operator& op,
                   const std::string& format = "coo");

Operator load_operator(std::istream& is);
Operator load_operator(const std::string& path);

}  // namespace kerrsim

#endif  // KERRSIM_MATRIX_IO_HPP
