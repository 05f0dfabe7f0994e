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

#include "kerrsim/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kerrsim {

namespace {
constexpr const char* kMagic = "kerrsim-operator";
constexpr const char* kVersion = "v1";

void expect_token(std::istream& is, const std::string& want) {
  std::string got;
  is >> got;
  if (got != want) {
    throw std::runtime_error("operator file: expected '" + want + "', got '" +
                             got + "'");
  }
}
}  // namespace

void save_operator(std::ostream& os, const Operator& op,
                   const std::string& format) {
  if (format != "coo" && format != "dense") {
    throw std::invalid_argument("save_operator: unknown format " + format);
  }
  os << kMagic << " " << kVersion << "\n";
  os << "modes " << op.space().modes() << "\n";
  os << "dims";
  for (int d : op.space().mode_dims) os << " " << d;
  os << "\n";
  os << "format " << format << "\n";
  os << std::setprecision(17);
  if (format == "coo") {
    os << "nnz " << op.nnz() << "\n";
    const SparseCd& m = op.matrix();
    for (int r = 0; r < m.outerSize(); ++r) {
      for (SparseCd::InnerIterator it(m, r); it; ++it) {
        os << it.row() << " " << it.col() << " " << it.value().real() << " "
           << it.value().imag() << "\n";
      }
    }
  } else {
    Eigen::MatrixXcd d = op.dense();
    for (int r = 0; r < d.rows(); ++r) {
      for (int c = 0; c < d.cols(); ++c) {
        if (c) os << " ";
        os << d(r, c).real() << " " << d(r, c).imag();
      }
      os << "\n";
    }
  }
}

void save_operator(const std::string& path, const Operator& op,
                   const std::string& format) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_operator: cannot open " + path);
  save_operator(f, op, format);
}

Operator load_operator(std::istream& is) {
  expect_token(is, kMagic);
  expect_token(is, kVersion);
  expect_token(is, "modes");
  int modes = 0;
  is >> modes;
  if (!is || modes < 1) throw std::runtime_error("operator file: bad modes");
  expect_token(is, "dims");
  std::vector<int> dims(modes);
  for (int& d : dims) is >> d;
  expect_token(is, "format");
  std::string format;
  is >> format;
  SpaceDescriptor space(dims);
  const int n = space.total_dim();
  if (format == "coo") {
    expect_token(is, "nnz");
    std::int64_t nnz = 0;
    is >> nnz;
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(nnz);
    for (std::int64_t k = 0; k < nnz; ++k) {
      int r, c;
      double re, im;
      is >> r >> c >> re >> im;
      if (!is) throw std::runtime_error("operator file: truncated triplets");
      if (r < 0 || r >= n || c < 0 || c >= n) {
        throw std::runtime_error("operator file: index out of range");
      }
      trips.emplace_back(r, c, cplx(re, im));
    }
    SparseCd m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return Operator(space, std::move(m));
  }
  if (format == "dense") {
    Eigen::MatrixXcd d(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        double re, im;
        is >> re >> im;
        if (!is) throw std::runtime_error("operator file: truncated dense");
        d(r, c) = cplx(re, im);
      }
    }
    return Operator::from_dense(space, d);
  }
  throw std::runtime_error("operator file: unknown format " + format);
}

Operator load_operator(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_operator: cannot open " + path);
  return load_operator(f);
}

}  // namespace kerrsim
