// Copyright 2026-present the rmss authors
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

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rmss/errors.h"
#include "rmss/matrix.h"

namespace rmss {

SparseMatrix row_normalize(const SparseMatrix& m) {
  SparseMatrix out = m;
  for (int r = 0; r < out.outerSize(); ++r) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(out, r); it; ++it) sum += it.value();
    if (sum <= 0.0) continue;
    for (SparseMatrix::InnerIterator it(out, r); it; ++it) it.valueRef() /= sum;
  }
  return out;
}

DenseMatrix row_normalize(const DenseMatrix& m) {
  DenseMatrix out = m;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    double sum = out.row(r).sum();
    if (sum > 0.0) out.row(r) /= sum;
  }
  return out;
}

SparseMatrix prune_exact_zeros(SparseMatrix m) {
  m.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  m.makeCompressed();
  return m;
}

double entry_sum(const SparseMatrix& m) {
  double s = 0.0;
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) s += it.value();
  }
  return s;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
  return std::string(buf, res.ptr);
}

}  // namespace

void write_matrix(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      out << it.row() << '\t' << it.col() << '\t' << format_double(it.value()) << '\n';
    }
  }
}

SparseMatrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("matrix: missing header");
  std::istringstream header(line);
  long long rows = -1, cols = -1, nnz = -1;
  if (!(header >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
    throw DataError("matrix: malformed header '" + line + "'");
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(nnz));
  for (long long i = 0; i < nnz; ++i) {
    if (!std::getline(in, line)) throw DataError("matrix: truncated entry list");
    const char* p = line.data();
    const char* end = p + line.size();
    long long r = 0, c = 0;
    double v = 0.0;
    auto a = std::from_chars(p, end, r);
    if (a.ec != std::errc() || a.ptr == end || *a.ptr != '\t') {
      throw DataError("matrix: malformed entry '" + line + "'");
    }
    auto b = std::from_chars(a.ptr + 1, end, c);
    if (b.ec != std::errc() || b.ptr == end || *b.ptr != '\t') {
      throw DataError("matrix: malformed entry '" + line + "'");
    }
    auto d = std::from_chars(b.ptr + 1, end, v);
    if (d.ec != std::errc() || r < 0 || r >= rows || c < 0 || c >= cols) {
      throw DataError("matrix: malformed entry '" + line + "'");
    }
    trips.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
  }
  SparseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

}  // namespace rmss
