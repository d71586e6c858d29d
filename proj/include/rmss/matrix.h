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

#pragma once

#include <iosfwd>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace rmss {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Divides every row with a positive sum by that sum. All-zero rows stay zero.
SparseMatrix row_normalize(const SparseMatrix& m);
DenseMatrix row_normalize(const DenseMatrix& m);

// Drops explicitly stored entries that are exactly zero.
SparseMatrix prune_exact_zeros(SparseMatrix m);

double entry_sum(const SparseMatrix& m);

// Coordinate text form: a `rows cols nnz` header followed by one
// `row<TAB>col<TAB>value` line per stored entry in row-major order.
// Values are written with enough digits to round-trip exactly.
void write_matrix(std::ostream& out, const SparseMatrix& m);
SparseMatrix read_matrix(std::istream& in);

}  // namespace rmss
