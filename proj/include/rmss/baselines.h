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

#include <cstddef>

#include "rmss/hin.h"
#include "rmss/kernels.h"
#include "rmss/matrix.h"

namespace rmss {

// 2 M(s,t) / (M(s,s) + M(t,t)) over the commuting matrix of a symmetric
// meta-path. Zero when both self-counts are zero.
double pathsim(const TypedGraph& g, const MetaPath& p, std::size_t source,
               std::size_t target);

// All-pairs form; throws ConfigError for an asymmetric meta-path.
DenseMatrix pathsim_matrix(const TypedGraph& g, const MetaPath& p);
DenseMatrix pathsim_from_commuting(const SparseMatrix& commuting);

// Backward recursion along the meta-path: the score at the last position is
// the indicator of `target`; each earlier object sums its neighbors' scores
// and divides by (neighbor count)^alpha. Objects without neighbors score 0.
// Returns one score per object of the first type.
Vector bpcrw(const TypedGraph& g, const MetaPath& p, std::size_t target, double alpha);

// Scores for every (source, target) pair; column t equals bpcrw(..., t, ...).
DenseMatrix bpcrw_matrix(const TypedGraph& g, const MetaPath& p, double alpha);

// Same recursion over layer instances of a meta-structure.
Vector bscse(const TypedGraph& g, const NetworkSchema& schema, const MetaStructure& s,
             std::size_t target, double alpha, std::size_t cap = kDefaultCartesianCap);

DenseMatrix bscse_matrix(const TypedGraph& g, const NetworkSchema& schema,
                         const MetaStructure& s, double alpha,
                         std::size_t cap = kDefaultCartesianCap);

}  // namespace rmss
