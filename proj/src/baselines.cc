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

#include "rmss/baselines.h"

#include <cmath>
#include <string>
#include <vector>

#include "rmss/errors.h"

namespace rmss {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be nonnegative, got " + std::to_string(alpha));
  }
}

// Rows scaled by 1 / (row nonzero count)^alpha; empty rows stay empty.
SparseMatrix degree_scaled(const SparseMatrix& rel, double alpha) {
  SparseMatrix out = rel;
  for (int r = 0; r < out.outerSize(); ++r) {
    double count = 0.0;
    for (SparseMatrix::InnerIterator it(out, r); it; ++it) count += 1.0;
    if (count == 0.0) continue;
    const double scale = 1.0 / std::pow(count, alpha);
    for (SparseMatrix::InnerIterator it(out, r); it; ++it) it.valueRef() = scale;
  }
  return out;
}

// Applies the chain of scaled step matrices right to left.
DenseMatrix backward(const std::vector<SparseMatrix>& steps, DenseMatrix tail) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) tail = (*it) * tail;
  return tail;
}

std::vector<SparseMatrix> path_steps(const TypedGraph& g, const MetaPath& p, double alpha) {
  if (p.types.size() < 2) throw ConfigError("meta-path needs at least two types");
  std::vector<SparseMatrix> steps;
  for (std::size_t i = 0; i + 1 < p.types.size(); ++i) {
    steps.push_back(degree_scaled(g.relation(p.types[i], p.types[i + 1]), alpha));
  }
  return steps;
}

std::vector<SparseMatrix> structure_steps(const TypedGraph& g, const NetworkSchema& schema,
                                          const MetaStructure& s, double alpha,
                                          std::size_t cap) {
  if (s.layers.size() < 2) throw ConfigError("meta-structure needs at least two layers");
  std::vector<SparseMatrix> steps;
  for (std::size_t h = 0; h + 1 < s.layers.size(); ++h) {
    steps.push_back(degree_scaled(layer_relation(g, schema, s.layers[h], s.layers[h + 1], cap),
                                  alpha));
  }
  return steps;
}

DenseMatrix indicator(Eigen::Index n, std::size_t target) {
  if (target >= static_cast<std::size_t>(n)) throw DataError("target index out of range");
  DenseMatrix e = DenseMatrix::Zero(n, 1);
  e(static_cast<Eigen::Index>(target), 0) = 1.0;
  return e;
}

}  // namespace

DenseMatrix pathsim_from_commuting(const SparseMatrix& commuting) {
  if (commuting.rows() != commuting.cols()) throw ConfigError("PathSim needs a square matrix");
  DenseMatrix m(commuting);
  DenseMatrix out = DenseMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index s = 0; s < m.rows(); ++s) {
    for (Eigen::Index t = 0; t < m.cols(); ++t) {
      double denom = m(s, s) + m(t, t);
      if (denom > 0.0) out(s, t) = 2.0 * m(s, t) / denom;
    }
  }
  return out;
}

DenseMatrix pathsim_matrix(const TypedGraph& g, const MetaPath& p) {
  if (!p.is_symmetric()) {
    throw ConfigError("PathSim needs a symmetric meta-path, got " + p.to_string());
  }
  return pathsim_from_commuting(metapath_commuting(g, p));
}

double pathsim(const TypedGraph& g, const MetaPath& p, std::size_t source,
               std::size_t target) {
  if (!p.is_symmetric()) {
    throw ConfigError("PathSim needs a symmetric meta-path, got " + p.to_string());
  }
  auto m = metapath_commuting(g, p);
  auto s = static_cast<Eigen::Index>(source);
  auto t = static_cast<Eigen::Index>(target);
  if (s >= m.rows() || t >= m.cols()) throw DataError("object index out of range");
  double denom = m.coeff(s, s) + m.coeff(t, t);
  return denom > 0.0 ? 2.0 * m.coeff(s, t) / denom : 0.0;
}

Vector bpcrw(const TypedGraph& g, const MetaPath& p, std::size_t target, double alpha) {
  check_alpha(alpha);
  auto steps = path_steps(g, p, alpha);
  return backward(steps, indicator(steps.back().cols(), target)).col(0);
}

DenseMatrix bpcrw_matrix(const TypedGraph& g, const MetaPath& p, double alpha) {
  check_alpha(alpha);
  auto steps = path_steps(g, p, alpha);
  auto n = steps.back().cols();
  return backward(steps, DenseMatrix::Identity(n, n));
}

Vector bscse(const TypedGraph& g, const NetworkSchema& schema, const MetaStructure& s,
             std::size_t target, double alpha, std::size_t cap) {
  check_alpha(alpha);
  auto steps = structure_steps(g, schema, s, alpha, cap);
  return backward(steps, indicator(steps.back().cols(), target)).col(0);
}

DenseMatrix bscse_matrix(const TypedGraph& g, const NetworkSchema& schema,
                         const MetaStructure& s, double alpha, std::size_t cap) {
  check_alpha(alpha);
  auto steps = structure_steps(g, schema, s, alpha, cap);
  auto n = steps.back().cols();
  return backward(steps, DenseMatrix::Identity(n, n));
}

}  // namespace rmss
