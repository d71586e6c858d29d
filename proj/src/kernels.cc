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

#include "rmss/kernels.h"

#include <algorithm>
#include <cmath>

#include "rmss/errors.h"

namespace rmss {

namespace {

SparseMatrix dense_to_sparse(const DenseMatrix& d) {
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      if (d(r, c) != 0.0) trips.emplace_back(static_cast<int>(r), static_cast<int>(c), d(r, c));
    }
  }
  SparseMatrix m(d.rows(), d.cols());
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

void check_kernel(const SparseMatrix& k) {
  if (k.rows() != k.cols()) throw DataError("Neumann kernel must be square");
  for (int r = 0; r < k.outerSize(); ++r) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(k, r); it; ++it) {
      if (it.value() < 0.0) throw DataError("Neumann kernel has a negative entry");
      sum += it.value();
    }
    if (sum > 1.0 + 1e-9) {
      throw DataError("Neumann kernel row " + std::to_string(r) + " sums to " +
                      std::to_string(sum) + " > 1");
    }
  }
}

SparseMatrix normalized_relation(const TypedGraph& g, const ObjectType& a,
                                 const ObjectType& b) {
  return row_normalize(g.relation(a, b));
}

/// row_normalize(W W^T) kept as the factor pair (D^-1 W, W^T). Products with
/// a dense block go through the factors when they hold fewer entries than
/// the explicit kernel.
class GramKernel {
 public:
  explicit GramKernel(const SparseMatrix& w) : right_(w.transpose()) {
    Vector degree = w * (right_ * Vector::Ones(w.rows()));
    Vector inv = Vector::Zero(degree.size());
    for (Eigen::Index i = 0; i < degree.size(); ++i) {
      if (degree[i] > 0.0) inv[i] = 1.0 / degree[i];
    }
    left_ = inv.asDiagonal() * w;
    left_.makeCompressed();
    explicit_ = row_normalize(SparseMatrix(w * right_));
    factored_ = left_.nonZeros() + right_.nonZeros() < explicit_.nonZeros();
  }

  const SparseMatrix& matrix() const { return explicit_; }

  DenseMatrix apply(const DenseMatrix& x) const {
    if (factored_) return left_ * DenseMatrix(right_ * x);
    return explicit_ * x;
  }

 private:
  SparseMatrix left_;
  SparseMatrix right_;
  SparseMatrix explicit_;
  bool factored_ = false;
};

template <typename Apply>
DenseMatrix solve_series(const SparseMatrix& kernel, const Apply& apply, double lambda,
                         const DenseMatrix& rhs, const SolverOptions& opts) {
  if (rhs.rows() != kernel.rows()) throw DataError("Neumann right-hand side has wrong shape");
  const auto n = static_cast<std::size_t>(kernel.rows());
  auto mode = opts.mode;
  if (mode == SolverMode::kAuto) {
    mode = n <= opts.closed_form_limit ? SolverMode::kClosedForm : SolverMode::kTruncated;
  }
  if (n == 0) return rhs;

  if (mode == SolverMode::kClosedForm) {
    DenseMatrix system = -lambda * DenseMatrix(kernel);
    system.diagonal().array() += 1.0;
    return system.partialPivLu().solve(rhs);
  }

  DenseMatrix sum = rhs;
  DenseMatrix term = rhs;
  for (std::size_t i = 0; i < opts.max_terms; ++i) {
    term = lambda * apply(term);
    sum += term;
    if (term.size() == 0 || term.cwiseAbs().maxCoeff() < opts.tol) return sum;
  }
  throw DataError("Neumann series did not reach tolerance within max_terms");
}

DenseMatrix gram_solve(const GramKernel& kernel, double lambda, const DenseMatrix& rhs,
                       const SolverOptions& opts) {
  return solve_series(
      kernel.matrix(), [&](const DenseMatrix& x) { return kernel.apply(x); }, lambda, rhs, opts);
}

}  // namespace

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ConfigError("lambda must lie in (0, 1), got " + std::to_string(lambda));
  }
}

DenseMatrix neumann_solve(const SparseMatrix& kernel, double lambda,
                          const DenseMatrix& rhs, const SolverOptions& opts) {
  check_lambda(lambda);
  check_kernel(kernel);
  return solve_series(
      kernel, [&](const DenseMatrix& x) { return DenseMatrix(kernel * x); }, lambda, rhs, opts);
}

DenseMatrix neumann_inverse(const SparseMatrix& kernel, double lambda,
                            const SolverOptions& opts) {
  return neumann_solve(kernel, lambda, DenseMatrix::Identity(kernel.rows(), kernel.cols()),
                       opts);
}

CommutingMatrix rmp_commuting(const TypedGraph& g, const RecurrentStructure& s,
                              double lambda, const SolverOptions& opts) {
  if (s.kind != StructureKind::kMetaPath) throw ConfigError("expected a recurrent meta-path");
  check_lambda(lambda);
  const SparseMatrix w = g.relation(s.pivot, s.child);
  const SparseMatrix wt = w.transpose();
  const DenseMatrix back = DenseMatrix(row_normalize(wt));
  DenseMatrix x = gram_solve(GramKernel(wt), lambda, back, opts);
  DenseMatrix m = row_normalize(w) * x;
  return CommutingMatrix{s.to_string(), dense_to_sparse(m), lambda};
}

CommutingMatrix rmt_commuting(const TypedGraph& g, const RecurrentStructure& s,
                              double lambda, const SolverOptions& opts) {
  if (s.kind != StructureKind::kMetaTree || s.path.size() < 2) {
    throw ConfigError("expected a recurrent meta-tree with a nonempty path");
  }
  check_lambda(lambda);
  const auto& path = s.path;
  SparseMatrix left = normalized_relation(g, path[0], path[1]);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    left = SparseMatrix(left * normalized_relation(g, path[i], path[i + 1]));
  }
  SparseMatrix right = normalized_relation(g, path[path.size() - 1], path[path.size() - 2]);
  for (std::size_t i = path.size() - 2; i > 0; --i) {
    right = SparseMatrix(right * normalized_relation(g, path[i], path[i - 1]));
  }
  const SparseMatrix w = g.relation(s.pivot, s.child);
  DenseMatrix x = gram_solve(GramKernel(w), lambda, DenseMatrix(right), opts);
  DenseMatrix m = left * x;
  return CommutingMatrix{s.to_string(), dense_to_sparse(m), lambda};
}

CommutingMatrix structure_commuting(const TypedGraph& g, const RecurrentStructure& s,
                                    double lambda, const SolverOptions& opts) {
  return s.kind == StructureKind::kMetaPath ? rmp_commuting(g, s, lambda, opts)
                                            : rmt_commuting(g, s, lambda, opts);
}

bool is_effectively_diagonal(const SparseMatrix& m) {
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.row() != it.col() && it.value() != 0.0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Meta-paths

MetaPath MetaPath::reversed() const {
  MetaPath out{types};
  std::reverse(out.types.begin(), out.types.end());
  return out;
}

bool MetaPath::is_symmetric() const {
  return std::equal(types.begin(), types.end(), types.rbegin());
}

std::string MetaPath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) out += ",";
    out += types[i].name;
  }
  return out;
}

MetaPath parse_metapath(std::string_view text, const NetworkSchema& schema) {
  MetaPath p;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(',', start);
    auto tok = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
    p.types.push_back(schema.type(tok));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (p.types.size() < 2) {
    throw ConfigError("meta-path '" + std::string(text) + "' needs at least two types");
  }
  for (std::size_t i = 0; i + 1 < p.types.size(); ++i) {
    if (!schema.has_edge(p.types[i], p.types[i + 1])) {
      throw ConfigError("'" + p.types[i].name + "' and '" + p.types[i + 1].name +
                        "' are not adjacent in the schema");
    }
  }
  return p;
}

SparseMatrix metapath_commuting(const TypedGraph& g, const MetaPath& p) {
  if (p.types.size() < 2) throw ConfigError("meta-path needs at least two types");
  SparseMatrix m = g.relation(p.types[0], p.types[1]);
  for (std::size_t i = 1; i + 1 < p.types.size(); ++i) {
    m = SparseMatrix(m * g.relation(p.types[i], p.types[i + 1]));
  }
  return prune_exact_zeros(std::move(m));
}

}  // namespace rmss
