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

// Shared helpers for the unit and acceptance suites. The oracle routines
// here work on dense matrices built straight from edge lists and never call
// into the library's kernels.

#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rmss/hin.h"
#include "rmss/matrix.h"

namespace rmss::testing {

using NodeList = std::vector<std::pair<std::string, std::string>>;
using EdgeList = std::vector<std::pair<std::string, std::string>>;

inline TypedGraph make_graph(const NodeList& nodes, const EdgeList& edges,
                             const EdgeList* schema = nullptr) {
  TypedGraph::Builder b;
  for (const auto& [id, type] : nodes) b.add_object(id, type);
  if (schema) b.declare_schema(*schema);
  for (const auto& [u, v] : edges) b.add_link(u, v);
  return std::move(b).build();
}

inline std::string fixture(const std::string& rel) {
  return std::string(RMSS_FIXTURE_DIR) + "/" + rel;
}

inline DenseMatrix dense(const SparseMatrix& m) { return DenseMatrix(m); }

/// Random HIN over a fixed schema, with its adjacency also kept as dense
/// 0/1 matrices keyed by ordered type-name pair.
struct RandomHin {
  NodeList nodes;
  EdgeList edges;
  std::map<std::string, std::vector<std::string>> objects;
  std::map<std::pair<std::string, std::string>, DenseMatrix> adjacency;
  TypedGraph graph;

  const DenseMatrix& adj(const std::string& a, const std::string& b) const {
    return adjacency.at({a, b});
  }
};

inline RandomHin random_hin(std::mt19937_64& rng,
                            const std::vector<std::string>& types,
                            const EdgeList& schema, std::size_t max_per_type,
                            double density) {
  RandomHin h;
  std::uniform_int_distribution<std::size_t> size(2, max_per_type);
  for (const auto& t : types) {
    auto n = size(rng);
    for (std::size_t i = 0; i < n; ++i) {
      auto id = t + std::to_string(i);
      h.nodes.emplace_back(id, t);
      h.objects[t].push_back(id);
    }
  }
  std::bernoulli_distribution coin(density);
  for (const auto& [a, b] : schema) {
    DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(h.objects[a].size()),
                                      static_cast<Eigen::Index>(h.objects[b].size()));
    for (std::size_t i = 0; i < h.objects[a].size(); ++i) {
      for (std::size_t j = 0; j < h.objects[b].size(); ++j) {
        if (coin(rng)) {
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
          h.edges.emplace_back(h.objects[a][i], h.objects[b][j]);
        }
      }
    }
    h.adjacency[{a, b}] = m;
    h.adjacency[{b, a}] = m.transpose();
  }
  h.graph = make_graph(h.nodes, h.edges, &schema);
  return h;
}

inline DenseMatrix oracle_normalize(const DenseMatrix& m) {
  DenseMatrix out = m;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) s += m(r, c);
    if (s > 0.0) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c) / s;
    }
  }
  return out;
}

/// Explicit sum over recurrence counts t = 0..terms of
/// left * (lambda * kernel)^t * right.
inline DenseMatrix series_oracle(const DenseMatrix& left, const DenseMatrix& kernel,
                                 const DenseMatrix& right, double lambda,
                                 int terms = 50) {
  DenseMatrix power = DenseMatrix::Identity(kernel.rows(), kernel.cols());
  DenseMatrix sum = left * right;
  for (int t = 1; t <= terms; ++t) {
    power = lambda * (power * kernel);
    sum += left * power * right;
  }
  return sum;
}

/// Normalized recurrent meta-tree oracle along a type path, built from the
/// dense adjacency of a RandomHin.
inline DenseMatrix meta_tree_oracle(const RandomHin& h, const std::vector<std::string>& path,
                                    const std::string& child, double lambda) {
  DenseMatrix left = oracle_normalize(h.adj(path[0], path[1]));
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    left = left * oracle_normalize(h.adj(path[i], path[i + 1]));
  }
  DenseMatrix right = oracle_normalize(h.adj(path[path.size() - 1], path[path.size() - 2]));
  for (std::size_t i = path.size() - 2; i > 0; --i) {
    right = right * oracle_normalize(h.adj(path[i], path[i - 1]));
  }
  const DenseMatrix& w = h.adj(path.back(), child);
  DenseMatrix kernel = oracle_normalize(w * w.transpose());
  return series_oracle(left, kernel, right, lambda);
}

inline DenseMatrix meta_path_oracle(const RandomHin& h, const std::string& source,
                                    const std::string& child, double lambda) {
  const DenseMatrix& w = h.adj(source, child);
  DenseMatrix kernel = oracle_normalize(w.transpose() * w);
  return series_oracle(oracle_normalize(w), kernel, oracle_normalize(w.transpose()), lambda);
}

}  // namespace rmss::testing
