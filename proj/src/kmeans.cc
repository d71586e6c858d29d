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

#include <limits>
#include <random>

#include "rmss/errors.h"
#include "rmss/eval.h"

namespace rmss {

namespace {

std::vector<std::size_t> plus_plus_seeds(const DenseMatrix& x, std::size_t k,
                                         std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<std::size_t> seeds;
  std::vector<bool> chosen(n, false);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  seeds.push_back(first(rng));
  chosen[seeds.back()] = true;
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  while (seeds.size() < k) {
    const auto last = static_cast<Eigen::Index>(seeds.back());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = (x.row(static_cast<Eigen::Index>(i)) - x.row(last)).squaredNorm();
      d2[i] = std::min(d2[i], d);
      if (!chosen[i]) total += d2[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double r = u(rng);
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        pick = i;
        if (r < d2[i]) break;
        r -= d2[i];
      }
    } else {
      // All remaining points coincide with a seed; take the first unused one.
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    seeds.push_back(pick);
    chosen[pick] = true;
  }
  return seeds;
}

}  // namespace

KMeansResult kmeans(const DenseMatrix& x, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (n == 0 || x.cols() == 0) throw ConfigError("k-means needs a nonempty feature matrix");
  if (k == 0 || k > n) {
    throw ConfigError("k-means needs 1 <= k <= " + std::to_string(n) + ", got " +
                      std::to_string(k));
  }
  std::mt19937_64 rng(seed);
  auto seeds = plus_plus_seeds(x, k, rng);
  DenseMatrix centroids(static_cast<Eigen::Index>(k), x.cols());
  for (std::size_t c = 0; c < k; ++c) {
    centroids.row(static_cast<Eigen::Index>(c)) = x.row(static_cast<Eigen::Index>(seeds[c]));
  }

  KMeansResult result;
  result.labels.assign(n, -1);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        double d = (x.row(static_cast<Eigen::Index>(i)) -
                    centroids.row(static_cast<Eigen::Index>(c)))
                       .squaredNorm();
        if (d < best) {
          best = d;
          best_c = static_cast<int>(c);
        }
      }
      objective += best;
      if (result.labels[i] != best_c) {
        result.labels[i] = best_c;
        changed = true;
      }
    }
    result.objective.push_back(objective);
    result.iterations = iter + 1;
    if (!changed) break;

    DenseMatrix sums = DenseMatrix::Zero(static_cast<Eigen::Index>(k), x.cols());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums.row(result.labels[i]) += x.row(static_cast<Eigen::Index>(i));
      ++counts[static_cast<std::size_t>(result.labels[i])];
    }
    for (std::size_t c = 0; c < k; ++c) {
      // An emptied cluster keeps its previous centroid.
      if (counts[c] > 0) {
        centroids.row(static_cast<Eigen::Index>(c)) =
            sums.row(static_cast<Eigen::Index>(c)) / static_cast<double>(counts[c]);
      }
    }
  }
  return result;
}

Partition kmeans_cluster(const DenseMatrix& features, std::size_t k, std::uint64_t seed) {
  return kmeans(features, k, seed).labels;
}

}  // namespace rmss
