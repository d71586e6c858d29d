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
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rmss/hin.h"
#include "rmss/matrix.h"

namespace rmss {

// Grades in {0,1,2,3} keyed by object id.
using RelevanceJudgment = std::unordered_map<std::string, int>;

enum class GainForm {
  kPrinted,   // 2^(r-1)
  kStandard,  // 2^r - 1
};

/// DCG / iDCG over the given ranking with natural-log discounts log(1 + j).
/// Unjudged ranked objects count as grade 0; iDCG ranks the same grades in
/// descending order. Throws DataError if every grade is zero, a grade is out
/// of range, or a judged object is missing from the ranking.
double ndcg(const std::vector<std::string>& ranking, const RelevanceJudgment& judgments,
            GainForm gain = GainForm::kPrinted);

// Cluster or class label per object, indexed like the objects themselves.
using Partition = std::vector<int>;

// 2 I(Omega, C) / (H(Omega) + H(C)) with natural logs. Defined as 1 when
// both entropies vanish.
double nmi(const Partition& clusters, const Partition& classes);

struct KMeansResult {
  Partition labels;
  std::vector<double> objective;  // within-cluster sum of squares per iteration
  std::size_t iterations = 0;
};

/// Lloyd iterations from k-means++ seeding; stops when assignments repeat or
/// after max_iter rounds. Rows of `features` are the points.
KMeansResult kmeans(const DenseMatrix& features, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter = 300);

Partition kmeans_cluster(const DenseMatrix& features, std::size_t k, std::uint64_t seed);

/// Planted-partition generator configuration. Objects of every type are
/// assigned round-robin to communities. For each schema edge (src, dst),
/// every src object draws `degree` distinct dst neighbors: with probability
/// `noise` uniformly from all dst objects, otherwise uniformly from its own
/// community.
struct SynthConfig {
  std::vector<std::pair<std::string, std::size_t>> sizes;
  // (src, dst, degree) per link type.
  std::vector<std::tuple<std::string, std::string, std::size_t>> links;
  std::size_t communities = 2;
  double noise = 0.1;
  std::uint64_t seed = 0;
};

struct SynthHin {
  TypedGraph graph;
  // Community of every object, keyed by object id.
  std::map<std::string, int> community;
  std::string nodes_tsv;
  std::string edges_tsv;
  std::string schema_tsv;
};

SynthHin synth_hin(const SynthConfig& config);

// Bibliographic (V, P, A, T) and biological (G, T, GO, CC, Si, Sub) presets.
// `scale` multiplies the default sizes.
SynthConfig bibliographic_preset(double scale = 1.0);
SynthConfig biological_preset(double scale = 1.0);

// Labels of the objects of `t` in graph order.
Partition community_labels(const SynthHin& hin, const ObjectType& t);

}  // namespace rmss
