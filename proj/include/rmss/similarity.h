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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rmss/hin.h"
#include "rmss/kernels.h"
#include "rmss/matrix.h"
#include "rmss/schema_decomp.h"

namespace rmss {

enum class WeightKind { kGlobal, kLocalExact, kLocalSampled };

struct WeightStrategy {
  WeightKind kind = WeightKind::kGlobal;
  std::size_t samples = 10000;  // local-sampled only
  std::uint64_t seed = 0;

  std::string to_string() const;
};

// "global", "local-exact" or "local-sampled".
WeightKind parse_weight_kind(std::string_view text);
std::string_view weight_kind_name(WeightKind kind);

struct WeightAssignment {
  WeightStrategy strategy;
  std::vector<double> weights;  // parallel to the structures they weigh; sums to 1
};

// weight_i = entry_sum(M_i) / sum_j entry_sum(M_j). Throws DataError when
// the list is empty or every matrix is zero.
WeightAssignment global_weights(const std::vector<CommutingMatrix>& mats);

/// Frequency with which a neighbor drawn from a pivot-type object falls in
/// each child type, keyed by the child's position among the pivot's children.
/// Exact mode returns the expectation of the sampling procedure: the mean,
/// over pivot objects with at least one child-type neighbor, of the share of
/// that object's child-type neighbors belonging to each child type.
std::vector<double> edge_frequencies(const TypedGraph& g, const ObjectType& pivot,
                                     const std::vector<ObjectType>& children,
                                     const WeightStrategy& strategy,
                                     std::uint64_t stream = 0);

// Product of edge frequencies along each structure's root-to-pivot path
// and its pivot-child edge, normalized to sum 1.
WeightAssignment local_weights(const TypedGraph& g, const StructureList& structures,
                               const WeightStrategy& strategy);

struct IndexedStructure {
  RecurrentStructure structure;
  double weight = 0.0;
  SparseMatrix matrix;  // normalized commuting matrix, |T_s| x |T_s|
};

struct BuildReport {
  std::vector<std::string> pruned;  // structures dropped as diagonal
  double decompose_seconds = 0.0;
  double commuting_seconds = 0.0;
  double weighting_seconds = 0.0;
};

/// Persistable result of the offline phase.
struct OfflineIndex {
  static constexpr int kFormatVersion = 1;

  std::string source_type;
  std::vector<std::string> objects;  // source-type object ids, matrix order
  double lambda = kDefaultLambda;
  WeightStrategy strategy;
  std::uint64_t schema_hash = 0;
  std::vector<std::string> config;  // free-form `key=value` provenance lines
  std::vector<IndexedStructure> structures;
  std::vector<std::string> pruned;
  SparseMatrix aggregate;  // U = sum_i w_i M_i

  std::size_t object_position(std::string_view id) const;  // throws DataError
};

OfflineIndex build_offline_index(const TypedGraph& g, const NetworkSchema& schema,
                                 const ObjectType& source, double lambda,
                                 const WeightStrategy& strategy,
                                 const SolverOptions& solver = {},
                                 BuildReport* report = nullptr);

// Sums w_i M_i in list order.
SparseMatrix aggregate_structures(const std::vector<IndexedStructure>& items,
                                  Eigen::Index n);

void save_index(std::ostream& out, const OfflineIndex& index);
OfflineIndex load_index(std::istream& in);
void save_index_file(const std::string& path, const OfflineIndex& index);
OfflineIndex load_index_file(const std::string& path);

struct SimilarityMatrix {
  SparseMatrix values;
  std::vector<std::size_t> undefined_rows;  // rows with U(o,o) = 0
};

// Row o divided by U(o,o); rows with a zero diagonal are returned all-zero.
SimilarityMatrix rmss_matrix(const OfflineIndex& index);
SimilarityMatrix rmss_from_aggregate(const SparseMatrix& aggregate);

struct QueryResult {
  Vector scores;
  bool undefined = false;  // U(o,o) = 0
};

QueryResult rmss_query(const OfflineIndex& index, std::string_view object_id);

struct RankedItem {
  std::string id;
  double score = 0.0;
};

// Descending by score, ties by ascending id; at most `topk` items
// (0 means all).
std::vector<RankedItem> rank_scores(const std::vector<std::string>& ids,
                                    const Vector& scores, std::size_t topk = 0);

}  // namespace rmss
