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
#include <string>
#include <string_view>
#include <vector>

#include "rmss/hin.h"
#include "rmss/matrix.h"
#include "rmss/schema_decomp.h"

namespace rmss {

enum class SolverMode {
  kAuto,        // closed form up to closed_form_limit rows, truncated beyond
  kClosedForm,  // dense LU solve of (I - lambda K) X = B
  kTruncated,   // sum of (lambda K)^i B until the increment is below tol
};

struct SolverOptions {
  SolverMode mode = SolverMode::kAuto;
  double tol = 1e-12;
  std::size_t closed_form_limit = 2048;
  std::size_t max_terms = 100000;
};

inline constexpr double kDefaultLambda = 0.5;

// Validates lambda in (0, 1); throws ConfigError otherwise.
void check_lambda(double lambda);

/// Returns sum_{i>=0} (lambda K)^i B, i.e. (I - lambda K)^{-1} B, for a
/// nonnegative square kernel whose rows sum to at most 1.
DenseMatrix neumann_solve(const SparseMatrix& kernel, double lambda,
                          const DenseMatrix& rhs, const SolverOptions& opts = {});

DenseMatrix neumann_inverse(const SparseMatrix& kernel, double lambda,
                            const SolverOptions& opts = {});

struct CommutingMatrix {
  std::string label;
  SparseMatrix data;
  double lambda = 0.0;
};

// Normalized commuting matrix of a recurrent meta-path (T_s, T_c)^inf:
// norm(W) (I - lambda norm(W^T W))^{-1} norm(W^T).
CommutingMatrix rmp_commuting(const TypedGraph& g, const RecurrentStructure& s,
                              double lambda, const SolverOptions& opts = {});

// Normalized commuting matrix of a recurrent meta-tree:
// F_l (I - lambda norm(W_pc W_pc^T))^{-1} F_r, where F_l is the product of
// normalized relation matrices along T_s..T_p and F_r the product of the
// normalized reverse relations back to T_s.
CommutingMatrix rmt_commuting(const TypedGraph& g, const RecurrentStructure& s,
                              double lambda, const SolverOptions& opts = {});

// Dispatches on s.kind.
CommutingMatrix structure_commuting(const TypedGraph& g, const RecurrentStructure& s,
                                    double lambda, const SolverOptions& opts = {});

// True iff every stored off-diagonal entry is exactly zero.
bool is_effectively_diagonal(const SparseMatrix& m);

struct MetaPath {
  std::vector<ObjectType> types;  // at least two

  MetaPath reversed() const;
  bool is_symmetric() const;
  std::string to_string() const;
};

// `V,P,A,P,V`; consecutive types must be adjacent in the schema.
MetaPath parse_metapath(std::string_view text, const NetworkSchema& schema);

// Raw count commuting matrix W_{T1T2} W_{T2T3} ... .
SparseMatrix metapath_commuting(const TypedGraph& g, const MetaPath& p);

/// Layered DAG of object types with singleton first and last layers.
struct MetaStructure {
  std::vector<std::vector<ObjectType>> layers;

  bool is_path() const;
  MetaPath as_path() const;  // requires is_path()
  std::string to_string() const;
};

// `A,P,(V|T),P,A`: comma-separated layers, a parenthesised `|` list for a
// layer with several types.
MetaStructure parse_metastructure(std::string_view text, const NetworkSchema& schema);

inline constexpr std::size_t kDefaultCartesianCap = 1000000;

/// Tuples of the Cartesian product of a layer's object sets, in row-major
/// order over the layer's types.
struct LayerTuples {
  std::vector<ObjectType> types;
  std::size_t size = 0;
  // Decomposes a tuple index into per-type local object indices.
  std::vector<std::size_t> decode(std::size_t tuple) const;
  std::vector<std::size_t> radices;
};

LayerTuples layer_tuples(const TypedGraph& g, const std::vector<ObjectType>& layer);

// Binary relation between consecutive layer tuples: tuple s is adjacent to
// tuple t when every object pair whose types are schema-adjacent is linked
// in g. Throws DataError when |CP_h| * |CP_{h+1}| exceeds `cap`.
SparseMatrix layer_relation(const TypedGraph& g, const NetworkSchema& schema,
                            const std::vector<ObjectType>& from,
                            const std::vector<ObjectType>& to,
                            std::size_t cap = kDefaultCartesianCap);

// Product of layer relation matrices; entries count structure instances.
SparseMatrix metastructure_commuting(const TypedGraph& g, const NetworkSchema& schema,
                                     const MetaStructure& s,
                                     std::size_t cap = kDefaultCartesianCap);

}  // namespace rmss
