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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmss/hin.h"

namespace rmss {

/// Rooted tree over schema object types. Nodes with copy_ordinal > 0 are
/// duplicates of an earlier node of the same type; they share that type's
/// objects and relation matrices.
struct SchemaTree {
  struct Node {
    ObjectType type;
    std::size_t copy_ordinal = 0;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;  // ordered by type name
    std::size_t depth = 0;

    bool is_duplicate() const { return copy_ordinal > 0; }
  };

  std::vector<Node> nodes;  // nodes[0] is the root

  const Node& root() const { return nodes.front(); }
  std::size_t edge_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  std::size_t height() const;
  // Top-to-bottom, left-to-right.
  std::vector<std::size_t> traversal_order() const;
  // Types from the root down to `node`, inclusive.
  std::vector<ObjectType> root_path(std::size_t node) const;
};

SchemaTree bfs_spanning_tree(const NetworkSchema& schema, const ObjectType& source);

// Adds one duplicate child for every schema edge the tree misses, attached
// at the first node in traversal order incident to that edge.
SchemaTree augment_spanning_tree(const NetworkSchema& schema, const SchemaTree& tree);

enum class StructureKind { kMetaPath, kMetaTree };

/// Either a recurrent meta-path (T_s, T_c)^inf (path empty, pivot = T_s) or
/// a recurrent meta-tree whose path runs T_s ... T_p and whose pivot-child
/// edge (T_p, T_c) repeats.
struct RecurrentStructure {
  StructureKind kind = StructureKind::kMetaPath;
  std::vector<ObjectType> path;
  ObjectType pivot;
  ObjectType child;

  ObjectType source() const { return path.empty() ? pivot : path.front(); }

  // `V,P` for meta-paths, `V,P|A` for meta-trees.
  std::string to_string() const;

  friend bool operator==(const RecurrentStructure& a, const RecurrentStructure& b) {
    return a.kind == b.kind && a.path == b.path && a.pivot == b.pivot &&
           a.child == b.child;
  }
};

struct StructureList {
  ObjectType source;
  std::vector<RecurrentStructure> items;
};

StructureList decomp_rms(const NetworkSchema& schema, const ObjectType& source);

// Parses the text grammar and validates adjacency against the schema.
RecurrentStructure parse_structure(std::string_view text, const NetworkSchema& schema);

}  // namespace rmss
