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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rmss/matrix.h"

namespace rmss {

struct ObjectType {
  std::string name;
  std::size_t index = 0;

  friend bool operator==(const ObjectType& a, const ObjectType& b) {
    return a.index == b.index && a.name == b.name;
  }
};

// Undirected link type. Stored with src.index <= dst.index; the reverse
// orientation resolves to the same link type through a transpose.
struct LinkType {
  ObjectType src;
  ObjectType dst;

  friend bool operator==(const LinkType& a, const LinkType& b) {
    return a.src == b.src && a.dst == b.dst;
  }
};

LinkType make_link_type(const ObjectType& a, const ObjectType& b);

/// Meta-level graph over object types. Types keep the index assigned by
/// the graph they describe.
class NetworkSchema {
 public:
  NetworkSchema() = default;
  NetworkSchema(std::vector<ObjectType> types, std::vector<LinkType> edges);

  const std::vector<ObjectType>& types() const { return types_; }
  const std::vector<LinkType>& edges() const { return edges_; }

  std::optional<ObjectType> find(std::string_view name) const;
  ObjectType type(std::string_view name) const;  // throws ConfigError
  bool has_edge(const ObjectType& a, const ObjectType& b) const;
  // Adjacent types in lexicographic name order. A self-loop lists the type
  // itself.
  std::vector<ObjectType> neighbors(const ObjectType& t) const;

  bool is_connected() const;
  // At least two object types or two link types.
  bool is_heterogeneous() const;

  // Stable 64-bit digest of the canonical text form.
  std::uint64_t hash() const;
  std::string to_string() const;

 private:
  std::vector<ObjectType> types_;
  std::vector<LinkType> edges_;
};

/// Heterogeneous information network with undirected typed links.
/// Objects of each type are indexed in first-seen input order; relation
/// matrices use that order for rows and columns.
class TypedGraph {
 public:
  struct ObjectRef {
    std::size_t type = 0;
    std::size_t local = 0;
  };

  const std::vector<ObjectType>& types() const { return types_; }
  std::optional<ObjectType> find_type(std::string_view name) const;
  ObjectType type(std::string_view name) const;  // throws ConfigError

  std::size_t count(const ObjectType& t) const { return objects_[t.index].size(); }
  const std::vector<std::string>& objects(const ObjectType& t) const {
    return objects_[t.index];
  }
  std::optional<ObjectRef> find_object(std::string_view id) const;
  std::size_t object_count() const { return object_index_.size(); }

  // Observed link types in canonical form, ordered by (src.index, dst.index).
  std::vector<LinkType> link_types() const;
  bool has_link_type(const ObjectType& a, const ObjectType& b) const;
  // Number of distinct links of the given type.
  std::size_t link_count(const ObjectType& a, const ObjectType& b) const;

  // Binary |a| x |b| adjacency; throws DataError if the link type is absent.
  SparseMatrix relation(const ObjectType& a, const ObjectType& b) const;
  // Same matrix, or an all-zero one when the pair has no links.
  SparseMatrix relation_or_empty(const ObjectType& a, const ObjectType& b) const;

  // Schema supplied alongside the data, if any.
  const std::optional<NetworkSchema>& declared_schema() const { return declared_; }

  class Builder;

 private:
  std::vector<ObjectType> types_;
  std::unordered_map<std::string, std::size_t> type_index_;
  std::vector<std::vector<std::string>> objects_;
  std::unordered_map<std::string, ObjectRef> object_index_;
  // Keyed by (src.index, dst.index) with src.index <= dst.index.
  std::map<std::pair<std::size_t, std::size_t>, SparseMatrix> links_;
  std::optional<NetworkSchema> declared_;
};

class TypedGraph::Builder {
 public:
  std::size_t add_type(const std::string& name);
  // Throws DataError when the id is already declared with another type.
  void add_object(const std::string& id, const std::string& type_name);
  // Throws DataError for unknown endpoints. Duplicate links collapse.
  void add_link(const std::string& a, const std::string& b);
  // Restricts link types to the declared pairs; throws DataError for links
  // outside them. Must be called before add_link.
  void declare_schema(const std::vector<std::pair<std::string, std::string>>& pairs);

  TypedGraph build() &&;

 private:
  TypedGraph graph_;
  std::map<std::pair<std::size_t, std::size_t>,
           std::vector<Eigen::Triplet<double>>>
      pending_;
  std::vector<std::pair<std::string, std::string>> declared_pairs_;
  bool has_declared_ = false;
};

// Tab-separated readers. Blank lines and lines starting with '#' are skipped.
// nodes: object_id<TAB>type_name; edges: src_id<TAB>dst_id;
// schema: src_type<TAB>dst_type.
TypedGraph load_hin(std::istream& nodes, std::istream& edges,
                    std::istream* schema = nullptr);
TypedGraph load_hin_files(const std::string& nodes_path,
                          const std::string& edges_path,
                          const std::string& schema_path = {});

NetworkSchema extract_schema(const TypedGraph& g);

// Declared schema when present, otherwise the observed one.
NetworkSchema schema_of(const TypedGraph& g);

// Raw binary relation matrix W_{src,dst}.
SparseMatrix relation_matrix(const TypedGraph& g, const ObjectType& src,
                             const ObjectType& dst);

// Splits a tab-separated line into fields (used by the TSV readers).
std::vector<std::string> split_tsv(const std::string& line);

}  // namespace rmss
