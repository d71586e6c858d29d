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

#include "rmss/hin.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <queue>
#include <sstream>

#include "rmss/errors.h"

namespace rmss {

namespace {

std::pair<std::size_t, std::size_t> key_of(std::size_t a, std::size_t b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

bool skip_line(const std::string& line) {
  return line.empty() || line[0] == '#' ||
         line.find_first_not_of(" \t\r") == std::string::npos;
}

template <typename Fn>
void for_each_record(std::istream& in, std::size_t fields, const char* what,
                     Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto parts = split_tsv(line);
    if (parts.size() < fields) {
      throw DataError(std::string(what) + " line " + std::to_string(line_no) +
                      ": expected " + std::to_string(fields) +
                      " tab-separated fields");
    }
    fn(parts);
  }
}

}  // namespace

std::vector<std::string> split_tsv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::string_view view(line);
  if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
  while (true) {
    auto pos = view.find('\t', start);
    out.emplace_back(view.substr(start, pos == std::string_view::npos
                                            ? std::string_view::npos
                                            : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

LinkType make_link_type(const ObjectType& a, const ObjectType& b) {
  return a.index <= b.index ? LinkType{a, b} : LinkType{b, a};
}

// ---------------------------------------------------------------------------
// NetworkSchema

NetworkSchema::NetworkSchema(std::vector<ObjectType> types,
                             std::vector<LinkType> edges)
    : types_(std::move(types)) {
  for (const auto& e : edges) {
    auto canon = make_link_type(e.src, e.dst);
    if (std::find(edges_.begin(), edges_.end(), canon) == edges_.end()) {
      edges_.push_back(canon);
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const LinkType& a, const LinkType& b) {
    return std::make_pair(a.src.index, a.dst.index) <
           std::make_pair(b.src.index, b.dst.index);
  });
}

std::optional<ObjectType> NetworkSchema::find(std::string_view name) const {
  for (const auto& t : types_) {
    if (t.name == name) return t;
  }
  return std::nullopt;
}

ObjectType NetworkSchema::type(std::string_view name) const {
  auto t = find(name);
  if (!t) throw ConfigError("object type '" + std::string(name) + "' not in schema");
  return *t;
}

bool NetworkSchema::has_edge(const ObjectType& a, const ObjectType& b) const {
  auto canon = make_link_type(a, b);
  return std::find(edges_.begin(), edges_.end(), canon) != edges_.end();
}

std::vector<ObjectType> NetworkSchema::neighbors(const ObjectType& t) const {
  std::vector<ObjectType> out;
  for (const auto& e : edges_) {
    if (e.src.index == t.index) {
      out.push_back(e.dst);
    } else if (e.dst.index == t.index) {
      out.push_back(e.src);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ObjectType& a, const ObjectType& b) { return a.name < b.name; });
  return out;
}

bool NetworkSchema::is_connected() const {
  if (types_.empty()) return false;
  std::vector<bool> seen(types_.size(), false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    for (const auto& n : neighbors(types_[u])) {
      auto pos = static_cast<std::size_t>(
          std::find(types_.begin(), types_.end(), n) - types_.begin());
      if (pos < types_.size() && !seen[pos]) {
        seen[pos] = true;
        ++reached;
        q.push(pos);
      }
    }
  }
  return reached == types_.size();
}

bool NetworkSchema::is_heterogeneous() const {
  return types_.size() > 1 || edges_.size() > 1;
}

std::string NetworkSchema::to_string() const {
  std::vector<std::string> names;
  for (const auto& t : types_) names.push_back(t.name);
  std::sort(names.begin(), names.end());
  std::vector<std::string> links;
  for (const auto& e : edges_) {
    auto a = e.src.name, b = e.dst.name;
    if (b < a) std::swap(a, b);
    links.push_back(a + "-" + b);
  }
  std::sort(links.begin(), links.end());
  std::string out = "types:";
  for (const auto& n : names) out += " " + n;
  out += "; links:";
  for (const auto& l : links) out += " " + l;
  return out;
}

std::uint64_t NetworkSchema::hash() const {
  // FNV-1a
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : to_string()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// TypedGraph

std::optional<ObjectType> TypedGraph::find_type(std::string_view name) const {
  auto it = type_index_.find(std::string(name));
  if (it == type_index_.end()) return std::nullopt;
  return types_[it->second];
}

ObjectType TypedGraph::type(std::string_view name) const {
  auto t = find_type(name);
  if (!t) throw ConfigError("unknown object type '" + std::string(name) + "'");
  return *t;
}

std::optional<TypedGraph::ObjectRef> TypedGraph::find_object(std::string_view id) const {
  auto it = object_index_.find(std::string(id));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<LinkType> TypedGraph::link_types() const {
  std::vector<LinkType> out;
  for (const auto& [key, m] : links_) {
    if (m.nonZeros() > 0) out.push_back(LinkType{types_[key.first], types_[key.second]});
  }
  return out;
}

bool TypedGraph::has_link_type(const ObjectType& a, const ObjectType& b) const {
  return links_.count(key_of(a.index, b.index)) > 0;
}

std::size_t TypedGraph::link_count(const ObjectType& a, const ObjectType& b) const {
  auto it = links_.find(key_of(a.index, b.index));
  if (it == links_.end()) return 0;
  if (a.index == b.index) {
    // Self relations store both orientations of every off-diagonal link.
    const auto& m = it->second;
    std::size_t diag = 0;
    for (int r = 0; r < m.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator e(m, r); e; ++e) {
        if (e.col() == r) ++diag;
      }
    }
    return (static_cast<std::size_t>(m.nonZeros()) - diag) / 2 + diag;
  }
  return static_cast<std::size_t>(it->second.nonZeros());
}

SparseMatrix TypedGraph::relation(const ObjectType& a, const ObjectType& b) const {
  auto it = links_.find(key_of(a.index, b.index));
  if (it == links_.end()) {
    throw DataError("no link type between '" + a.name + "' and '" + b.name + "'");
  }
  if (a.index <= b.index) return it->second;
  return SparseMatrix(it->second.transpose());
}

SparseMatrix TypedGraph::relation_or_empty(const ObjectType& a,
                                           const ObjectType& b) const {
  if (!has_link_type(a, b)) {
    return SparseMatrix(static_cast<Eigen::Index>(count(a)),
                        static_cast<Eigen::Index>(count(b)));
  }
  return relation(a, b);
}

// ---------------------------------------------------------------------------
// Builder

std::size_t TypedGraph::Builder::add_type(const std::string& name) {
  auto& g = graph_;
  auto it = g.type_index_.find(name);
  if (it != g.type_index_.end()) return it->second;
  auto idx = g.types_.size();
  g.types_.push_back(ObjectType{name, idx});
  g.type_index_.emplace(name, idx);
  g.objects_.emplace_back();
  return idx;
}

void TypedGraph::Builder::add_object(const std::string& id, const std::string& type_name) {
  auto t = add_type(type_name);
  auto& g = graph_;
  auto it = g.object_index_.find(id);
  if (it != g.object_index_.end()) {
    if (it->second.type != t) {
      throw DataError("object '" + id + "' declared with types '" +
                      g.types_[it->second.type].name + "' and '" + type_name + "'");
    }
    return;
  }
  g.object_index_.emplace(id, ObjectRef{t, g.objects_[t].size()});
  g.objects_[t].push_back(id);
}

void TypedGraph::Builder::declare_schema(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  declared_pairs_ = pairs;
  has_declared_ = true;
  for (const auto& [a, b] : pairs) {
    auto ia = add_type(a);
    auto ib = add_type(b);
    pending_[key_of(ia, ib)];
  }
}

void TypedGraph::Builder::add_link(const std::string& a, const std::string& b) {
  auto& g = graph_;
  auto ra = g.object_index_.find(a);
  if (ra == g.object_index_.end()) throw DataError("unknown object '" + a + "' in edge");
  auto rb = g.object_index_.find(b);
  if (rb == g.object_index_.end()) throw DataError("unknown object '" + b + "' in edge");
  auto u = ra->second;
  auto v = rb->second;
  if (u.type > v.type) std::swap(u, v);
  auto key = key_of(u.type, v.type);
  if (has_declared_ && pending_.find(key) == pending_.end()) {
    throw DataError("edge " + a + " - " + b + " has type pair (" +
                    g.types_[u.type].name + ", " + g.types_[v.type].name +
                    ") absent from the schema");
  }
  auto& trips = pending_[key];
  auto r = static_cast<int>(u.local);
  auto c = static_cast<int>(v.local);
  trips.emplace_back(r, c, 1.0);
  if (u.type == v.type && r != c) trips.emplace_back(c, r, 1.0);
}

TypedGraph TypedGraph::Builder::build() && {
  auto& g = graph_;
  for (auto& [key, trips] : pending_) {
    SparseMatrix m(static_cast<Eigen::Index>(g.objects_[key.first].size()),
                   static_cast<Eigen::Index>(g.objects_[key.second].size()));
    // Duplicate links collapse to a single 1.
    m.setFromTriplets(trips.begin(), trips.end(), [](double, double) { return 1.0; });
    m.makeCompressed();
    g.links_.emplace(key, std::move(m));
  }
  if (has_declared_) {
    std::vector<LinkType> edges;
    for (const auto& [a, b] : declared_pairs_) {
      edges.push_back(make_link_type(g.types_[g.type_index_.at(a)],
                                     g.types_[g.type_index_.at(b)]));
    }
    g.declared_ = NetworkSchema(g.types_, std::move(edges));
  }
  return std::move(g);
}

// ---------------------------------------------------------------------------
// Loading

TypedGraph load_hin(std::istream& nodes, std::istream& edges, std::istream* schema) {
  TypedGraph::Builder b;
  for_each_record(nodes, 2, "nodes",
                  [&](const std::vector<std::string>& f) { b.add_object(f[0], f[1]); });
  if (schema != nullptr) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for_each_record(*schema, 2, "schema", [&](const std::vector<std::string>& f) {
      pairs.emplace_back(f[0], f[1]);
    });
    b.declare_schema(pairs);
  }
  for_each_record(edges, 2, "edges",
                  [&](const std::vector<std::string>& f) { b.add_link(f[0], f[1]); });
  return std::move(b).build();
}

TypedGraph load_hin_files(const std::string& nodes_path, const std::string& edges_path,
                          const std::string& schema_path) {
  auto open = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    return in;
  };
  auto nodes = open(nodes_path);
  auto edges = open(edges_path);
  if (schema_path.empty()) return load_hin(nodes, edges);
  auto schema = open(schema_path);
  return load_hin(nodes, edges, &schema);
}

NetworkSchema extract_schema(const TypedGraph& g) {
  if (g.object_count() == 0) throw DataError("cannot extract a schema from an empty graph");
  NetworkSchema schema(g.types(), g.link_types());
  if (!schema.is_connected()) throw DataError("network schema is disconnected");
  return schema;
}

NetworkSchema schema_of(const TypedGraph& g) {
  if (g.declared_schema()) return *g.declared_schema();
  return extract_schema(g);
}

SparseMatrix relation_matrix(const TypedGraph& g, const ObjectType& src,
                             const ObjectType& dst) {
  return g.relation(src, dst);
}

}  // namespace rmss
