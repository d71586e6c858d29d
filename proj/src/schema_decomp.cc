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

#include "rmss/schema_decomp.h"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include "rmss/errors.h"

namespace rmss {

namespace {

void check_source(const NetworkSchema& schema, const ObjectType& source) {
  auto t = schema.find(source.name);
  if (!t || t->index != source.index) {
    throw ConfigError("source type '" + source.name + "' not in schema");
  }
  if (!schema.is_connected()) throw DataError("network schema is disconnected");
}

void sort_children(SchemaTree& tree, std::size_t node) {
  auto& kids = tree.nodes[node].children;
  std::sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
    const auto& na = tree.nodes[a];
    const auto& nb = tree.nodes[b];
    if (na.type.name != nb.type.name) return na.type.name < nb.type.name;
    return na.copy_ordinal < nb.copy_ordinal;
  });
}

std::pair<std::size_t, std::size_t> undirected(std::size_t a, std::size_t b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

std::size_t SchemaTree::height() const {
  std::size_t h = 0;
  for (const auto& n : nodes) h = std::max(h, n.depth);
  return h;
}

std::vector<std::size_t> SchemaTree::traversal_order() const {
  std::vector<std::size_t> order;
  if (nodes.empty()) return order;
  std::deque<std::size_t> q{0};
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    order.push_back(u);
    for (auto c : nodes[u].children) q.push_back(c);
  }
  return order;
}

std::vector<ObjectType> SchemaTree::root_path(std::size_t node) const {
  std::vector<ObjectType> path;
  std::optional<std::size_t> cur = node;
  while (cur) {
    path.push_back(nodes[*cur].type);
    cur = nodes[*cur].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

SchemaTree bfs_spanning_tree(const NetworkSchema& schema, const ObjectType& source) {
  check_source(schema, source);
  SchemaTree tree;
  std::vector<bool> placed(schema.types().size(), false);
  tree.nodes.push_back(SchemaTree::Node{source, 0, std::nullopt, {}, 0});
  placed[source.index] = true;
  std::deque<std::size_t> q{0};
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    // neighbors() is name-ordered, so children come out sorted.
    for (const auto& n : schema.neighbors(tree.nodes[u].type)) {
      if (placed[n.index]) continue;
      placed[n.index] = true;
      auto id = tree.nodes.size();
      tree.nodes.push_back(SchemaTree::Node{n, 0, u, {}, tree.nodes[u].depth + 1});
      tree.nodes[u].children.push_back(id);
      q.push_back(id);
    }
  }
  return tree;
}

SchemaTree augment_spanning_tree(const NetworkSchema& schema, const SchemaTree& tree) {
  SchemaTree ast = tree;
  std::set<std::pair<std::size_t, std::size_t>> covered;
  std::vector<std::size_t> copies(schema.types().size(), 0);
  for (const auto& n : tree.nodes) {
    if (n.parent) covered.insert(undirected(n.type.index, tree.nodes[*n.parent].type.index));
    copies[n.type.index] = std::max(copies[n.type.index], n.copy_ordinal);
  }
  for (auto u : tree.traversal_order()) {
    if (tree.nodes[u].is_duplicate()) continue;
    const auto type = tree.nodes[u].type;
    bool added = false;
    for (const auto& v : schema.neighbors(type)) {
      auto key = undirected(type.index, v.index);
      if (covered.count(key)) continue;
      covered.insert(key);
      auto id = ast.nodes.size();
      ast.nodes.push_back(
          SchemaTree::Node{v, ++copies[v.index], u, {}, ast.nodes[u].depth + 1});
      ast.nodes[u].children.push_back(id);
      added = true;
    }
    if (added) sort_children(ast, u);
  }
  return ast;
}

std::string RecurrentStructure::to_string() const {
  std::string out;
  if (kind == StructureKind::kMetaPath) return pivot.name + "," + child.name;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ",";
    out += path[i].name;
  }
  return out + "|" + child.name;
}

StructureList decomp_rms(const NetworkSchema& schema, const ObjectType& source) {
  check_source(schema, source);
  if (!schema.is_heterogeneous()) {
    throw DataError("schema is not heterogeneous (needs >1 object or link type)");
  }
  auto ast = augment_spanning_tree(schema, bfs_spanning_tree(schema, source));
  StructureList out{source, {}};
  for (auto u : ast.traversal_order()) {
    const auto& node = ast.nodes[u];
    if (node.children.empty()) continue;
    if (u == 0) {
      for (auto c : node.children) {
        out.items.push_back(
            RecurrentStructure{StructureKind::kMetaPath, {}, node.type, ast.nodes[c].type});
      }
      continue;
    }
    auto path = ast.root_path(u);
    for (auto c : node.children) {
      out.items.push_back(
          RecurrentStructure{StructureKind::kMetaTree, path, node.type, ast.nodes[c].type});
    }
  }
  return out;
}

RecurrentStructure parse_structure(std::string_view text, const NetworkSchema& schema) {
  auto split = [](std::string_view s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      auto pos = s.find(',', start);
      parts.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return parts;
  };
  auto bar = text.find('|');
  RecurrentStructure s;
  if (bar == std::string_view::npos) {
    auto parts = split(text);
    if (parts.size() != 2) {
      throw ConfigError("recurrent meta-path '" + std::string(text) + "' must be `Ts,Tc`");
    }
    s.kind = StructureKind::kMetaPath;
    s.pivot = schema.type(parts[0]);
    s.child = schema.type(parts[1]);
  } else {
    auto parts = split(text.substr(0, bar));
    auto child = std::string(text.substr(bar + 1));
    if (parts.size() < 2 || child.empty() || child.find_first_of(",|") != std::string::npos) {
      throw ConfigError("recurrent meta-tree '" + std::string(text) +
                        "' must be `Ts,...,Tp|Tc`");
    }
    s.kind = StructureKind::kMetaTree;
    for (const auto& p : parts) s.path.push_back(schema.type(p));
    s.pivot = s.path.back();
    s.child = schema.type(child);
    for (std::size_t i = 0; i + 1 < s.path.size(); ++i) {
      if (!schema.has_edge(s.path[i], s.path[i + 1])) {
        throw ConfigError("'" + s.path[i].name + "' and '" + s.path[i + 1].name +
                          "' are not adjacent in the schema");
      }
    }
  }
  if (!schema.has_edge(s.pivot, s.child)) {
    throw ConfigError("'" + s.pivot.name + "' and '" + s.child.name +
                      "' are not adjacent in the schema");
  }
  return s;
}

}  // namespace rmss
