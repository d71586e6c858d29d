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

#include <algorithm>
#include <string>

#include "rmss/errors.h"
#include "rmss/kernels.h"

namespace rmss {

bool MetaStructure::is_path() const {
  return std::all_of(layers.begin(), layers.end(),
                     [](const auto& l) { return l.size() == 1; });
}

MetaPath MetaStructure::as_path() const {
  if (!is_path()) throw ConfigError("meta-structure is not a path");
  MetaPath p;
  for (const auto& l : layers) p.types.push_back(l.front());
  return p;
}

std::string MetaStructure::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i) out += ",";
    if (layers[i].size() == 1) {
      out += layers[i].front().name;
      continue;
    }
    out += "(";
    for (std::size_t j = 0; j < layers[i].size(); ++j) {
      if (j) out += "|";
      out += layers[i][j].name;
    }
    out += ")";
  }
  return out;
}

MetaStructure parse_metastructure(std::string_view text, const NetworkSchema& schema) {
  MetaStructure s;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    return ConfigError("meta-structure '" + std::string(text) + "': " + why);
  };
  while (i <= text.size()) {
    std::vector<ObjectType> layer;
    if (i < text.size() && text[i] == '(') {
      auto close = text.find(')', i);
      if (close == std::string_view::npos) throw fail("unbalanced '('");
      auto inner = text.substr(i + 1, close - i - 1);
      std::size_t start = 0;
      while (true) {
        auto bar = inner.find('|', start);
        auto tok = inner.substr(start, bar == std::string_view::npos ? bar : bar - start);
        auto t = schema.type(tok);
        if (std::find(layer.begin(), layer.end(), t) != layer.end()) {
          throw fail("type '" + t.name + "' repeated within a layer");
        }
        layer.push_back(t);
        if (bar == std::string_view::npos) break;
        start = bar + 1;
      }
      i = close + 1;
      if (i < text.size() && text[i] != ',') throw fail("expected ',' after ')'");
    } else {
      auto comma = text.find(',', i);
      auto tok = text.substr(i, comma == std::string_view::npos ? comma : comma - i);
      if (tok.find_first_of("()|") != std::string_view::npos) throw fail("malformed layer");
      layer.push_back(schema.type(tok));
      i = comma == std::string_view::npos ? text.size() : comma;
    }
    s.layers.push_back(std::move(layer));
    if (i >= text.size()) break;
    ++i;  // skip ','
  }
  if (s.layers.size() < 2) throw fail("needs at least two layers");
  if (s.layers.front().size() != 1 || s.layers.back().size() != 1) {
    throw fail("first and last layers must hold a single type");
  }
  for (std::size_t h = 0; h + 1 < s.layers.size(); ++h) {
    const auto& from = s.layers[h];
    const auto& to = s.layers[h + 1];
    for (const auto& v : to) {
      bool ok = std::any_of(from.begin(), from.end(),
                            [&](const ObjectType& u) { return schema.has_edge(u, v); });
      if (!ok) throw fail("type '" + v.name + "' has no predecessor in the previous layer");
    }
    for (const auto& u : from) {
      bool ok = std::any_of(to.begin(), to.end(),
                            [&](const ObjectType& v) { return schema.has_edge(u, v); });
      if (!ok) throw fail("type '" + u.name + "' has no successor in the next layer");
    }
  }
  return s;
}

std::vector<std::size_t> LayerTuples::decode(std::size_t tuple) const {
  std::vector<std::size_t> idx(radices.size());
  for (std::size_t k = radices.size(); k-- > 0;) {
    idx[k] = tuple % radices[k];
    tuple /= radices[k];
  }
  return idx;
}

LayerTuples layer_tuples(const TypedGraph& g, const std::vector<ObjectType>& layer) {
  LayerTuples out;
  out.types = layer;
  out.size = 1;
  for (const auto& t : layer) {
    out.radices.push_back(g.count(t));
    out.size *= g.count(t);
  }
  return out;
}

SparseMatrix layer_relation(const TypedGraph& g, const NetworkSchema& schema,
                            const std::vector<ObjectType>& from,
                            const std::vector<ObjectType>& to, std::size_t cap) {
  auto a = layer_tuples(g, from);
  auto b = layer_tuples(g, to);
  if (a.size != 0 && b.size > cap / a.size) {
    throw DataError("layer Cartesian product " + std::to_string(a.size) + " x " +
                    std::to_string(b.size) + " exceeds cap " + std::to_string(cap));
  }
  struct Check {
    std::size_t from_slot;
    std::size_t to_slot;
    SparseMatrix rel;
  };
  std::vector<Check> checks;
  for (std::size_t i = 0; i < from.size(); ++i) {
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (schema.has_edge(from[i], to[j])) {
        checks.push_back(Check{i, j, g.relation_or_empty(from[i], to[j])});
      }
    }
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t s = 0; s < a.size; ++s) {
    auto su = a.decode(s);
    for (std::size_t t = 0; t < b.size; ++t) {
      auto tv = b.decode(t);
      bool linked = std::all_of(checks.begin(), checks.end(), [&](const Check& c) {
        return c.rel.coeff(static_cast<Eigen::Index>(su[c.from_slot]),
                           static_cast<Eigen::Index>(tv[c.to_slot])) != 0.0;
      });
      if (linked) trips.emplace_back(static_cast<int>(s), static_cast<int>(t), 1.0);
    }
  }
  SparseMatrix m(static_cast<Eigen::Index>(a.size), static_cast<Eigen::Index>(b.size));
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

SparseMatrix metastructure_commuting(const TypedGraph& g, const NetworkSchema& schema,
                                     const MetaStructure& s, std::size_t cap) {
  if (s.layers.size() < 2) throw ConfigError("meta-structure needs at least two layers");
  SparseMatrix m = layer_relation(g, schema, s.layers[0], s.layers[1], cap);
  for (std::size_t h = 1; h + 1 < s.layers.size(); ++h) {
    m = SparseMatrix(m * layer_relation(g, schema, s.layers[h], s.layers[h + 1], cap));
  }
  return prune_exact_zeros(std::move(m));
}

}  // namespace rmss
