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
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "rmss/errors.h"
#include "rmss/eval.h"

namespace rmss {

SynthHin synth_hin(const SynthConfig& config) {
  if (config.communities == 0) throw ConfigError("need at least one community");
  if (!(config.noise >= 0.0 && config.noise <= 1.0)) {
    throw ConfigError("noise must lie in [0, 1]");
  }
  std::map<std::string, std::size_t> sizes;
  for (const auto& [name, n] : config.sizes) {
    if (n == 0) throw ConfigError("type '" + name + "' needs a positive size");
    // Every community needs objects of every type, or intra-community links
    // cannot be drawn.
    if (n < config.communities) {
      throw ConfigError("type '" + name + "' has fewer objects than communities");
    }
    sizes[name] = n;
  }
  auto id_of = [](const std::string& type, std::size_t i) {
    return type + "_" + std::to_string(i);
  };

  std::mt19937_64 rng(config.seed);
  std::ostringstream nodes, edges, schema;
  SynthHin out;
  TypedGraph::Builder builder;
  for (const auto& [name, n] : config.sizes) {
    for (std::size_t i = 0; i < n; ++i) {
      auto id = id_of(name, i);
      builder.add_object(id, name);
      out.community[id] = static_cast<int>(i % config.communities);
      nodes << id << '\t' << name << '\n';
    }
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [src, dst, degree] : config.links) {
    if (!sizes.count(src) || !sizes.count(dst)) {
      throw ConfigError("link type " + src + "-" + dst + " uses an unsized type");
    }
    pairs.emplace_back(src, dst);
    schema << src << '\t' << dst << '\n';
  }
  builder.declare_schema(pairs);

  std::bernoulli_distribution cross(config.noise);
  for (const auto& [src, dst, degree] : config.links) {
    const auto n_src = sizes[src];
    const auto n_dst = sizes[dst];
    const auto c = config.communities;
    for (std::size_t i = 0; i < n_src; ++i) {
      const auto comm = i % c;
      // Objects of dst in community comm: comm, comm + c, comm + 2c, ...
      const auto own = (n_dst - comm + c - 1) / c;
      const auto want = std::min<std::size_t>(degree, n_dst);
      std::set<std::size_t> picked;
      std::size_t attempts = 0;
      while (picked.size() < want && attempts < 50 * want + 50) {
        ++attempts;
        std::size_t j;
        if (cross(rng)) {
          j = std::uniform_int_distribution<std::size_t>(0, n_dst - 1)(rng);
        } else {
          j = comm + c * std::uniform_int_distribution<std::size_t>(0, own - 1)(rng);
        }
        picked.insert(j);
      }
      for (auto j : picked) {
        auto a = id_of(src, i);
        auto b = id_of(dst, j);
        builder.add_link(a, b);
        edges << a << '\t' << b << '\n';
      }
    }
  }
  out.graph = std::move(builder).build();
  out.nodes_tsv = nodes.str();
  out.edges_tsv = edges.str();
  out.schema_tsv = schema.str();
  return out;
}

namespace {

std::size_t scaled(std::size_t n, double scale) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n * scale)));
}

}  // namespace

SynthConfig bibliographic_preset(double scale) {
  SynthConfig c;
  c.sizes = {{"V", 21}, {"P", scaled(500, scale)}, {"A", scaled(400, scale)},
             {"T", scaled(200, scale)}};
  c.links = {{"P", "V", 1}, {"P", "A", 2}, {"P", "T", 3}};
  return c;
}

SynthConfig biological_preset(double scale) {
  SynthConfig c;
  c.sizes = {{"G", scaled(200, scale)}, {"T", scaled(30, scale)}, {"GO", scaled(300, scale)},
             {"CC", scaled(400, scale)}, {"Si", scaled(70, scale)}, {"Sub", scaled(25, scale)}};
  c.links = {{"G", "GO", 3}, {"G", "T", 2}, {"G", "CC", 3}, {"CC", "Si", 2}, {"CC", "Sub", 2}};
  return c;
}

Partition community_labels(const SynthHin& hin, const ObjectType& t) {
  Partition labels;
  for (const auto& id : hin.graph.objects(t)) labels.push_back(hin.community.at(id));
  return labels;
}

}  // namespace rmss
