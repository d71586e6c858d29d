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
#include <map>
#include <random>

#include "rmss/errors.h"
#include "rmss/similarity.h"

namespace rmss {

std::string_view weight_kind_name(WeightKind kind) {
  switch (kind) {
    case WeightKind::kGlobal:
      return "global";
    case WeightKind::kLocalExact:
      return "local-exact";
    case WeightKind::kLocalSampled:
      return "local-sampled";
  }
  return "global";
}

WeightKind parse_weight_kind(std::string_view text) {
  if (text == "global") return WeightKind::kGlobal;
  if (text == "local-exact" || text == "local") return WeightKind::kLocalExact;
  if (text == "local-sampled") return WeightKind::kLocalSampled;
  throw ConfigError("unknown weight strategy '" + std::string(text) + "'");
}

std::string WeightStrategy::to_string() const {
  std::string out(weight_kind_name(kind));
  if (kind == WeightKind::kLocalSampled) {
    out += "(N=" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
  }
  return out;
}

WeightAssignment global_weights(const std::vector<CommutingMatrix>& mats) {
  if (mats.empty()) throw DataError("global weights need at least one structure");
  std::vector<double> sums;
  double total = 0.0;
  for (const auto& m : mats) {
    sums.push_back(entry_sum(m.data));
    total += sums.back();
  }
  if (!(total > 0.0)) throw DataError("every commuting matrix is zero");
  for (auto& s : sums) s /= total;
  return WeightAssignment{WeightStrategy{WeightKind::kGlobal}, std::move(sums)};
}

std::vector<double> edge_frequencies(const TypedGraph& g, const ObjectType& pivot,
                                     const std::vector<ObjectType>& children,
                                     const WeightStrategy& strategy,
                                     std::uint64_t stream) {
  const auto n = g.count(pivot);
  // degree[o * k + c]: neighbors of pivot object o in child type c
  const auto k = children.size();
  std::vector<std::size_t> degree(n * k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    auto rel = g.relation_or_empty(pivot, children[c]);
    for (int r = 0; r < rel.outerSize(); ++r) {
      std::size_t d = 0;
      for (SparseMatrix::InnerIterator it(rel, r); it; ++it) ++d;
      degree[static_cast<std::size_t>(r) * k + c] = d;
    }
  }
  std::vector<std::size_t> eligible;
  std::vector<std::size_t> total(n, 0);
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t c = 0; c < k; ++c) total[o] += degree[o * k + c];
    if (total[o] > 0) eligible.push_back(o);
  }
  if (eligible.empty()) {
    throw DataError("pivot type '" + pivot.name + "' has no links to its child types");
  }

  std::vector<double> freq(k, 0.0);
  if (strategy.kind != WeightKind::kLocalSampled) {
    for (auto o : eligible) {
      for (std::size_t c = 0; c < k; ++c) {
        freq[c] += static_cast<double>(degree[o * k + c]) / static_cast<double>(total[o]);
      }
    }
    for (auto& f : freq) f /= static_cast<double>(eligible.size());
    return freq;
  }

  if (strategy.samples == 0) throw ConfigError("sample count must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(strategy.seed),
                    static_cast<std::uint32_t>(strategy.seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> pick_object(0, eligible.size() - 1);
  std::vector<std::size_t> hits(k, 0);
  for (std::size_t draw = 0; draw < strategy.samples; ++draw) {
    auto o = eligible[pick_object(rng)];
    std::uniform_int_distribution<std::size_t> pick_neighbor(0, total[o] - 1);
    auto r = pick_neighbor(rng);
    std::size_t c = 0;
    while (r >= degree[o * k + c]) {
      r -= degree[o * k + c];
      ++c;
    }
    ++hits[c];
  }
  for (std::size_t c = 0; c < k; ++c) {
    freq[c] = static_cast<double>(hits[c]) / static_cast<double>(strategy.samples);
  }
  return freq;
}

WeightAssignment local_weights(const TypedGraph& g, const StructureList& structures,
                               const WeightStrategy& strategy) {
  if (strategy.kind == WeightKind::kGlobal) {
    throw ConfigError("local_weights called with the global strategy");
  }
  // Group structures by AST node: the root-to-pivot type path.
  using Key = std::vector<std::size_t>;
  auto key_of = [](const RecurrentStructure& s) {
    Key key;
    if (s.path.empty()) {
      key.push_back(s.pivot.index);
    } else {
      for (const auto& t : s.path) key.push_back(t.index);
    }
    return key;
  };
  std::vector<Key> order;
  std::map<Key, std::pair<ObjectType, std::vector<ObjectType>>> groups;
  for (const auto& s : structures.items) {
    auto key = key_of(s);
    auto it = groups.find(key);
    if (it == groups.end()) {
      order.push_back(key);
      it = groups.emplace(key, std::make_pair(s.pivot, std::vector<ObjectType>{})).first;
    }
    it->second.second.push_back(s.child);
  }
  std::map<Key, std::vector<double>> freqs;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [pivot, children] = groups.at(order[i]);
    freqs[order[i]] = edge_frequencies(g, pivot, children, strategy, i);
  }
  auto lookup = [&](const Key& key, const ObjectType& child) {
    auto it = groups.find(key);
    if (it == groups.end()) {
      throw DataError("structure list has no entry for an interior path node");
    }
    const auto& kids = it->second.second;
    auto pos = std::find(kids.begin(), kids.end(), child) - kids.begin();
    return freqs.at(key)[static_cast<std::size_t>(pos)];
  };

  WeightAssignment out{strategy, {}};
  double total = 0.0;
  for (const auto& s : structures.items) {
    double w = 1.0;
    Key prefix;
    for (std::size_t i = 0; i + 1 < s.path.size(); ++i) {
      prefix.push_back(s.path[i].index);
      w *= lookup(prefix, s.path[i + 1]);
    }
    w *= lookup(key_of(s), s.child);
    out.weights.push_back(w);
    total += w;
  }
  if (!(total > 0.0)) throw DataError("all local weights are zero");
  for (auto& w : out.weights) w /= total;
  return out;
}

}  // namespace rmss
