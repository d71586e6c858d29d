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
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rmss/errors.h"
#include "rmss/similarity.h"

namespace rmss {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("index: malformed number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s, int base = 10) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("index: malformed integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::size_t OfflineIndex::object_position(std::string_view id) const {
  auto it = std::find(objects.begin(), objects.end(), id);
  if (it == objects.end()) {
    throw DataError("unknown object '" + std::string(id) + "' for source type '" +
                    source_type + "'");
  }
  return static_cast<std::size_t>(it - objects.begin());
}

SparseMatrix aggregate_structures(const std::vector<IndexedStructure>& items,
                                  Eigen::Index n) {
  SparseMatrix u(n, n);
  for (const auto& item : items) u += item.weight * item.matrix;
  return prune_exact_zeros(std::move(u));
}

OfflineIndex build_offline_index(const TypedGraph& g, const NetworkSchema& schema,
                                 const ObjectType& source, double lambda,
                                 const WeightStrategy& strategy,
                                 const SolverOptions& solver, BuildReport* report) {
  check_lambda(lambda);
  BuildReport local_report;
  auto& rep = report ? *report : local_report;

  auto t0 = Clock::now();
  auto structures = decomp_rms(schema, source);
  rep.decompose_seconds = seconds_since(t0);

  // Structures are independent; evaluate them concurrently.
  t0 = Clock::now();
  std::vector<std::future<CommutingMatrix>> jobs;
  for (const auto& s : structures.items) {
    jobs.push_back(std::async(std::launch::async, [&g, &solver, s, lambda] {
      return structure_commuting(g, s, lambda, solver);
    }));
  }
  std::vector<CommutingMatrix> mats;
  for (auto& j : jobs) mats.push_back(j.get());
  rep.commuting_seconds = seconds_since(t0);

  t0 = Clock::now();
  std::vector<bool> keep(mats.size(), true);
  rep.pruned.clear();
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (structures.items[i].kind == StructureKind::kMetaPath &&
        is_effectively_diagonal(mats[i].data)) {
      keep[i] = false;
      rep.pruned.push_back(structures.items[i].to_string());
    }
  }
  if (std::none_of(keep.begin(), keep.end(), [](bool k) { return k; })) {
    throw DataError("no informative structures: every recurrent meta-path is diagonal");
  }

  std::vector<double> weights(mats.size(), 0.0);
  if (strategy.kind == WeightKind::kGlobal) {
    std::vector<CommutingMatrix> kept;
    for (std::size_t i = 0; i < mats.size(); ++i) {
      if (keep[i]) kept.push_back(mats[i]);
    }
    auto w = global_weights(kept);
    for (std::size_t i = 0, j = 0; i < mats.size(); ++i) {
      if (keep[i]) weights[i] = w.weights[j++];
    }
  } else {
    auto w = local_weights(g, structures, strategy);
    double total = 0.0;
    for (std::size_t i = 0; i < mats.size(); ++i) {
      if (keep[i]) total += w.weights[i];
    }
    if (!(total > 0.0)) throw DataError("every informative structure has zero local weight");
    for (std::size_t i = 0; i < mats.size(); ++i) {
      if (keep[i]) weights[i] = w.weights[i] / total;
    }
  }

  OfflineIndex index;
  index.source_type = source.name;
  index.objects = g.objects(source);
  index.lambda = lambda;
  index.strategy = strategy;
  index.schema_hash = schema.hash();
  index.pruned = rep.pruned;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (!keep[i]) continue;
    index.structures.push_back(
        IndexedStructure{structures.items[i], weights[i], std::move(mats[i].data)});
  }
  index.aggregate =
      aggregate_structures(index.structures, static_cast<Eigen::Index>(index.objects.size()));
  rep.weighting_seconds = seconds_since(t0);
  return index;
}

// ---------------------------------------------------------------------------
// Persistence

void save_index(std::ostream& out, const OfflineIndex& index) {
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(index.schema_hash));
  out << "rmss-index\t" << OfflineIndex::kFormatVersion << '\n';
  out << "schema_hash\t" << hash << '\n';
  out << "source_type\t" << index.source_type << '\n';
  out << "lambda\t" << format_double(index.lambda) << '\n';
  out << "strategy\t" << weight_kind_name(index.strategy.kind) << '\n';
  out << "samples\t" << index.strategy.samples << '\n';
  out << "seed\t" << index.strategy.seed << '\n';
  for (const auto& c : index.config) out << "config\t" << c << '\n';
  out << "objects\t" << index.objects.size() << '\n';
  for (const auto& id : index.objects) out << id << '\n';
  out << "pruned\t" << index.pruned.size() << '\n';
  for (const auto& p : index.pruned) out << p << '\n';
  out << "structures\t" << index.structures.size() << '\n';
  for (const auto& s : index.structures) {
    out << "structure\t" << s.structure.to_string() << '\n';
    out << "weight\t" << format_double(s.weight) << '\n';
    write_matrix(out, s.matrix);
  }
  out << "aggregate\n";
  write_matrix(out, index.aggregate);
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string l;
    if (!std::getline(in_, l)) throw DataError("index: unexpected end of file");
    if (!l.empty() && l.back() == '\r') l.pop_back();
    return l;
  }

  // Reads `key<TAB>value` and checks the key.
  std::string field(const std::string& key) {
    auto l = line();
    auto tab = l.find('\t');
    if (l.substr(0, tab) != key || tab == std::string::npos) {
      throw DataError("index: expected '" + key + "', got '" + l + "'");
    }
    return l.substr(tab + 1);
  }

  std::istream& stream() { return in_; }

 private:
  std::istream& in_;
};

// Resolves type names appearing in a structure line without a full schema.
RecurrentStructure parse_stored_structure(const std::string& text) {
  std::vector<std::string> names;
  std::vector<ObjectType> types;
  auto type_of = [&](const std::string& name) {
    for (const auto& t : types) {
      if (t.name == name) return t;
    }
    types.push_back(ObjectType{name, types.size()});
    return types.back();
  };
  auto bar = text.find('|');
  std::string head = text.substr(0, bar);
  std::vector<ObjectType> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = head.find(',', start);
    parts.push_back(type_of(head.substr(start, pos == std::string::npos ? pos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  RecurrentStructure s;
  if (bar == std::string::npos) {
    if (parts.size() != 2) throw DataError("index: malformed structure '" + text + "'");
    s.kind = StructureKind::kMetaPath;
    s.pivot = parts[0];
    s.child = parts[1];
  } else {
    if (parts.size() < 2) throw DataError("index: malformed structure '" + text + "'");
    s.kind = StructureKind::kMetaTree;
    s.path = parts;
    s.pivot = parts.back();
    s.child = type_of(text.substr(bar + 1));
  }
  return s;
}

}  // namespace

OfflineIndex load_index(std::istream& in) {
  LineReader r(in);
  OfflineIndex index;
  auto version = r.field("rmss-index");
  if (parse_u64(version) != static_cast<std::uint64_t>(OfflineIndex::kFormatVersion)) {
    throw DataError("index: unsupported format version " + version);
  }
  index.schema_hash = parse_u64(r.field("schema_hash"), 16);
  index.source_type = r.field("source_type");
  index.lambda = parse_double(r.field("lambda"));
  index.strategy.kind = parse_weight_kind(r.field("strategy"));
  index.strategy.samples = parse_u64(r.field("samples"));
  index.strategy.seed = parse_u64(r.field("seed"));
  std::string l = r.line();
  while (l.rfind("config\t", 0) == 0) {
    index.config.push_back(l.substr(7));
    l = r.line();
  }
  if (l.rfind("objects\t", 0) != 0) throw DataError("index: expected 'objects', got '" + l + "'");
  auto n = parse_u64(l.substr(8));
  for (std::uint64_t i = 0; i < n; ++i) index.objects.push_back(r.line());
  auto n_pruned = parse_u64(r.field("pruned"));
  for (std::uint64_t i = 0; i < n_pruned; ++i) index.pruned.push_back(r.line());
  auto n_struct = parse_u64(r.field("structures"));
  for (std::uint64_t i = 0; i < n_struct; ++i) {
    IndexedStructure s;
    s.structure = parse_stored_structure(r.field("structure"));
    s.weight = parse_double(r.field("weight"));
    s.matrix = read_matrix(r.stream());
    index.structures.push_back(std::move(s));
  }
  if (r.line() != "aggregate") throw DataError("index: expected 'aggregate'");
  index.aggregate = read_matrix(r.stream());
  auto dim = static_cast<Eigen::Index>(index.objects.size());
  if (index.aggregate.rows() != dim || index.aggregate.cols() != dim) {
    throw DataError("index: aggregate matrix does not match the object list");
  }
  return index;
}

void save_index_file(const std::string& path, const OfflineIndex& index) {
  auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp + "'");
    save_index(out, index);
    if (!out) throw ConfigError("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

OfflineIndex load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open index '" + path + "'");
  return load_index(in);
}

// ---------------------------------------------------------------------------
// Online phase

SimilarityMatrix rmss_from_aggregate(const SparseMatrix& aggregate) {
  SimilarityMatrix out;
  out.values = aggregate;
  for (int r = 0; r < out.values.outerSize(); ++r) {
    double diag = 0.0;
    for (SparseMatrix::InnerIterator it(out.values, r); it; ++it) {
      if (it.col() == r) diag = it.value();
    }
    if (diag > 0.0) {
      for (SparseMatrix::InnerIterator it(out.values, r); it; ++it) it.valueRef() /= diag;
    } else {
      for (SparseMatrix::InnerIterator it(out.values, r); it; ++it) it.valueRef() = 0.0;
      out.undefined_rows.push_back(static_cast<std::size_t>(r));
    }
  }
  out.values = prune_exact_zeros(std::move(out.values));
  return out;
}

SimilarityMatrix rmss_matrix(const OfflineIndex& index) {
  return rmss_from_aggregate(index.aggregate);
}

QueryResult rmss_query(const OfflineIndex& index, std::string_view object_id) {
  auto row = static_cast<int>(index.object_position(object_id));
  QueryResult out;
  out.scores = Vector::Zero(index.aggregate.cols());
  double diag = index.aggregate.coeff(row, row);
  if (!(diag > 0.0)) {
    out.undefined = true;
    return out;
  }
  for (SparseMatrix::InnerIterator it(index.aggregate, row); it; ++it) {
    out.scores[it.col()] = it.value() / diag;
  }
  return out;
}

std::vector<RankedItem> rank_scores(const std::vector<std::string>& ids,
                                    const Vector& scores, std::size_t topk) {
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto sa = scores[static_cast<Eigen::Index>(a)];
    auto sb = scores[static_cast<Eigen::Index>(b)];
    if (sa != sb) return sa > sb;
    return ids[a] < ids[b];
  });
  if (topk != 0 && topk < order.size()) order.resize(topk);
  std::vector<RankedItem> out;
  for (auto i : order) out.push_back(RankedItem{ids[i], scores[static_cast<Eigen::Index>(i)]});
  return out;
}

}  // namespace rmss
