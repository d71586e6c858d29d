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

// rmss: offline index construction, queries, baselines, evaluation and
// synthetic data generation from the command line.
//
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rmss/baselines.h"
#include "rmss/errors.h"
#include "rmss/eval.h"
#include "rmss/hin.h"
#include "rmss/kernels.h"
#include "rmss/similarity.h"

namespace {

using namespace rmss;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

// Shortest representation that reads back to the same double.
std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Key/value provenance written as `# key=value` lines at the top of every
/// output. Keys keep insertion order.
class RunConfig {
 public:
  explicit RunConfig(std::string command) { set("command", std::move(command)); }

  void set(const std::string& key, const std::string& value) {
    for (auto& kv : items_) {
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    }
    items_.emplace_back(key, value);
  }
  void set(const std::string& key, double value) { set(key, fmt(value)); }
  void set_u64(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }

  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : items_) out.push_back(k + "=" + v);
    return out;
  }
  std::string header() const {
    std::string out;
    for (const auto& l : lines()) out += "# " + l + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

// Writes to `path` through a temp file and rename, or to stdout when the
// path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp + "'");
    out << text;
    if (!out) throw ConfigError("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::vector<std::string>> read_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split_tsv(line));
  }
  return rows;
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("malformed " + what + " '" + s + "'");
  }
  return v;
}

double parse_score(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("malformed score '" + s + "'");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Shared option groups

struct GraphOptions {
  std::string nodes;
  std::string edges;
  std::string schema;

  void add(CLI::App* app) {
    app->add_option("--nodes", nodes, "nodes TSV: object_id<TAB>type")->required();
    app->add_option("--edges", edges, "edges TSV: src_id<TAB>dst_id")->required();
    app->add_option("--schema", schema, "optional schema TSV: src_type<TAB>dst_type");
  }
  TypedGraph load() const { return load_hin_files(nodes, edges, schema); }
  void record(RunConfig& c) const {
    c.set("nodes", nodes);
    c.set("edges", edges);
    if (!schema.empty()) c.set("schema", schema);
  }
};

struct RmssOptions {
  std::string source_type;
  double lambda = kDefaultLambda;
  std::string weights = "global";
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::string solver = "auto";
  double tol = 1e-12;

  void add(CLI::App* app, bool require_source = true) {
    auto* st = app->add_option("--source-type", source_type, "object type to compare");
    if (require_source) st->required();
    app->add_option("--lambda", lambda, "decaying parameter in (0,1)")->capture_default_str();
    app->add_option("--weights", weights, "global | local-exact | local-sampled")
        ->capture_default_str();
    app->add_option("--samples", samples, "draws for local-sampled weights")
        ->capture_default_str();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    app->add_option("--solver", solver, "auto | closed | truncated")->capture_default_str();
    app->add_option("--tol", tol, "truncated-series tolerance")->capture_default_str();
  }

  WeightStrategy strategy() const {
    WeightStrategy s;
    s.kind = parse_weight_kind(weights);
    s.samples = samples;
    s.seed = seed;
    if (s.kind == WeightKind::kLocalSampled && samples == 0) {
      throw ConfigError("--samples must be at least 1");
    }
    return s;
  }

  SolverOptions solver_options() const {
    SolverOptions o;
    if (solver == "auto") {
      o.mode = SolverMode::kAuto;
    } else if (solver == "closed") {
      o.mode = SolverMode::kClosedForm;
    } else if (solver == "truncated") {
      o.mode = SolverMode::kTruncated;
    } else {
      throw ConfigError("unknown solver '" + solver + "'");
    }
    if (!(tol > 0.0)) throw ConfigError("--tol must be positive");
    o.tol = tol;
    return o;
  }

  void validate() const {
    check_lambda(lambda);
    strategy();
    solver_options();
  }

  void record(RunConfig& c) const {
    c.set("source_type", source_type);
    c.set("lambda", lambda);
    c.set("weights", std::string(weight_kind_name(parse_weight_kind(weights))));
    c.set_u64("samples", samples);
    c.set_u64("seed", seed);
    c.set("solver", solver);
    c.set("tol", tol);
  }
};

std::string similarity_tsv_header() { return "source\ttarget\tscore\n"; }

std::string matrix_tsv(const std::vector<std::string>& rows,
                       const std::vector<std::string>& cols, const DenseMatrix& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0.0) continue;
      out += rows[static_cast<std::size_t>(r)] + "\t" + cols[static_cast<std::size_t>(c)] +
             "\t" + fmt(m(r, c)) + "\n";
    }
  }
  return out;
}

std::string ranking_tsv(const std::string& source, const std::vector<RankedItem>& items) {
  std::string out;
  for (const auto& it : items) out += source + "\t" + it.id + "\t" + fmt(it.score) + "\n";
  return out;
}

OfflineIndex build_index(const TypedGraph& g, const RmssOptions& o, double lambda,
                         BuildReport* report = nullptr) {
  auto schema = schema_of(g);
  return build_offline_index(g, schema, schema.type(o.source_type), lambda, o.strategy(),
                             o.solver_options(), report);
}

// ---------------------------------------------------------------------------
// offline

struct OfflineCmd {
  GraphOptions graph;
  RmssOptions rmss;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("offline", "build and persist an RMSS index");
    graph.add(app);
    rmss.add(app);
    app->add_option("--out", out, "index file")->required();
    app->callback([this] { run(); });
  }

  void run() {
    rmss.validate();
    RunConfig cfg("offline");
    graph.record(cfg);
    rmss.record(cfg);
    cfg.set("out", out);
    auto g = graph.load();
    BuildReport rep;
    auto index = build_index(g, rmss, rmss.lambda, &rep);
    index.config = cfg.lines();
    save_index_file(out, index);

    std::cout << "structures\n";
    for (const auto& s : index.structures) {
      std::cout << "  " << s.structure.to_string() << "\tweight=" << fmt(s.weight) << "\n";
    }
    std::cout << "pruned\n";
    for (const auto& p : index.pruned) std::cout << "  " << p << "\n";
    std::cout << "timing_seconds\tdecompose=" << rep.decompose_seconds
              << "\tcommuting=" << rep.commuting_seconds
              << "\tweighting=" << rep.weighting_seconds << "\n";
    std::cout << "wrote " << out << " (" << index.objects.size() << " " << index.source_type
              << " objects)\n";
  }
};

// ---------------------------------------------------------------------------
// query

struct QueryCmd {
  std::string index_path;
  std::string object;
  std::size_t topk = 10;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("query", "rank objects against one source object");
    app->add_option("index", index_path, "index file from `rmss offline`")->required();
    app->add_option("object", object, "source object id")->required();
    app->add_option("--topk", topk, "number of results (0 = all)")->capture_default_str();
    app->add_option("--out", out, "output TSV (default stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    auto index = load_index_file(index_path);
    RunConfig cfg("query");
    cfg.set("index", index_path);
    cfg.set("object", object);
    cfg.set_u64("topk", topk);
    for (const auto& l : index.config) cfg.set("index." + l.substr(0, l.find('=')),
                                               l.substr(l.find('=') + 1));
    auto q = rmss_query(index, object);
    std::string text = cfg.header();
    if (q.undefined) {
      text += "# undefined: object has no recurrent structure instances\n";
      std::cerr << "warning: similarity undefined for '" << object << "'\n";
    }
    text += similarity_tsv_header();
    text += ranking_tsv(object, rank_scores(index.objects, q.scores, topk));
    emit(out, text);
  }
};

// ---------------------------------------------------------------------------
// matrix

struct MatrixCmd {
  std::string index_path;
  GraphOptions graph;
  RmssOptions rmss;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand(
        "matrix", "all-pairs RMSS matrix from an index or directly from a graph");
    app->add_option("--index", index_path, "index file from `rmss offline`");
    app->add_option("--nodes", graph.nodes, "nodes TSV");
    app->add_option("--edges", graph.edges, "edges TSV");
    app->add_option("--schema", graph.schema, "schema TSV");
    rmss.add(app, false);
    app->add_option("--out", out, "output TSV (default stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    RunConfig cfg("matrix");
    OfflineIndex index;
    if (!index_path.empty()) {
      cfg.set("index", index_path);
      index = load_index_file(index_path);
      for (const auto& l : index.config) {
        cfg.set("index." + l.substr(0, l.find('=')), l.substr(l.find('=') + 1));
      }
    } else {
      if (graph.nodes.empty() || graph.edges.empty() || rmss.source_type.empty()) {
        throw ConfigError("matrix needs --index, or --nodes, --edges and --source-type");
      }
      rmss.validate();
      graph.record(cfg);
      rmss.record(cfg);
      index = build_index(graph.load(), rmss, rmss.lambda);
    }
    auto sim = rmss_matrix(index);
    std::string text = cfg.header();
    for (auto r : sim.undefined_rows) text += "# undefined\t" + index.objects[r] + "\n";
    text += similarity_tsv_header();
    text += matrix_tsv(index.objects, index.objects, DenseMatrix(sim.values));
    emit(out, text);
  }
};

// ---------------------------------------------------------------------------
// baseline

DenseMatrix baseline_matrix(const TypedGraph& g, const std::string& metric,
                            const std::string& structure, double alpha,
                            std::vector<std::string>* ids) {
  auto schema = schema_of(g);
  if (metric == "bscse") {
    auto s = parse_metastructure(structure, schema);
    *ids = g.objects(s.layers.front().front());
    if (s.layers.back().front() != s.layers.front().front()) {
      throw ConfigError("bscse needs a meta-structure that starts and ends on the same type");
    }
    return bscse_matrix(g, schema, s, alpha);
  }
  auto p = parse_metapath(structure, schema);
  *ids = g.objects(p.types.front());
  if (metric == "pathsim") return pathsim_matrix(g, p);
  if (metric == "bpcrw") {
    if (!(p.types.back() == p.types.front())) {
      throw ConfigError("bpcrw needs a meta-path that starts and ends on the same type");
    }
    return bpcrw_matrix(g, p, alpha);
  }
  throw ConfigError("unknown baseline '" + metric + "' (pathsim, bpcrw, bscse)");
}

struct BaselineCmd {
  std::string metric;
  std::string structure;
  std::string metapath;
  std::string metastructure;
  GraphOptions graph;
  double alpha = 0.5;
  std::string object;
  std::size_t topk = 0;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("baseline", "PathSim, BPCRW or BSCSE similarity");
    app->add_option("metric", metric, "pathsim | bpcrw | bscse")->required();
    app->add_option("structure", structure, "meta-path or meta-structure, e.g. V,P,A,P,V");
    app->add_option("--metapath", metapath, "meta-path for pathsim / bpcrw");
    app->add_option("--metastructure", metastructure, "meta-structure for bscse");
    graph.add(app);
    app->add_option("--alpha", alpha, "BPCRW / BSCSE degree exponent")->capture_default_str();
    app->add_option("--object", object, "emit only this object's ranked row");
    app->add_option("--topk", topk, "with --object: number of results (0 = all)");
    app->add_option("--out", out, "output TSV (default stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    std::string s = structure;
    for (const auto* alt : {&metapath, &metastructure}) {
      if (alt->empty()) continue;
      if (!s.empty() && s != *alt) throw ConfigError("conflicting structure arguments");
      s = *alt;
    }
    if (s.empty()) throw ConfigError("baseline needs a structure (positional, --metapath or --metastructure)");
    if (!(alpha >= 0.0)) throw ConfigError("--alpha must be nonnegative");
    RunConfig cfg("baseline");
    cfg.set("metric", metric);
    cfg.set("structure", s);
    graph.record(cfg);
    cfg.set("alpha", alpha);
    auto g = graph.load();
    std::vector<std::string> ids;
    auto m = baseline_matrix(g, metric, s, alpha, &ids);
    std::string text = cfg.header() + similarity_tsv_header();
    if (!object.empty()) {
      cfg.set("object", object);
      auto it = std::find(ids.begin(), ids.end(), object);
      if (it == ids.end()) throw DataError("unknown object '" + object + "'");
      Vector row = m.row(it - ids.begin()).transpose();
      text = cfg.header() + similarity_tsv_header() + ranking_tsv(object, rank_scores(ids, row, topk));
    } else {
      text += matrix_tsv(ids, ids, m);
    }
    emit(out, text);
  }
};

// ---------------------------------------------------------------------------
// eval

std::map<std::string, int> read_labels(const std::string& path, const std::string& what) {
  std::map<std::string, int> out;
  for (const auto& row : read_tsv(path)) {
    if (row.size() < 2) throw DataError(what + " line needs object_id<TAB>value");
    if (!out.emplace(row[0], parse_int(row[1], what)).second) {
      throw DataError("duplicate " + what + " for '" + row[0] + "'");
    }
  }
  return out;
}

// Rankings are either one id per line or similarity TSV (target column).
std::vector<std::string> read_ranking(const std::string& path) {
  std::vector<std::string> out;
  for (const auto& row : read_tsv(path)) {
    if (row.size() >= 3) {
      if (row[0] == "source" && row[1] == "target") continue;
      out.push_back(row[1]);
    } else {
      out.push_back(row[0]);
    }
  }
  return out;
}

// Similarity TSV back into a dense matrix over the given object order.
DenseMatrix read_similarity(const std::string& path, std::vector<std::string>* ids) {
  std::map<std::string, std::size_t> pos;
  std::vector<std::tuple<std::string, std::string, double>> entries;
  for (const auto& row : read_tsv(path)) {
    if (row.size() < 3) throw DataError("similarity line needs source<TAB>target<TAB>score");
    if (row[0] == "source" && row[1] == "target") continue;
    entries.emplace_back(row[0], row[1], parse_score(row[2]));
    for (const auto& id : {row[0], row[1]}) {
      if (pos.emplace(id, ids->size()).second) ids->push_back(id);
    }
  }
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(ids->size()),
                                    static_cast<Eigen::Index>(ids->size()));
  for (const auto& [s, t, v] : entries) {
    m(static_cast<Eigen::Index>(pos[s]), static_cast<Eigen::Index>(pos[t])) = v;
  }
  return m;
}

GainForm parse_gain(const std::string& s) {
  if (s == "printed") return GainForm::kPrinted;
  if (s == "standard") return GainForm::kStandard;
  throw ConfigError("unknown gain form '" + s + "' (printed, standard)");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw ConfigError("malformed grid value '" + tok + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty parameter grid");
  return out;
}

double nmi_of(const DenseMatrix& features, const std::vector<std::string>& ids,
              const std::map<std::string, int>& labels, std::size_t k, std::uint64_t seed) {
  Partition truth;
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = labels.find(ids[i]);
    if (it == labels.end()) continue;
    truth.push_back(it->second);
    rows.push_back(static_cast<Eigen::Index>(i));
  }
  if (truth.size() != labels.size()) throw DataError("labels name objects outside the similarity matrix");
  DenseMatrix x(static_cast<Eigen::Index>(rows.size()), features.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) x.row(static_cast<Eigen::Index>(r)) = features.row(rows[r]);
  return nmi(kmeans_cluster(x, k, seed), truth);
}

std::size_t distinct_classes(const std::map<std::string, int>& labels) {
  std::set<int> s;
  for (const auto& [id, c] : labels) s.insert(c);
  return s.size();
}

struct EvalCmd {
  // ndcg
  std::string ranking;
  std::string judgments;
  std::string gain = "printed";
  // nmi
  std::string clusters;
  std::string similarity;
  std::string labels;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  // sweep
  std::string method = "rmss";
  std::string structure;
  std::string query;
  std::string grid;
  std::string measure = "nmi";
  GraphOptions graph;
  RmssOptions rmss;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("eval", "ranking and clustering quality");
    app->require_subcommand(1);

    auto* nd = app->add_subcommand("ndcg", "nDCG of a ranking against graded judgments");
    nd->add_option("--ranking", ranking, "ranked ids, or similarity TSV in rank order")->required();
    nd->add_option("--judgments", judgments, "object_id<TAB>grade in {0..3}")->required();
    nd->add_option("--gain", gain, "printed (2^(r-1)) | standard (2^r - 1)")->capture_default_str();
    nd->add_option("--out", out, "report file (default stdout)");
    nd->callback([this] { run_ndcg(); });

    auto* nm = app->add_subcommand("nmi", "NMI of a clustering against class labels");
    nm->add_option("--labels", labels, "object_id<TAB>class")->required();
    nm->add_option("--clusters", clusters, "object_id<TAB>cluster");
    nm->add_option("--similarity", similarity, "similarity TSV to cluster with k-means");
    nm->add_option("--k", k, "clusters (default: number of classes)");
    nm->add_option("--seed", seed, "k-means seed")->capture_default_str();
    nm->add_option("--out", out, "report file (default stdout)");
    nm->callback([this] { run_nmi(); });

    auto* sw = app->add_subcommand("sweep", "score a method over a lambda or alpha grid");
    sw->add_option("--method", method, "rmss | pathsim | bpcrw | bscse")->capture_default_str();
    sw->add_option("--metapath,--metastructure", structure, "structure for baselines");
    sw->add_option("--measure", measure, "nmi | ndcg")->capture_default_str();
    sw->add_option("--labels", labels, "object_id<TAB>class (nmi)");
    sw->add_option("--judgments", judgments, "object_id<TAB>grade (ndcg)");
    sw->add_option("--query", query, "query object (ndcg)");
    sw->add_option("--gain", gain, "printed | standard")->capture_default_str();
    sw->add_option("--k", k, "clusters (default: number of classes)");
    sw->add_option("--grid", grid, "comma-separated lambda (rmss) or alpha values");
    graph.add(sw);
    rmss.add(sw, false);
    sw->add_option("--out", out, "report file (default stdout)");
    sw->callback([this] { run_sweep(); });
  }

  void run_ndcg() {
    RunConfig cfg("eval ndcg");
    cfg.set("ranking", ranking);
    cfg.set("judgments", judgments);
    cfg.set("gain", gain);
    auto form = parse_gain(gain);
    auto j = read_labels(judgments, "grade");
    RelevanceJudgment rj(j.begin(), j.end());
    double v = ndcg(read_ranking(ranking), rj, form);
    emit(out, cfg.header() + "metric\tvalue\nndcg\t" + fmt(v) + "\n");
  }

  void run_nmi() {
    RunConfig cfg("eval nmi");
    cfg.set("labels", labels);
    auto truth = read_labels(labels, "class");
    double v = 0.0;
    if (!clusters.empty() == !similarity.empty()) {
      throw ConfigError("eval nmi needs exactly one of --clusters or --similarity");
    }
    if (!clusters.empty()) {
      cfg.set("clusters", clusters);
      auto found = read_labels(clusters, "cluster");
      Partition a, b;
      for (const auto& [id, c] : truth) {
        auto it = found.find(id);
        if (it == found.end()) throw DataError("no cluster for labelled object '" + id + "'");
        a.push_back(it->second);
        b.push_back(c);
      }
      v = nmi(a, b);
    } else {
      std::size_t kk = k ? k : distinct_classes(truth);
      cfg.set("similarity", similarity);
      cfg.set_u64("k", kk);
      cfg.set_u64("seed", seed);
      std::vector<std::string> ids;
      auto m = read_similarity(similarity, &ids);
      v = nmi_of(m, ids, truth, kk, seed);
    }
    emit(out, cfg.header() + "metric\tvalue\nnmi\t" + fmt(v) + "\n");
  }

  void run_sweep() {
    RunConfig cfg("eval sweep");
    cfg.set("method", method);
    graph.record(cfg);
    const bool is_rmss = method == "rmss";
    if (!is_rmss && method != "pathsim" && method != "bpcrw" && method != "bscse") {
      throw ConfigError("unknown method '" + method + "'");
    }
    if (is_rmss && rmss.source_type.empty()) throw ConfigError("rmss sweep needs --source-type");
    if (!is_rmss && structure.empty()) throw ConfigError("baseline sweep needs --metapath or --metastructure");
    std::vector<double> values;
    if (!grid.empty()) {
      values = parse_grid(grid);
    } else if (is_rmss) {
      values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    } else if (method == "pathsim") {
      values = {0.0};  // parameter-free
    } else {
      values = {0.1, 0.3, 0.5, 0.7, 0.9};
    }
    const std::string param = is_rmss ? "lambda" : "alpha";
    if (is_rmss) {
      for (double v : values) check_lambda(v);
      rmss.strategy();
      rmss.solver_options();
      rmss.record(cfg);
      cfg.set("lambda", std::string("sweep"));
    } else {
      cfg.set("structure", structure);
    }
    std::string grid_text;
    for (double v : values) grid_text += (grid_text.empty() ? "" : ",") + fmt(v);
    cfg.set(param + "_grid", grid_text);
    cfg.set("measure", measure);

    std::map<std::string, int> truth;
    RelevanceJudgment rj;
    GainForm form = parse_gain(gain);
    std::size_t kk = 0;
    if (measure == "nmi") {
      if (labels.empty()) throw ConfigError("nmi sweep needs --labels");
      truth = read_labels(labels, "class");
      kk = k ? k : distinct_classes(truth);
      cfg.set("labels", labels);
      cfg.set_u64("k", kk);
      cfg.set_u64("seed", rmss.seed);
    } else if (measure == "ndcg") {
      if (judgments.empty() || query.empty()) throw ConfigError("ndcg sweep needs --judgments and --query");
      auto j = read_labels(judgments, "grade");
      rj = RelevanceJudgment(j.begin(), j.end());
      cfg.set("judgments", judgments);
      cfg.set("query", query);
      cfg.set("gain", gain);
    } else {
      throw ConfigError("unknown measure '" + measure + "'");
    }

    auto g = graph.load();
    std::string text = cfg.header() + param + "\t" + measure + "\n";
    for (double v : values) {
      std::vector<std::string> ids;
      DenseMatrix m;
      if (is_rmss) {
        auto index = build_index(g, rmss, v);
        ids = index.objects;
        m = DenseMatrix(rmss_matrix(index).values);
      } else {
        m = baseline_matrix(g, method, structure, v, &ids);
      }
      double score = 0.0;
      if (measure == "nmi") {
        score = nmi_of(m, ids, truth, kk, rmss.seed);
      } else {
        auto it = std::find(ids.begin(), ids.end(), query);
        if (it == ids.end()) throw DataError("unknown query object '" + query + "'");
        Vector row = m.row(it - ids.begin()).transpose();
        std::vector<std::string> ranked;
        for (const auto& r : rank_scores(ids, row)) ranked.push_back(r.id);
        score = ndcg(ranked, rj, form);
      }
      text += fmt(v) + "\t" + fmt(score) + "\n";
    }
    emit(out, text);
  }
};

// ---------------------------------------------------------------------------
// synth

struct SynthCmd {
  std::string preset = "bibliographic";
  double scale = 1.0;
  std::size_t communities = 2;
  double noise = 0.1;
  std::uint64_t seed = 0;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("synth", "planted-partition synthetic HIN");
    app->add_option("--preset", preset, "bibliographic | biological")->capture_default_str();
    app->add_option("--scale", scale, "multiplier for the preset sizes")->capture_default_str();
    app->add_option("--communities", communities, "planted communities")->capture_default_str();
    app->add_option("--noise", noise, "cross-community link probability")->capture_default_str();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    app->add_option("--out", out, "output directory")->required();
    app->callback([this] { run(); });
  }

  void run() {
    SynthConfig c;
    if (preset == "bibliographic") {
      c = bibliographic_preset(scale);
    } else if (preset == "biological") {
      c = biological_preset(scale);
    } else {
      throw ConfigError("unknown preset '" + preset + "'");
    }
    if (!(scale > 0.0)) throw ConfigError("--scale must be positive");
    c.communities = communities;
    c.noise = noise;
    c.seed = seed;
    auto h = synth_hin(c);

    RunConfig cfg("synth");
    cfg.set("preset", preset);
    cfg.set("scale", scale);
    cfg.set_u64("communities", communities);
    cfg.set("noise", noise);
    cfg.set_u64("seed", seed);
    std::filesystem::create_directories(out);
    auto dir = std::filesystem::path(out);
    std::string labels;
    for (const auto& t : h.graph.types()) {
      for (const auto& id : h.graph.objects(t)) {
        labels += id + "\t" + std::to_string(h.community.at(id)) + "\n";
      }
    }
    emit((dir / "nodes.tsv").string(), cfg.header() + h.nodes_tsv);
    emit((dir / "edges.tsv").string(), cfg.header() + h.edges_tsv);
    emit((dir / "schema.tsv").string(), cfg.header() + h.schema_tsv);
    emit((dir / "labels.tsv").string(), cfg.header() + labels);
    std::cout << "wrote " << h.graph.object_count() << " objects to " << out << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmss: recurrent meta-structure similarity on heterogeneous networks"};
  app.require_subcommand(1);
  OfflineCmd offline;
  QueryCmd query;
  MatrixCmd matrix;
  BaselineCmd baseline;
  EvalCmd eval;
  SynthCmd synth;
  offline.add(app);
  query.add(app);
  matrix.add(app);
  baseline.add(app);
  eval.add(app);
  synth.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
