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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rmss/errors.h"
#include "rmss/similarity.h"
#include "test_util.h"

namespace rmss {
namespace {

CommutingMatrix constant(double v, int n) {
  DenseMatrix d = DenseMatrix::Constant(n, n, v);
  return CommutingMatrix{"m", d.sparseView(), 0.5};
}

TEST(GlobalWeights, ProportionalToEntrySums) {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 0) = 3.0;
  DenseMatrix b = DenseMatrix::Zero(2, 2);
  b(1, 0) = 1.0;
  auto w = global_weights({CommutingMatrix{"a", a.sparseView(), 0.5},
                           CommutingMatrix{"b", b.sparseView(), 0.5}});
  ASSERT_EQ(w.weights.size(), 2u);
  EXPECT_DOUBLE_EQ(w.weights[0], 0.75);
  EXPECT_DOUBLE_EQ(w.weights[1], 0.25);
}

TEST(GlobalWeights, Errors) {
  EXPECT_THROW(global_weights({}), DataError);
  EXPECT_THROW(global_weights({constant(0.0, 2)}), DataError);
  auto w = global_weights({constant(1.0, 2), constant(1.0, 2), constant(2.0, 2)});
  EXPECT_DOUBLE_EQ(w.weights[2], 0.5);
}

TEST(WeightKinds, ParseAndName) {
  for (auto k : {WeightKind::kGlobal, WeightKind::kLocalExact, WeightKind::kLocalSampled}) {
    EXPECT_EQ(parse_weight_kind(weight_kind_name(k)), k);
  }
  EXPECT_THROW(parse_weight_kind("bogus"), ConfigError);
}

// Mean over papers (with at least one author or term) of the author share.
double author_share_oracle(const testing::RandomHin& h) {
  const auto& pa = h.adj("P", "A");
  const auto& pt = h.adj("P", "T");
  double sum = 0.0;
  int eligible = 0;
  for (Eigen::Index p = 0; p < pa.rows(); ++p) {
    double a = pa.row(p).sum(), t = pt.row(p).sum();
    if (a + t == 0.0) continue;
    ++eligible;
    sum += a / (a + t);
  }
  return sum / eligible;
}

const testing::EdgeList kBibSchema{{"P", "V"}, {"P", "A"}, {"P", "T"}};

TEST(EdgeFrequencies, ExactMatchesPerObjectShare) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 8, 0.4);
    const auto& g = h.graph;
    auto f = edge_frequencies(g, g.type("P"), {g.type("A"), g.type("T")},
                              WeightStrategy{WeightKind::kLocalExact});
    double want = author_share_oracle(h);
    EXPECT_NEAR(f[0], want, 1e-12);
    EXPECT_NEAR(f[0] + f[1], 1.0, 1e-12);
  }
}

TEST(EdgeFrequencies, UniformDegreesGiveLinkRatio) {
  // Every paper has one author and three terms.
  testing::NodeList nodes;
  testing::EdgeList edges;
  for (int p = 0; p < 4; ++p) {
    auto id = "p" + std::to_string(p);
    nodes.emplace_back(id, "P");
  }
  for (int i = 0; i < 4; ++i) nodes.emplace_back("a" + std::to_string(i), "A");
  for (int i = 0; i < 3; ++i) nodes.emplace_back("t" + std::to_string(i), "T");
  for (int p = 0; p < 4; ++p) {
    edges.emplace_back("p" + std::to_string(p), "a" + std::to_string(p));
    for (int t = 0; t < 3; ++t) edges.emplace_back("p" + std::to_string(p), "t" + std::to_string(t));
  }
  auto g = testing::make_graph(nodes, edges);
  auto f = edge_frequencies(g, g.type("P"), {g.type("A"), g.type("T")},
                            WeightStrategy{WeightKind::kLocalExact});
  EXPECT_DOUBLE_EQ(f[0], 0.25);
  EXPECT_DOUBLE_EQ(f[1], 0.75);
}

TEST(EdgeFrequencies, SampledConvergesToExact) {
  std::mt19937_64 rng(9);
  auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 12, 0.3);
  const auto& g = h.graph;
  std::vector<ObjectType> kids{g.type("A"), g.type("T")};
  double p = edge_frequencies(g, g.type("P"), kids, WeightStrategy{WeightKind::kLocalExact})[0];
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    WeightStrategy s{WeightKind::kLocalSampled, n, 42};
    auto f = edge_frequencies(g, g.type("P"), kids, s);
    EXPECT_LE(std::abs(f[0] - p), 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(n)))
        << "N=" << n;
    EXPECT_EQ(f, edge_frequencies(g, g.type("P"), kids, s));  // reproducible
  }
}

TEST(EdgeFrequencies, NoEligibleObjects) {
  auto g = testing::make_graph({{"p", "P"}, {"a", "A"}, {"v", "V"}}, {{"p", "v"}});
  EXPECT_THROW(edge_frequencies(g, g.type("P"), {g.type("A")},
                                WeightStrategy{WeightKind::kLocalExact}),
               DataError);
}

TEST(LocalWeights, ProductAlongPath) {
  std::mt19937_64 rng(10);
  auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 8, 0.5);
  auto schema = schema_of(h.graph);
  auto list = decomp_rms(schema, schema.type("V"));
  auto w = local_weights(h.graph, list, WeightStrategy{WeightKind::kLocalExact});
  // V -> P has a single child, so the meta-path carries weight 1 before
  // normalization and the meta-trees carry the author / term shares.
  double fa = author_share_oracle(h);
  ASSERT_EQ(w.weights.size(), 3u);
  EXPECT_NEAR(w.weights[0], 0.5, 1e-12);
  EXPECT_NEAR(w.weights[1], fa / 2.0, 1e-12);
  EXPECT_NEAR(w.weights[2], (1.0 - fa) / 2.0, 1e-12);
  EXPECT_THROW(local_weights(h.graph, list, WeightStrategy{WeightKind::kGlobal}), ConfigError);
}

}  // namespace
}  // namespace rmss
