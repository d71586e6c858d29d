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
#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "rmss/errors.h"
#include "rmss/eval.h"

namespace rmss {
namespace {

TEST(Ndcg, PerfectRankingIsOne) {
  RelevanceJudgment j{{"a", 3}, {"b", 2}, {"c", 0}};
  EXPECT_DOUBLE_EQ(ndcg({"a", "b", "c"}, j), 1.0);
  EXPECT_DOUBLE_EQ(ndcg({"a", "b", "c"}, j, GainForm::kStandard), 1.0);
}

TEST(Ndcg, SwappedPair) {
  RelevanceJudgment j{{"a", 3}, {"b", 2}};
  const double l2 = std::log(2.0), l3 = std::log(3.0);
  EXPECT_NEAR(ndcg({"b", "a"}, j), (2 / l2 + 4 / l3) / (4 / l2 + 2 / l3), 1e-15);
  EXPECT_NEAR(ndcg({"b", "a"}, j, GainForm::kStandard), (3 / l2 + 7 / l3) / (7 / l2 + 3 / l3),
              1e-15);
}

TEST(Ndcg, UnjudgedCountAsZero) {
  RelevanceJudgment j{{"a", 1}};
  const double l2 = std::log(2.0), l3 = std::log(3.0), l4 = std::log(4.0);
  // printed gain of grade 0 is 1/2
  double dcg = 0.5 / l2 + 0.5 / l3 + 1 / l4;
  double idcg = 1 / l2 + 0.5 / l3 + 0.5 / l4;
  EXPECT_NEAR(ndcg({"x", "y", "a"}, j), dcg / idcg, 1e-15);
  EXPECT_NEAR(ndcg({"x", "y", "a"}, j, GainForm::kStandard), (1 / l4) / (1 / l2), 1e-15);
}

TEST(Ndcg, Errors) {
  EXPECT_THROW(ndcg({"a"}, {{"a", 0}}), DataError);
  EXPECT_THROW(ndcg({"a"}, {{"a", 4}}), DataError);
  EXPECT_THROW(ndcg({"a"}, {{"a", 2}, {"b", 1}}), DataError);
  EXPECT_THROW(ndcg({"a", "a"}, {{"a", 2}}), DataError);
}

// Mutual-information oracle straight from the contingency table.
double nmi_oracle(const Partition& x, const Partition& y) {
  std::map<int, double> px, py;
  std::map<std::pair<int, int>, double> pxy;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[x[i]] += 1 / n;
    py[y[i]] += 1 / n;
    pxy[{x[i], y[i]}] += 1 / n;
  }
  double hx = 0, hy = 0, mi = 0;
  for (auto [k, p] : px) hx -= p * std::log(p);
  for (auto [k, p] : py) hy -= p * std::log(p);
  for (auto [k, p] : pxy) mi += p * std::log(p / (px[k.first] * py[k.second]));
  return 2 * mi / (hx + hy);
}

TEST(Nmi, KnownValues) {
  EXPECT_DOUBLE_EQ(nmi({0, 0, 1, 1}, {0, 0, 1, 1}), 1.0);
  EXPECT_NEAR(nmi({5, 5, 2, 2}, {0, 0, 1, 1}), 1.0, 1e-15);
  EXPECT_NEAR(nmi({0, 0, 1, 1}, {0, 1, 0, 1}), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(nmi({0, 0, 0}, {1, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(nmi({0, 0, 0, 0}, {0, 0, 1, 1}), 0.0);
  EXPECT_THROW(nmi({0}, {0, 1}), DataError);
  EXPECT_THROW(nmi({}, {}), DataError);
}

TEST(Nmi, MatchesOracleAndIsSymmetric) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, 40)(rng);
    std::uniform_int_distribution<int> lab(0, 3);
    Partition a(n), b(n);
    for (auto& v : a) v = lab(rng);
    for (auto& v : b) v = lab(rng);
    bool ha = std::any_of(a.begin(), a.end(), [&](int v) { return v != a[0]; });
    bool hb = std::any_of(b.begin(), b.end(), [&](int v) { return v != b[0]; });
    if (!ha && !hb) continue;
    double v = nmi(a, b);
    EXPECT_NEAR(v, std::clamp(nmi_oracle(a, b), 0.0, 1.0), 1e-12);
    EXPECT_NEAR(v, nmi(b, a), 1e-12);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

DenseMatrix blobs(std::mt19937_64& rng, std::size_t per, Partition* truth) {
  std::normal_distribution<double> noise(0.0, 0.1);
  DenseMatrix x(static_cast<Eigen::Index>(3 * per), 2);
  const double cx[3] = {0, 10, 0}, cy[3] = {0, 0, 10};
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < per; ++i) {
      auto r = static_cast<Eigen::Index>(c * per + i);
      x(r, 0) = cx[c] + noise(rng);
      x(r, 1) = cy[c] + noise(rng);
      truth->push_back(static_cast<int>(c));
    }
  }
  return x;
}

TEST(KMeans, RecoversSeparatedBlobs) {
  std::mt19937_64 rng(15);
  Partition truth;
  auto x = blobs(rng, 20, &truth);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_DOUBLE_EQ(nmi(kmeans_cluster(x, 3, seed), truth), 1.0);
  }
}

TEST(KMeans, ObjectiveNonIncreasingAndDeterministic) {
  std::mt19937_64 rng(16);
  DenseMatrix x = DenseMatrix::Random(60, 4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto r = kmeans(x, 4, seed);
    ASSERT_FALSE(r.objective.empty());
    EXPECT_LE(r.iterations, 300u);
    for (std::size_t i = 1; i < r.objective.size(); ++i) {
      EXPECT_LE(r.objective[i], r.objective[i - 1] + 1e-12);
    }
    EXPECT_EQ(r.labels, kmeans(x, 4, seed).labels);
  }
}

TEST(KMeans, OneClusterPerPoint) {
  DenseMatrix x(4, 1);
  x << 0, 1, 2, 3;
  auto r = kmeans(x, 4, 1);
  EXPECT_DOUBLE_EQ(r.objective.back(), 0.0);
  std::set<int> distinct(r.labels.begin(), r.labels.end());
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(KMeans, Errors) {
  DenseMatrix x(3, 1);
  x << 0, 1, 2;
  EXPECT_THROW(kmeans(x, 0, 1), ConfigError);
  EXPECT_THROW(kmeans(x, 4, 1), ConfigError);
  EXPECT_THROW(kmeans(DenseMatrix(0, 1), 1, 1), ConfigError);
}

}  // namespace
}  // namespace rmss
