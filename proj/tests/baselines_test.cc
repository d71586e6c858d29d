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
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "rmss/baselines.h"
#include "rmss/errors.h"
#include "test_util.h"

namespace rmss {
namespace {

const testing::EdgeList kBibSchema{{"P", "V"}, {"P", "A"}, {"P", "T"}};

TypedGraph toy_venues() {
  return load_hin_files(testing::fixture("toy_venues/nodes.tsv"), testing::fixture("toy_venues/edges.tsv"),
                        testing::fixture("toy_venues/schema.tsv"));
}

TEST(PathSim, Properties) {
  auto g = toy_venues();
  auto schema = schema_of(g);
  auto p = parse_metapath("A,P,V,P,A", schema);
  auto m = pathsim_matrix(g, p);
  EXPECT_TRUE(m.isApprox(m.transpose()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    EXPECT_DOUBLE_EQ(m(i, i), 1.0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      EXPECT_GE(m(i, j), 0.0);
      EXPECT_LE(m(i, j), 1.0 + 1e-12);
      EXPECT_DOUBLE_EQ(m(i, j), pathsim(g, p, static_cast<std::size_t>(i),
                                        static_cast<std::size_t>(j)));
    }
  }
  EXPECT_THROW(pathsim_matrix(g, parse_metapath("A,P,V", schema)), ConfigError);
}

TEST(PathSim, HandComputed) {
  DenseMatrix c(3, 3);
  c << 4, 2, 0, 2, 2, 0, 0, 0, 0;
  auto m = pathsim_from_commuting(c.sparseView());
  EXPECT_DOUBLE_EQ(m(0, 1), 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(m(2, 2), 0.0);
  EXPECT_DOUBLE_EQ(m(0, 2), 0.0);
}

// Forward enumeration of walk probabilities: every path instance carries the
// product of 1/deg^alpha along its steps.
double bpcrw_oracle(const testing::RandomHin& h, const std::vector<std::string>& types,
                    Eigen::Index from, Eigen::Index target, double alpha) {
  std::function<double(std::size_t, Eigen::Index)> go = [&](std::size_t k, Eigen::Index o) {
    if (k + 1 == types.size()) return o == target ? 1.0 : 0.0;
    const auto& a = h.adj(types[k], types[k + 1]);
    double deg = a.row(o).sum();
    if (deg == 0.0) return 0.0;
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(o, j) != 0.0) s += go(k + 1, j);
    }
    return s / std::pow(deg, alpha);
  };
  return go(0, from);
}

TEST(Bpcrw, MatchesEnumerationOracle) {
  std::mt19937_64 rng(5);
  std::vector<std::string> types{"V", "P", "A", "P", "V"};
  for (int trial = 0; trial < 10; ++trial) {
    auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 5, 0.4);
    auto p = parse_metapath("V,P,A,P,V", schema_of(h.graph));
    for (double alpha : {0.0, 0.5, 1.0}) {
      auto m = bpcrw_matrix(h.graph, p, alpha);
      for (Eigen::Index s = 0; s < m.rows(); ++s) {
        for (Eigen::Index t = 0; t < m.cols(); ++t) {
          EXPECT_NEAR(m(s, t), bpcrw_oracle(h, types, s, t, alpha), 1e-12);
        }
      }
      auto col = bpcrw(h.graph, p, 1, alpha);
      EXPECT_LT((col - m.col(1)).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(Bpcrw, RandomWalkSumsToOne) {
  auto g = toy_venues();
  auto p = parse_metapath("V,P,A,P,V", schema_of(g));
  auto m = bpcrw_matrix(g, p, 1.0);
  for (Eigen::Index s = 0; s < m.rows(); ++s) EXPECT_NEAR(m.row(s).sum(), 1.0, 1e-12);
}

TEST(Bpcrw, Errors) {
  auto g = toy_venues();
  auto p = parse_metapath("V,P,A,P,V", schema_of(g));
  EXPECT_THROW(bpcrw(g, p, 0, -0.1), ConfigError);
  EXPECT_THROW(bpcrw(g, p, 99, 0.5), DataError);
}

TEST(Bscse, EqualsBpcrwOnPaths) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 5, 0.4);
    auto schema = schema_of(h.graph);
    auto s = parse_metastructure("V,P,T,P,V", schema);
    for (double alpha : {0.1, 0.5, 0.9}) {
      auto a = bscse_matrix(h.graph, schema, s, alpha);
      auto b = bpcrw_matrix(h.graph, s.as_path(), alpha);
      EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

// Expansion over layer instances of A,P,(V|T),P,A.
double bscse_oracle(const testing::RandomHin& h, Eigen::Index a1, Eigen::Index a2,
                    double alpha) {
  const auto& ap = h.adj("A", "P");
  const auto& pv = h.adj("P", "V");
  const auto& pt = h.adj("P", "T");
  auto scale = [&](double n) { return n == 0.0 ? 0.0 : 1.0 / std::pow(n, alpha); };
  // layer 3 (P) -> A
  auto from_p2 = [&](Eigen::Index p2) { return ap(a2, p2) * scale(ap.col(p2).sum()); };
  auto from_vt = [&](Eigen::Index v, Eigen::Index t) {
    double s = 0.0, n = 0.0;
    for (Eigen::Index p2 = 0; p2 < pv.rows(); ++p2) {
      if (pv(p2, v) != 0.0 && pt(p2, t) != 0.0) {
        n += 1.0;
        s += from_p2(p2);
      }
    }
    return s * scale(n);
  };
  auto from_p1 = [&](Eigen::Index p1) {
    double s = 0.0, n = 0.0;
    for (Eigen::Index v = 0; v < pv.cols(); ++v) {
      for (Eigen::Index t = 0; t < pt.cols(); ++t) {
        if (pv(p1, v) != 0.0 && pt(p1, t) != 0.0) {
          n += 1.0;
          s += from_vt(v, t);
        }
      }
    }
    return s * scale(n);
  };
  double s = 0.0, n = 0.0;
  for (Eigen::Index p1 = 0; p1 < ap.cols(); ++p1) {
    if (ap(a1, p1) != 0.0) {
      n += 1.0;
      s += from_p1(p1);
    }
  }
  return s * scale(n);
}

TEST(Bscse, MatchesExpansionOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 5, 0.45);
    auto schema = schema_of(h.graph);
    auto s = parse_metastructure("A,P,(V|T),P,A", schema);
    for (double alpha : {0.3, 1.0}) {
      auto m = bscse_matrix(h.graph, schema, s, alpha);
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          EXPECT_NEAR(m(i, j), bscse_oracle(h, i, j, alpha), 1e-12);
        }
      }
    }
  }
}

}  // namespace
}  // namespace rmss
