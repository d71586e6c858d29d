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

#include <random>

#include <gtest/gtest.h>

#include "rmss/errors.h"
#include "rmss/kernels.h"
#include "test_util.h"

namespace rmss {
namespace {

const testing::EdgeList kBibSchema{{"P", "V"}, {"P", "A"}, {"P", "T"}};

// Instances of A,P,(V|T),P,A between two authors, by nested enumeration.
double count_apvtpa(const testing::RandomHin& h, Eigen::Index a1, Eigen::Index a2) {
  const auto& ap = h.adj("A", "P");
  const auto& pv = h.adj("P", "V");
  const auto& pt = h.adj("P", "T");
  double n = 0.0;
  for (Eigen::Index p1 = 0; p1 < ap.cols(); ++p1) {
    if (ap(a1, p1) == 0.0) continue;
    for (Eigen::Index v = 0; v < pv.cols(); ++v) {
      if (pv(p1, v) == 0.0) continue;
      for (Eigen::Index t = 0; t < pt.cols(); ++t) {
        if (pt(p1, t) == 0.0) continue;
        for (Eigen::Index p2 = 0; p2 < ap.cols(); ++p2) {
          if (pv(p2, v) != 0.0 && pt(p2, t) != 0.0 && ap(a2, p2) != 0.0) n += 1.0;
        }
      }
    }
  }
  return n;
}

TEST(MetaStructure, ParseAndFormat) {
  std::mt19937_64 rng(1);
  auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 3, 0.5);
  auto schema = schema_of(h.graph);
  auto s = parse_metastructure("A,P,(V|T),P,A", schema);
  ASSERT_EQ(s.layers.size(), 5u);
  EXPECT_EQ(s.layers[2].size(), 2u);
  EXPECT_FALSE(s.is_path());
  EXPECT_EQ(s.to_string(), "A,P,(V|T),P,A");
  EXPECT_THROW(s.as_path(), ConfigError);
  EXPECT_EQ(parse_metastructure("V,P,A", schema).as_path().to_string(), "V,P,A");
  for (const auto* bad : {"(A|V),P,A", "A,P,(V|T)", "A,(P", "A,V", "A", "A,P,(V|V),P,A",
                          "A,P,(V|T),A", "A,P,(V|T)x,P,A"}) {
    EXPECT_THROW(parse_metastructure(bad, schema), ConfigError) << bad;
  }
}

TEST(MetaStructure, PathMatchesMetaPath) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 6, 0.4);
    auto schema = schema_of(h.graph);
    auto s = parse_metastructure("V,P,A,P,V", schema);
    EXPECT_EQ(DenseMatrix(metastructure_commuting(h.graph, schema, s)),
              DenseMatrix(metapath_commuting(h.graph, s.as_path())));
  }
}

TEST(MetaStructure, CountsInstancesByEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 5, 0.45);
    auto schema = schema_of(h.graph);
    auto s = parse_metastructure("A,P,(V|T),P,A", schema);
    DenseMatrix m(metastructure_commuting(h.graph, schema, s));
    ASSERT_EQ(m.rows(), static_cast<Eigen::Index>(h.objects["A"].size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        EXPECT_EQ(m(i, j), count_apvtpa(h, i, j));
      }
    }
    EXPECT_TRUE(m.isApprox(m.transpose()) || m.isZero());
  }
}

TEST(MetaStructure, LayerTuplesDecodeRowMajor) {
  auto g = testing::make_graph({{"p", "P"}, {"v0", "V"}, {"v1", "V"}, {"t0", "T"},
                                {"t1", "T"}, {"t2", "T"}},
                               {{"p", "v0"}, {"p", "t2"}});
  auto lt = layer_tuples(g, {g.type("V"), g.type("T")});
  EXPECT_EQ(lt.size, 6u);
  EXPECT_EQ(lt.decode(0), (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(lt.decode(2), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(lt.decode(4), (std::vector<std::size_t>{1, 1}));
  auto schema = schema_of(g);
  DenseMatrix rel(layer_relation(g, schema, {g.type("P")}, {g.type("V"), g.type("T")}));
  ASSERT_EQ(rel.cols(), 6);
  EXPECT_EQ(rel.sum(), 1.0);
  EXPECT_EQ(rel(0, 2), 1.0);  // (v0, t2)
}

TEST(MetaStructure, MissingRelationGivesZero) {
  testing::EdgeList declared{{"A", "P"}, {"P", "V"}, {"P", "T"}};
  auto g2 = testing::make_graph({{"a", "A"}, {"p", "P"}, {"v", "V"}, {"t", "T"}},
                                {{"a", "p"}, {"p", "v"}}, &declared);
  auto schema = schema_of(g2);
  auto s = parse_metastructure("A,P,(V|T),P,A", schema);
  auto m = metastructure_commuting(g2, schema, s);
  EXPECT_EQ(m.nonZeros(), 0);
  EXPECT_EQ(m.rows(), 1);
}

TEST(MetaStructure, CartesianCap) {
  std::mt19937_64 rng(4);
  auto h = testing::random_hin(rng, {"V", "P", "A", "T"}, kBibSchema, 6, 0.5);
  auto schema = schema_of(h.graph);
  auto s = parse_metastructure("A,P,(V|T),P,A", schema);
  EXPECT_THROW(metastructure_commuting(h.graph, schema, s, 3), DataError);
  EXPECT_NO_THROW(metastructure_commuting(h.graph, schema, s, 1000000));
}

}  // namespace
}  // namespace rmss
