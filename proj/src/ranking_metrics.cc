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
#include <functional>
#include <map>
#include <unordered_set>

#include "rmss/errors.h"
#include "rmss/eval.h"

namespace rmss {

namespace {

double gain(int grade, GainForm form) {
  return form == GainForm::kPrinted ? std::pow(2.0, grade - 1) : std::pow(2.0, grade) - 1.0;
}

double dcg(const std::vector<int>& grades, GainForm form) {
  double sum = 0.0;
  for (std::size_t j = 1; j <= grades.size(); ++j) {
    sum += gain(grades[j - 1], form) / std::log(1.0 + static_cast<double>(j));
  }
  return sum;
}

double entropy(const std::map<int, std::size_t>& counts, double n) {
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double ndcg(const std::vector<std::string>& ranking, const RelevanceJudgment& judgments,
            GainForm form) {
  bool any_positive = false;
  for (const auto& [id, grade] : judgments) {
    if (grade < 0 || grade > 3) {
      throw DataError("grade for '" + id + "' outside {0,1,2,3}");
    }
    any_positive = any_positive || grade > 0;
  }
  if (!any_positive) throw DataError("all relevance grades are zero; iDCG undefined");

  std::unordered_set<std::string> seen;
  std::vector<int> grades;
  for (const auto& id : ranking) {
    if (!seen.insert(id).second) throw DataError("object '" + id + "' ranked twice");
    auto it = judgments.find(id);
    grades.push_back(it == judgments.end() ? 0 : it->second);
  }
  for (const auto& [id, grade] : judgments) {
    if (!seen.count(id)) throw DataError("judged object '" + id + "' missing from ranking");
  }
  auto ideal = grades;
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  return dcg(grades, form) / dcg(ideal, form);
}

double nmi(const Partition& clusters, const Partition& classes) {
  if (clusters.size() != classes.size()) {
    throw DataError("partitions cover different numbers of objects");
  }
  if (clusters.empty()) throw DataError("partitions are empty");
  const double n = static_cast<double>(clusters.size());
  std::map<int, std::size_t> a, b;
  std::map<std::pair<int, int>, std::size_t> joint;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    ++a[clusters[i]];
    ++b[classes[i]];
    ++joint[{clusters[i], classes[i]}];
  }
  double ha = entropy(a, n);
  double hb = entropy(b, n);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    double nc = static_cast<double>(c);
    mi += nc / n *
          std::log(n * nc / (static_cast<double>(a[key.first]) * static_cast<double>(b[key.second])));
  }
  double v = 2.0 * mi / (ha + hb);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace rmss
