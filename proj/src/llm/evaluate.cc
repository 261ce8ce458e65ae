// Copyright 2026 The Revgraph Authors.
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

#include "revgraph/llm/evaluate.h"

#include <set>

#include "absl/strings/str_cat.h"

namespace revgraph::llm {

absl::StatusOr<EvalResult> Evaluate(std::span<const std::optional<std::string>> predictions,
                                    std::span<const std::string> gold,
                                    std::span<const std::string> labels) {
  if (gold.empty()) return absl::InvalidArgumentError("nothing to evaluate");
  if (predictions.size() != gold.size()) {
    return absl::InvalidArgumentError(absl::StrCat(predictions.size(), " predictions for ",
                                                   gold.size(), " gold labels"));
  }
  if (labels.empty()) return absl::InvalidArgumentError("empty label set");
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate label '", labels[i], "'"));
    }
  }
  const size_t k = labels.size();
  EvalResult result;
  result.labels.assign(labels.begin(), labels.end());
  result.n = static_cast<int>(gold.size());
  result.counts.assign(k, std::vector<int>(k + 1, 0));
  for (size_t i = 0; i < gold.size(); ++i) {
    auto row = index.find(gold[i]);
    if (row == index.end()) {
      return absl::InvalidArgumentError(absl::StrCat("gold label '", gold[i], "' of item ", i,
                                                     " is not in the label set"));
    }
    size_t column = k;
    if (predictions[i]) {
      auto it = index.find(*predictions[i]);
      if (it != index.end()) column = it->second;
    }
    ++result.counts[row->second][column];
  }

  int correct = 0;
  for (size_t c = 0; c < k; ++c) correct += result.counts[c][c];
  result.accuracy = static_cast<double>(correct) / result.n;

  double f1_sum = 0;
  for (size_t c = 0; c < k; ++c) {
    int row_total = 0;
    int column_total = 0;
    for (size_t j = 0; j <= k; ++j) row_total += result.counts[c][j];
    for (size_t r = 0; r < k; ++r) column_total += result.counts[r][c];
    const int tp = result.counts[c][c];
    LabelScores s;
    s.support = row_total;
    s.precision = column_total == 0 ? 0.0 : static_cast<double>(tp) / column_total;
    s.recall = row_total == 0 ? 0.0 : static_cast<double>(tp) / row_total;
    s.f1 = s.precision + s.recall == 0 ? 0.0
                                       : 2 * s.precision * s.recall / (s.precision + s.recall);
    f1_sum += s.f1;
    result.per_label[labels[c]] = s;
  }
  result.macro_f1 = f1_sum / k;

  result.percent.assign(k, std::vector<double>(k + 1, 0.0));
  for (size_t r = 0; r < k; ++r) {
    const int total = result.per_label[labels[r]].support;
    if (total == 0) continue;
    for (size_t j = 0; j <= k; ++j) result.percent[r][j] = 100.0 * result.counts[r][j] / total;
  }
  return result;
}

nlohmann::json EvalResultToJson(const EvalResult& result) {
  nlohmann::json per_label = nlohmann::json::object();
  for (const auto& [label, s] : result.per_label) {
    per_label[label] = {{"precision", s.precision},
                        {"recall", s.recall},
                        {"f1", s.f1},
                        {"support", s.support}};
  }
  std::vector<std::string> columns = result.labels;
  columns.push_back(kUnparsed);
  return {{"n", result.n},
          {"accuracy", result.accuracy},
          {"macro_f1", result.macro_f1},
          {"labels", result.labels},
          {"columns", columns},
          {"per_label", per_label},
          {"confusion_counts", result.counts},
          {"confusion_percent", result.percent}};
}

}  // namespace revgraph::llm
