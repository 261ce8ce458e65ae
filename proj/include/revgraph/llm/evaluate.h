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


// Scoring label predictions against gold labels.

#ifndef REVGRAPH_LLM_EVALUATE_H_
#define REVGRAPH_LLM_EVALUATE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace revgraph::llm {

inline constexpr char kUnparsed[] = "unparsed";

struct LabelScores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  int support = 0;
};

struct EvalResult {
  std::vector<std::string> labels;  // matrix rows; columns add kUnparsed
  int n = 0;
  double accuracy = 0;
  double macro_f1 = 0;
  std::map<std::string, LabelScores> per_label;
  std::vector<std::vector<int>> counts;
  std::vector<std::vector<double>> percent;  // row-normalized; empty rows stay 0
};

// A missing prediction, or one outside `labels`, lands in the unparsed
// column and counts as wrong. Undefined precision or recall is 0.
absl::StatusOr<EvalResult> Evaluate(std::span<const std::optional<std::string>> predictions,
                                    std::span<const std::string> gold,
                                    std::span<const std::string> labels);

nlohmann::json EvalResultToJson(const EvalResult& result);

}  // namespace revgraph::llm

#endif  // REVGRAPH_LLM_EVALUATE_H_
