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

#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "revgraph/llm/prompts.h"

namespace revgraph::llm {
namespace {

using ::testing::ElementsAre;

TEST(EvaluateTest, HandComputedThreeClassMatrix) {
  const std::vector<std::string> labels = {"A", "B", "C"};
  const std::vector<std::string> gold = {"A", "A", "A", "B", "B", "C", "C", "C", "C"};
  const std::vector<std::optional<std::string>> predictions = {
      "A", "A", "B", "B", "C", "C", "C", "A", std::nullopt};
  auto result = Evaluate(predictions, gold, labels);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->n, 9);
  EXPECT_THAT(result->counts[0], ElementsAre(2, 1, 0, 0));
  EXPECT_THAT(result->counts[1], ElementsAre(0, 1, 1, 0));
  EXPECT_THAT(result->counts[2], ElementsAre(1, 0, 2, 1));
  EXPECT_DOUBLE_EQ(result->accuracy, 5.0 / 9);
  EXPECT_DOUBLE_EQ(result->per_label["A"].precision, 2.0 / 3);
  EXPECT_DOUBLE_EQ(result->per_label["B"].f1, 0.5);
  EXPECT_DOUBLE_EQ(result->per_label["C"].recall, 0.5);
  EXPECT_DOUBLE_EQ(result->per_label["C"].f1, 4.0 / 7);
  EXPECT_EQ(result->per_label["C"].support, 4);
  EXPECT_DOUBLE_EQ(result->macro_f1, 73.0 / 126);
  EXPECT_DOUBLE_EQ(result->percent[2][3], 25.0);
  EXPECT_DOUBLE_EQ(result->percent[1][1], 50.0);

  const nlohmann::json j = EvalResultToJson(*result);
  EXPECT_EQ(j["columns"].back(), kUnparsed);
  EXPECT_EQ(j["confusion_counts"][2][3], 1);
}

TEST(EvaluateTest, PredictionOutsideLabelSetCountsAsUnparsed) {
  const std::vector<std::string> labels = {"Yes", "No"};
  const std::vector<std::string> gold = {"Yes", "No"};
  const std::vector<std::optional<std::string>> predictions = {"Maybe", "No"};
  auto result = Evaluate(predictions, gold, labels);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->counts[0][2], 1);
  EXPECT_DOUBLE_EQ(result->accuracy, 0.5);
  EXPECT_DOUBLE_EQ(result->per_label["Yes"].precision, 0.0);
}

TEST(EvaluateTest, RejectsBadInput) {
  const std::vector<std::string> labels = {"A", "B"};
  const std::vector<std::string> gold = {"A"};
  const std::vector<std::string> unknown_gold = {"Z"};
  const std::vector<std::optional<std::string>> one = {"A"};
  const std::vector<std::optional<std::string>> two = {"A", "B"};
  EXPECT_FALSE(Evaluate(two, gold, labels).ok());
  EXPECT_FALSE(Evaluate(one, unknown_gold, labels).ok());
  EXPECT_FALSE(Evaluate({}, {}, labels).ok());
  const std::vector<std::string> duplicated = {"A", "A"};
  EXPECT_FALSE(Evaluate(one, gold, duplicated).ok());
}

TEST(EvaluateTest, UniformRandomIntentBaseline) {
  const std::vector<std::string> labels = TaskLabels(Task::kIntent);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
  std::vector<std::string> gold;
  std::vector<std::optional<std::string>> predictions;
  for (int i = 0; i < 5000; ++i) {
    gold.push_back(labels[pick(rng)]);
    predictions.push_back(labels[pick(rng)]);
  }
  auto result = Evaluate(predictions, gold, labels);
  ASSERT_TRUE(result.ok());
  EXPECT_NEAR(result->accuracy, 0.20, 0.03);
}

}  // namespace
}  // namespace revgraph::llm
