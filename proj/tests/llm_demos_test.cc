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

#include "revgraph/llm/demos.h"

#include <cmath>
#include <limits>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "revgraph/llm/prompts.h"

namespace revgraph::llm {
namespace {

using ::testing::ElementsAre;

std::vector<std::string> Ids(const std::vector<DemoItem>& demos) {
  std::vector<std::string> ids;
  for (const DemoItem& d : demos) ids.push_back(d.id);
  return ids;
}

double RefCosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

class DemoSelectionTest : public ::testing::Test {
 protected:
  DemoSelectionTest()
      : embedder_({{"a", {1, 0}},
                   {"b", {0, 1}},
                   {"c", {1, 1}},
                   {"e", {1, 2}},
                   {"s1", {1, 0}},
                   {"s2", {0, 1}}}) {}

  DemoItem Item(std::string id, std::string old_text, std::string new_text,
                std::string label = "Clarity") {
    return {std::move(id), std::move(old_text), std::move(new_text), "s1", "s2",
            std::move(label), "because"};
  }

  TableEmbedder embedder_;
};

TEST_F(DemoSelectionTest, DiffAndCatScoresMatchHandComputedCosines) {
  const DemoItem query = Item("q", "a", "b");
  const std::vector<DemoItem> pool = {Item("p1", "a", "b"), Item("p2", "b", "a"),
                                      Item("p3", "c", "e")};
  auto diff = DemoScores(DemoMethod::kDiff, query, pool, embedder_);
  ASSERT_TRUE(diff.ok()) << diff.status();
  // Differences new - old: (-1,1), (1,-1), (0,1).
  EXPECT_NEAR((*diff)[0], 1.0, 1e-12);
  EXPECT_NEAR((*diff)[1], -1.0, 1e-12);
  EXPECT_NEAR((*diff)[2], RefCosine({-1, 1}, {0, 1}), 1e-12);

  auto cat = DemoScores(DemoMethod::kCat, query, pool, embedder_);
  ASSERT_TRUE(cat.ok()) << cat.status();
  EXPECT_NEAR((*cat)[0], 1.0, 1e-12);
  EXPECT_NEAR((*cat)[1], 0.0, 1e-12);
  EXPECT_NEAR((*cat)[2], RefCosine({0, 1, 1, 0}, {1, 2, 1, 1}), 1e-12);
}

TEST_F(DemoSelectionTest, LocRanksBySectionTitles) {
  DemoItem query = Item("q", "a", "b");
  DemoItem near = Item("near", "b", "a");
  DemoItem far = Item("far", "a", "b");
  far.old_section = "s2";
  far.new_section = "s1";
  const std::vector<DemoItem> pool = {far, near};
  DemoSelectorConfig config{DemoMethod::kLoc, 1};
  auto selection = SelectDemos(config, query, pool, {}, embedder_);
  ASSERT_TRUE(selection.ok()) << selection.status();
  EXPECT_THAT(Ids(selection->demos), ElementsAre("near"));
}

TEST_F(DemoSelectionTest, ZeroDifferenceFallsBackToConcatenation) {
  const DemoItem query = Item("q", "a", "a");
  const std::vector<DemoItem> pool = {Item("p1", "b", "b"), Item("p2", "a", "a")};
  bool fell_back = false;
  auto scores = DemoScores(DemoMethod::kDiff, query, pool, embedder_, &fell_back);
  ASSERT_TRUE(scores.ok());
  EXPECT_TRUE(fell_back);
  EXPECT_NEAR((*scores)[0], 0.0, 1e-12);
  EXPECT_NEAR((*scores)[1], 1.0, 1e-12);

  auto selection = SelectDemos({DemoMethod::kDiff, 1}, query, pool, {}, embedder_);
  ASSERT_TRUE(selection.ok());
  EXPECT_TRUE(selection->fell_back_to_cat);
  EXPECT_THAT(Ids(selection->demos), ElementsAre("p2"));
}

TEST_F(DemoSelectionTest, OneSidedItemsOnlyMatchOneSidedDemos) {
  const DemoItem added = Item("q", "", "b", "Claim");
  const std::vector<DemoItem> pool = {Item("both", "a", "b"), Item("add", "", "a")};
  auto scores = DemoScores(DemoMethod::kDiff, added, pool, embedder_);
  ASSERT_TRUE(scores.ok());
  EXPECT_EQ((*scores)[0], -std::numeric_limits<double>::infinity());
  EXPECT_NEAR((*scores)[1], 0.0, 1e-12);
}

TEST_F(DemoSelectionTest, OrderingPlacesDefaultsFirstOrLast) {
  const DemoItem query = Item("q", "a", "b");
  const std::vector<DemoItem> pool = {Item("p2", "b", "a"), Item("p3", "c", "e"),
                                      Item("p1", "a", "b")};
  const std::vector<DemoItem> defaults = {Item("d1", "a", "b"), Item("d2", "b", "a")};
  DemoSelectorConfig config{DemoMethod::kDiff, 2, true, DemoOrdering::kDefThenDyn};
  auto first = SelectDemos(config, query, pool, defaults, embedder_);
  ASSERT_TRUE(first.ok()) << first.status();
  EXPECT_THAT(Ids(first->demos), ElementsAre("d1", "d2", "p1", "p3"));

  config.ordering = DemoOrdering::kDynThenDef;
  auto last = SelectDemos(config, query, pool, defaults, embedder_);
  ASSERT_TRUE(last.ok());
  EXPECT_THAT(Ids(last->demos), ElementsAre("p1", "p3", "d1", "d2"));

  config.include_defaults = false;
  auto dynamic_only = SelectDemos(config, query, pool, defaults, embedder_);
  ASSERT_TRUE(dynamic_only.ok());
  EXPECT_THAT(Ids(dynamic_only->demos), ElementsAre("p1", "p3"));

  auto static_only = SelectDemos({DemoMethod::kDef}, query, pool, defaults, embedder_);
  ASSERT_TRUE(static_only.ok());
  EXPECT_THAT(Ids(static_only->demos), ElementsAre("d1", "d2"));
}

TEST_F(DemoSelectionTest, RejectsBadConfigurations) {
  const DemoItem query = Item("q", "a", "b");
  const std::vector<DemoItem> pool = {Item("p1", "a", "b")};
  EXPECT_FALSE(SelectDemos({DemoMethod::kDef}, query, pool, {}, embedder_).ok());
  EXPECT_FALSE(SelectDemos({DemoMethod::kCat, -1}, query, pool, {}, embedder_).ok());
  EXPECT_FALSE(SelectDemos({DemoMethod::kCat, 1}, query, {}, {}, embedder_).ok());

  DemoItem silent = Item("p1", "a", "b");
  silent.reason.clear();
  const std::vector<DemoItem> no_reason = {silent};
  EXPECT_FALSE(SelectDemos({DemoMethod::kCat, 1}, query, no_reason, {}, embedder_).ok());
  DemoSelectorConfig none{DemoMethod::kCat, 1};
  none.rationale_order = RationaleOrder::kNone;
  EXPECT_TRUE(SelectDemos(none, query, no_reason, {}, embedder_).ok());
}

TEST(MajorityLabelTest, TiesGoToTheHighestRankedLabel) {
  auto ranked = [](std::vector<std::string> labels) {
    std::vector<DemoItem> items;
    for (auto& l : labels) items.push_back({"", "x", "y", "", "", l, ""});
    return items;
  };
  EXPECT_EQ(*MajorityLabel(ranked({"B", "A", "A"})), "A");
  EXPECT_EQ(*MajorityLabel(ranked({"A", "B", "B", "A", "C"})), "A");
  EXPECT_EQ(*MajorityLabel(ranked({"C"})), "C");
  EXPECT_FALSE(MajorityLabel({}).ok());
}

TEST(EnumNamesTest, RoundTrip) {
  for (DemoMethod m : {DemoMethod::kCat, DemoMethod::kDiff, DemoMethod::kLoc, DemoMethod::kDef}) {
    EXPECT_EQ(ParseDemoMethod(ToString(m)), m);
  }
  for (RationaleOrder r :
       {RationaleOrder::kLabelFirst, RationaleOrder::kReasonFirst, RationaleOrder::kNone}) {
    EXPECT_EQ(ParseRationaleOrder(ToString(r)), r);
  }
  EXPECT_EQ(ParseDemoOrdering("dyn_then_def"), DemoOrdering::kDynThenDef);
  EXPECT_FALSE(ParseDemoMethod("knn").has_value());
}

TEST(DemoFileTest, ShippedFilesLoadWithTaskLabels) {
  for (Task task : kAllTasks) {
    auto demos = LoadDemoFile(DefaultDemoPath(task));
    ASSERT_TRUE(demos.ok()) << demos.status();
    ASSERT_FALSE(demos->empty());
    const std::vector<std::string> labels = TaskLabels(task);
    for (const DemoItem& d : *demos) {
      EXPECT_NE(std::find(labels.begin(), labels.end(), d.label), labels.end())
          << ToString(task) << " " << d.id;
      EXPECT_FALSE(d.reason.empty());
    }
  }
  auto intent = LoadDemoFile(DefaultDemoPath(Task::kIntent));
  EXPECT_EQ(intent->front().label, "Fact/Evidence");
}

}  // namespace
}  // namespace revgraph::llm
