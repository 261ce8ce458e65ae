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

#include "revgraph/llm/prompts.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "prompt_fixtures.h"

namespace revgraph::llm {
namespace {

using ::testing::HasSubstr;

std::string ReadGolden(const std::string& name) {
  std::ifstream in(test_util::GoldenPath(name), std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Regenerates a golden file when REVGRAPH_UPDATE_GOLDENS is set.
void ExpectGolden(const std::string& name, const std::string& actual) {
  if (std::getenv("REVGRAPH_UPDATE_GOLDENS") != nullptr) {
    std::ofstream(test_util::GoldenPath(name), std::ios::binary) << actual;
    return;
  }
  EXPECT_EQ(actual, ReadGolden(name)) << name;
}

DemoItem Demo(std::string id, std::string old_text, std::string new_text, std::string label,
              std::string reason) {
  return {std::move(id), std::move(old_text), std::move(new_text), "", "", std::move(label),
          std::move(reason)};
}

TEST(PromptTest, TableFixtureIsByteExact) {
  absl::StatusOr<std::string> rendered = test_util::RenderTablePrompt();
  ASSERT_TRUE(rendered.ok()) << rendered.status();
  const std::string golden = ReadGolden("table_prompt.txt");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(*rendered, golden);
}

TEST(PromptTest, GoldenRenderingsForEveryCombination) {
  auto goldens = test_util::RenderGoldenPrompts();
  ASSERT_TRUE(goldens.ok()) << goldens.status();
  ASSERT_EQ(goldens->size(), 16u);
  for (const test_util::GoldenPrompt& g : *goldens) ExpectGolden(g.name, g.rendered);

  // Same inputs, same bytes.
  auto again = test_util::RenderGoldenPrompts();
  ASSERT_TRUE(again.ok());
  for (size_t i = 0; i < goldens->size(); ++i) {
    EXPECT_EQ((*again)[i].rendered, (*goldens)[i].rendered);
  }
}

TEST(PromptTest, ReasonFirstPutsReasonBeforeLabelInEveryDemo) {
  auto demos = LoadDemoFile(DefaultDemoPath(Task::kIntent));
  ASSERT_TRUE(demos.ok());
  const PromptBundle prompt =
      BuildPromptSkeleton(Task::kIntent, *demos, RationaleOrder::kReasonFirst);
  ASSERT_EQ(prompt.demonstrations.size(), demos->size());
  for (const std::string& demo : prompt.demonstrations) {
    EXPECT_LT(demo.find("\nREASON: "), demo.find("\nLABEL: ")) << demo;
  }
  EXPECT_THAT(prompt.task, HasSubstr("REASON:<your answer> LABEL:<your answer>."));
}

TEST(PromptTest, ZeroDemosLeavesSystemAndTask) {
  const DemoItem item = Demo("q", "a b", "a c", "", "");
  auto prompt = BuildPrompt(Task::kIntent, item, {}, {});
  ASSERT_TRUE(prompt.ok());
  EXPECT_TRUE(prompt->demonstrations.empty());
  EXPECT_EQ(prompt->Render(),
            absl::StrCat(prompt->system, "\n\n", prompt->task,
                         "\nThe old text is: a b\nThe new text is: a c"));
}

TEST(PromptTest, IntentPromptPicksVariantFromItemShape) {
  auto modify = BuildIntentPrompt(Demo("m", "a", "b", "", ""), {}, {});
  auto added = BuildIntentPrompt(Demo("a", "", "b", "", ""), {}, {});
  ASSERT_TRUE(modify.ok() && added.ok());
  EXPECT_THAT(modify->task, HasSubstr("Grammar, Clarity, Claim, Fact/Evidence and Other"));
  EXPECT_THAT(added->task, HasSubstr("Claim, Fact/Evidence and Other"));
  EXPECT_THAT(added->instance, HasSubstr("The added text is: b"));
}

TEST(PromptTest, RejectsMismatchedItems) {
  EXPECT_FALSE(BuildPrompt(Task::kIntent, Demo("x", "", "b", "", ""), {}, {}).ok());
  EXPECT_FALSE(BuildPrompt(Task::kIntentAddDelete, Demo("x", "a", "b", "", ""), {}, {}).ok());
  EXPECT_FALSE(BuildPrompt(Task::kRequest, Demo("x", "a", "b", "", ""), {}, {}).ok());
  const std::vector<DemoItem> no_reason = {Demo("d", "a", "b", "Grammar", "")};
  EXPECT_FALSE(BuildPrompt(Task::kIntent, Demo("x", "a", "b", "", ""), no_reason, {}).ok());
  EXPECT_TRUE(BuildPrompt(Task::kIntent, Demo("x", "a", "b", "", ""), no_reason,
                          {RationaleOrder::kNone, 0})
                  .ok());
}

TEST(PromptTest, OverBudgetReportsHowManyDemosToDrop) {
  auto demos = LoadDemoFile(DefaultDemoPath(Task::kIntent));
  ASSERT_TRUE(demos.ok());
  const DemoItem item = Demo("q", "a b", "a c", "", "");
  auto full = BuildPrompt(Task::kIntent, item, *demos, {});
  ASSERT_TRUE(full.ok());
  const int tokens = EstimateTokens(full->Render());

  auto tight = BuildPrompt(Task::kIntent, item, *demos, {RationaleOrder::kLabelFirst, tokens - 1});
  EXPECT_TRUE(IsOverLength(tight.status()));
  EXPECT_THAT(std::string(tight.status().message()), HasSubstr("drop 1 of 5"));

  auto hopeless = BuildPrompt(Task::kIntent, item, *demos, {RationaleOrder::kLabelFirst, 10});
  EXPECT_TRUE(IsOverLength(hopeless.status()));
  EXPECT_THAT(std::string(hopeless.status().message()), HasSubstr("even without"));

  EXPECT_TRUE(BuildPrompt(Task::kIntent, item, *demos, {RationaleOrder::kLabelFirst, tokens}).ok());
}

TEST(VerdictTest, RoundTripsEveryLabelInBothOrders) {
  for (Task task : kAllTasks) {
    for (const std::string& label : TaskLabels(task)) {
      for (RationaleOrder order :
           {RationaleOrder::kLabelFirst, RationaleOrder::kReasonFirst, RationaleOrder::kNone}) {
        const Verdict verdict{label, order == RationaleOrder::kNone ? "" : "Because it does."};
        auto parsed = ParseVerdict(RenderVerdict(verdict, order), task);
        ASSERT_TRUE(parsed.ok()) << parsed.status();
        EXPECT_EQ(*parsed, verdict) << ToString(task) << " " << ToString(order);
      }
    }
  }
}

TEST(VerdictTest, ToleratesCaseAndChatter) {
  auto v = ParseVerdict("Sure! Here you go.\nlabel : fact/evidence\nReason: numbers changed.",
                        Task::kIntent);
  ASSERT_TRUE(v.ok()) << v.status();
  EXPECT_EQ(v->label, "Fact/Evidence");
  EXPECT_EQ(v->reason, "numbers changed.");

  auto w = ParseVerdict("LABEL: **Clarity** is my answer", Task::kIntent);
  ASSERT_TRUE(w.ok()) << w.status();
  EXPECT_EQ(w->label, "Clarity");

  EXPECT_EQ(ParseVerdict("LABEL: yes.", Task::kAlignment)->label, "Yes");
}

TEST(VerdictTest, UnparsedKeepsRawAnswer) {
  auto none = ParseVerdict("I think it is grammar.", Task::kIntent);
  ASSERT_FALSE(none.ok());
  EXPECT_EQ(RawAnswer(none.status()), "I think it is grammar.");

  auto wrong_set = ParseVerdict("LABEL: Grammar", Task::kIntentAddDelete);
  ASSERT_FALSE(wrong_set.ok());
  EXPECT_EQ(RawAnswer(wrong_set.status()), "LABEL: Grammar");
  EXPECT_FALSE(RawAnswer(absl::InternalError("x")).has_value());
}

TEST(SummaryPromptTest, SplitsBySectionWhenOverBudget) {
  std::vector<SummaryEdit> edits;
  for (int s = 0; s < 3; ++s) {
    for (int i = 0; i < 3; ++i) {
      edits.push_back({absl::StrCat("Old sentence ", s, ".", i, " about the method."),
                       absl::StrCat("New sentence ", s, ".", i, " about the method."),
                       EditAction::kModify,
                       {EditIntent::kClarity},
                       absl::StrCat("Section ", s)});
    }
  }
  auto whole = BuildSummaryPrompts(edits, {});
  ASSERT_TRUE(whole.ok());
  EXPECT_EQ(whole->prompts.size(), 1u);
  EXPECT_FALSE(whole->needs_merge);
  EXPECT_THAT(whole->prompts[0].instance, HasSubstr("Edit 9:\nSection: Section 2"));

  const int budget = EstimateTokens(whole->prompts[0].Render()) / 2;
  auto split = BuildSummaryPrompts(edits, {RationaleOrder::kNone, budget});
  ASSERT_TRUE(split.ok()) << split.status();
  EXPECT_TRUE(split->needs_merge);
  ASSERT_GE(split->prompts.size(), 2u);
  for (const PromptBundle& p : split->prompts) {
    EXPECT_LE(EstimateTokens(p.Render()), budget);
  }
  // No section is split across chunks when it fits whole.
  for (int s = 0; s < 3; ++s) {
    int holders = 0;
    for (const PromptBundle& p : split->prompts) {
      holders += p.instance.find(absl::StrCat("Section: Section ", s)) != std::string::npos;
    }
    EXPECT_EQ(holders, 1) << s;
  }
  const std::vector<std::string> parts = {"first", "second"};
  EXPECT_THAT(BuildSummaryMergePrompt(parts).instance, HasSubstr("Part 2 summary: second"));
  EXPECT_FALSE(BuildSummaryPrompts({}, {}).ok());
}

}  // namespace
}  // namespace revgraph::llm
