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


// Prompt construction and answer parsing for the revision tasks.

#ifndef REVGRAPH_LLM_PROMPTS_H_
#define REVGRAPH_LLM_PROMPTS_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "revgraph/doc_model.h"
#include "revgraph/llm/chat.h"
#include "revgraph/llm/demos.h"

namespace revgraph::llm {

enum class Task { kIntent, kIntentAddDelete, kAlignment, kRequest };

inline constexpr Task kAllTasks[] = {Task::kIntent, Task::kIntentAddDelete, Task::kAlignment,
                                     Task::kRequest};

std::string ToString(Task task);  // "intent", "intent_add_delete", "alignment", "request"
std::optional<Task> ParseTask(std::string_view s);

// Canonical answer labels of a task.
std::vector<std::string> TaskLabels(Task task);

struct PromptConfig {
  RationaleOrder rationale_order = RationaleOrder::kLabelFirst;
  int max_prompt_tokens = 0;  // 0 means unlimited
};

// One demonstration or test item as it appears in a prompt, without the
// answer lines.
std::string RenderItem(Task task, const DemoItem& item);
std::string RenderDemo(Task task, const DemoItem& demo, RationaleOrder order);

// Errors with kOutOfRange, naming how many demonstrations to drop, when the
// prompt exceeds `max_prompt_tokens`.
absl::StatusOr<PromptBundle> BuildPrompt(Task task, const DemoItem& item,
                                         std::span<const DemoItem> demos,
                                         const PromptConfig& config);

// The full intent prompt for a Modify edit, or the three-label variant for
// an addition or deletion (one side empty).
absl::StatusOr<PromptBundle> BuildIntentPrompt(const DemoItem& item,
                                               std::span<const DemoItem> demos,
                                               const PromptConfig& config);

// Instruction text and demonstrations without a test item.
PromptBundle BuildPromptSkeleton(Task task, std::span<const DemoItem> demos,
                                 RationaleOrder order);

struct SummaryEdit {
  std::string old_text;
  std::string new_text;
  EditAction action = EditAction::kModify;
  std::set<EditIntent> intents;
  std::string section;
};

struct SummaryPlan {
  // One prompt when everything fits; otherwise one per chunk of sections.
  std::vector<PromptBundle> prompts;
  // Chunk answers go through BuildSummaryMergePrompt.
  bool needs_merge = false;
};

absl::StatusOr<SummaryPlan> BuildSummaryPrompts(std::span<const SummaryEdit> edits,
                                                const PromptConfig& config);
PromptBundle BuildSummaryMergePrompt(std::span<const std::string> chunk_summaries);

struct Verdict {
  std::string label;  // canonical, one of TaskLabels(task)
  std::string reason;

  bool operator==(const Verdict&) const = default;
};

// Extracts LABEL and REASON from a model answer. Failures are
// kInvalidArgument with the raw answer attached (see RawAnswer).
absl::StatusOr<Verdict> ParseVerdict(std::string_view text, Task task);
std::optional<std::string> RawAnswer(const absl::Status& status);

// "LABEL: x REASON: y" (or reversed); the inverse of ParseVerdict.
std::string RenderVerdict(const Verdict& verdict, RationaleOrder order);

// Default demonstration file for a task under data/demos.
std::string DefaultDemoPath(Task task);

}  // namespace revgraph::llm

#endif  // REVGRAPH_LLM_PROMPTS_H_
