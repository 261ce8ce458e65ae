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

#include <algorithm>
#include <cctype>
#include <map>

#include "absl/strings/ascii.h"
#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "revgraph/status_macros.h"

namespace revgraph::llm {
namespace {

constexpr char kRawAnswerPayload[] = "type.revgraph/raw_answer";

constexpr char kIntentSystem[] =
    "You are a helpful, respectful and honest revision analysis assistant. You will read two "
    "versions of texts. Your task is to analyze the revision intent behind the difference "
    "between the two texts. The intent can be one of the following labels: fix grammar "
    "(Grammar), improve clarity (Clarity), change claim or statement (Claim), change factual "
    "information (Fact/Evidence). Grammar and Clarity are more about surface language "
    "improvements, while Fact/Evidence and Claim are more about meaning changes. If none of the "
    "above labels are relevant, please answer with 'Other'.";
constexpr char kIntentQuestion[] =
    "Read the following old and new texts. What is the intent of the revision? Please answer "
    "with one of the labels: Grammar, Clarity, Claim, Fact/Evidence and Other.";

constexpr char kAddDeleteSystem[] =
    "You are a helpful, respectful and honest revision analysis assistant. You will read a text "
    "that was added to or deleted from a document. Your task is to analyze the revision intent "
    "behind the addition or deletion. The intent can be one of the following labels: change "
    "claim or statement (Claim), change factual information (Fact/Evidence). If none of the "
    "above labels are relevant, please answer with 'Other'.";
constexpr char kAddDeleteQuestion[] =
    "Read the following text. What is the intent of the revision? Please answer with one of the "
    "labels: Claim, Fact/Evidence and Other.";

constexpr char kAlignmentSystem[] =
    "You are a helpful, respectful and honest revision analysis assistant. You will read a "
    "sentence from an old version and a sentence from a new version of a document. Your task is "
    "to decide whether the new sentence is a revised form of the old sentence, so that the two "
    "should be linked as a revision pair. Sentences that only discuss a similar topic are not a "
    "revision pair.";
constexpr char kAlignmentQuestion[] =
    "Read the following old and new texts. Is the new text a revision of the old text? Please "
    "answer with one of the labels: Yes and No.";

constexpr char kRequestSystem[] =
    "You are a helpful, respectful and honest revision analysis assistant. You will read a "
    "sentence from a peer review of a document. Your task is to decide whether the sentence is "
    "a review request, that is, an explicit suggestion, an implicit suggestion, or a comment on "
    "a weakness that could lead the authors to revise the document.";
constexpr char kRequestQuestion[] =
    "Read the following review sentence. Is it a review request? Please answer with one of the "
    "labels: Yes and No.";

constexpr char kSummarySystem[] =
    "You are a helpful, respectful and honest revision analysis assistant. You will read a list "
    "of sentence edits between an old and a new version of a document. Each edit gives the old "
    "text, the new text, the edit action, the edit intent, and the section it belongs to.";
constexpr char kSummaryTask[] =
    "Summarize the revisions made to the document in a few coherent sentences. Mention what was "
    "changed and why, grouping related edits.";
constexpr char kSummaryChunkTask[] =
    "Summarize the revisions made in this part of the document in a few coherent sentences. "
    "Mention what was changed and why, grouping related edits.";
constexpr char kSummaryMergeTask[] =
    "The following are summaries of the revisions in different parts of one document. Merge "
    "them into a single coherent summary of all document edits without repeating yourself.";

std::string AnswerTemplate(RationaleOrder order) {
  switch (order) {
    case RationaleOrder::kLabelFirst:
      return "LABEL:<your answer> REASON:<your answer>";
    case RationaleOrder::kReasonFirst:
      return "REASON:<your answer> LABEL:<your answer>";
    case RationaleOrder::kNone:
      return "LABEL:<your answer>";
  }
  return "";
}

std::string TaskInstruction(Task task, RationaleOrder order) {
  const char* question = "";
  switch (task) {
    case Task::kIntent:
      question = kIntentQuestion;
      break;
    case Task::kIntentAddDelete:
      question = kAddDeleteQuestion;
      break;
    case Task::kAlignment:
      question = kAlignmentQuestion;
      break;
    case Task::kRequest:
      question = kRequestQuestion;
      break;
  }
  return absl::StrCat(question,
                      " Please always answer with the template and fill the template with your "
                      "answer without additional texts: ",
                      AnswerTemplate(order), ".");
}

const char* SystemText(Task task) {
  switch (task) {
    case Task::kIntent:
      return kIntentSystem;
    case Task::kIntentAddDelete:
      return kAddDeleteSystem;
    case Task::kAlignment:
      return kAlignmentSystem;
    case Task::kRequest:
      return kRequestSystem;
  }
  return "";
}

absl::Status CheckItemShape(Task task, const DemoItem& item) {
  const bool has_old = !item.old_text.empty();
  const bool has_new = !item.new_text.empty();
  switch (task) {
    case Task::kIntent:
    case Task::kAlignment:
      if (has_old && has_new) return absl::OkStatus();
      return absl::InvalidArgumentError(
          absl::StrCat("item ", item.id, " needs both an old and a new text"));
    case Task::kIntentAddDelete:
      if (has_old != has_new) return absl::OkStatus();
      return absl::InvalidArgumentError(
          absl::StrCat("item ", item.id, " needs exactly one of old and new text"));
    case Task::kRequest:
      if (has_new && !has_old) return absl::OkStatus();
      return absl::InvalidArgumentError(
          absl::StrCat("item ", item.id, " needs the review sentence in new_text only"));
  }
  return absl::OkStatus();
}

// Lowercased, with whitespace, quotes, brackets, and markdown emphasis
// removed and trailing punctuation dropped.
std::string NormalizeLabel(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isspace(u) || c == '"' || c == '\'' || c == '*' || c == '<' || c == '>' ||
        c == '[' || c == ']' || c == '(' || c == ')' || c == '`') {
      continue;
    }
    out.push_back(static_cast<char>(std::tolower(u)));
  }
  while (!out.empty() && (out.back() == '.' || out.back() == ',' || out.back() == ';' ||
                          out.back() == ':' || out.back() == '!')) {
    out.pop_back();
  }
  return out;
}

const std::map<std::string, std::string>& AliasTable(Task task) {
  static const auto* intent = new std::map<std::string, std::string>{
      {"grammar", "Grammar"},         {"clarity", "Clarity"},
      {"fact/evidence", "Fact/Evidence"}, {"factevidence", "Fact/Evidence"},
      {"fact-evidence", "Fact/Evidence"}, {"fact", "Fact/Evidence"},
      {"evidence", "Fact/Evidence"},  {"facts/evidence", "Fact/Evidence"},
      {"claim", "Claim"},             {"other", "Other"},
  };
  static const auto* add_delete = new std::map<std::string, std::string>{
      {"fact/evidence", "Fact/Evidence"}, {"factevidence", "Fact/Evidence"},
      {"fact-evidence", "Fact/Evidence"}, {"fact", "Fact/Evidence"},
      {"evidence", "Fact/Evidence"},  {"facts/evidence", "Fact/Evidence"},
      {"claim", "Claim"},             {"other", "Other"},
  };
  static const auto* yes_no = new std::map<std::string, std::string>{
      {"yes", "Yes"}, {"no", "No"},
  };
  switch (task) {
    case Task::kIntent:
      return *intent;
    case Task::kIntentAddDelete:
      return *add_delete;
    case Task::kAlignment:
    case Task::kRequest:
      return *yes_no;
  }
  return *yes_no;
}

// Position just past "<marker>\s*:" (case-insensitive), searching from `from`.
std::optional<std::pair<size_t, size_t>> FindMarker(std::string_view text, std::string_view marker,
                                                    size_t from = 0) {
  const std::string lower = absl::AsciiStrToLower(std::string(text));
  for (size_t pos = lower.find(marker, from); pos != std::string::npos;
       pos = lower.find(marker, pos + 1)) {
    size_t after = pos + marker.size();
    while (after < text.size() && (text[after] == ' ' || text[after] == '\t')) ++after;
    if (after < text.size() && text[after] == ':') return std::pair(pos, after + 1);
  }
  return std::nullopt;
}

absl::Status ParseError(std::string_view text, const std::string& why) {
  absl::Status status = absl::InvalidArgumentError(absl::StrCat("unparsed answer: ", why));
  status.SetPayload(kRawAnswerPayload, absl::Cord(std::string(text)));
  return status;
}

std::string FormatEdit(size_t index, const SummaryEdit& edit) {
  std::vector<std::string> intents;
  for (EditIntent i : edit.intents) intents.push_back(ToString(i));
  return absl::StrCat("Edit ", index, ":\nSection: ", edit.section.empty() ? "(none)" : edit.section,
                      "\nOld text: ", edit.old_text.empty() ? "(none)" : edit.old_text,
                      "\nNew text: ", edit.new_text.empty() ? "(none)" : edit.new_text,
                      "\nAction: ", ToString(edit.action), "\nIntent: ",
                      intents.empty() ? "(none)" : absl::StrJoin(intents, ", "));
}

PromptBundle SummaryBundle(std::span<const SummaryEdit> edits, const char* task) {
  PromptBundle bundle;
  bundle.system = kSummarySystem;
  bundle.task = task;
  std::vector<std::string> items;
  for (size_t i = 0; i < edits.size(); ++i) items.push_back(FormatEdit(i + 1, edits[i]));
  bundle.instance = absl::StrJoin(items, "\n\n");
  return bundle;
}

}  // namespace

std::string ToString(Task task) {
  switch (task) {
    case Task::kIntent:
      return "intent";
    case Task::kIntentAddDelete:
      return "intent_add_delete";
    case Task::kAlignment:
      return "alignment";
    case Task::kRequest:
      return "request";
  }
  return "?";
}

std::optional<Task> ParseTask(std::string_view s) {
  for (Task t : kAllTasks) {
    if (ToString(t) == s) return t;
  }
  return std::nullopt;
}

std::vector<std::string> TaskLabels(Task task) {
  switch (task) {
    case Task::kIntent:
      return {"Grammar", "Clarity", "Fact/Evidence", "Claim", "Other"};
    case Task::kIntentAddDelete:
      return {"Fact/Evidence", "Claim", "Other"};
    case Task::kAlignment:
    case Task::kRequest:
      return {"Yes", "No"};
  }
  return {};
}

std::string RenderItem(Task task, const DemoItem& item) {
  switch (task) {
    case Task::kIntent:
    case Task::kAlignment:
      return absl::StrCat("The old text is: ", item.old_text, "\nThe new text is: ", item.new_text);
    case Task::kIntentAddDelete:
      return item.old_text.empty() ? absl::StrCat("The added text is: ", item.new_text)
                                   : absl::StrCat("The deleted text is: ", item.old_text);
    case Task::kRequest:
      return absl::StrCat("The review sentence is: ", item.new_text);
  }
  return "";
}

std::string RenderDemo(Task task, const DemoItem& demo, RationaleOrder order) {
  const std::string label = absl::StrCat("LABEL: ", demo.label);
  const std::string reason = absl::StrCat("REASON: ", demo.reason);
  switch (order) {
    case RationaleOrder::kLabelFirst:
      return absl::StrCat(RenderItem(task, demo), "\n", label, "\n", reason);
    case RationaleOrder::kReasonFirst:
      return absl::StrCat(RenderItem(task, demo), "\n", reason, "\n", label);
    case RationaleOrder::kNone:
      return absl::StrCat(RenderItem(task, demo), "\n", label);
  }
  return "";
}

PromptBundle BuildPromptSkeleton(Task task, std::span<const DemoItem> demos,
                                 RationaleOrder order) {
  PromptBundle bundle;
  bundle.system = SystemText(task);
  for (const DemoItem& demo : demos) bundle.demonstrations.push_back(RenderDemo(task, demo, order));
  bundle.task = TaskInstruction(task, order);
  bundle.parse_template = AnswerTemplate(order);
  return bundle;
}

absl::StatusOr<PromptBundle> BuildPrompt(Task task, const DemoItem& item,
                                         std::span<const DemoItem> demos,
                                         const PromptConfig& config) {
  RETURN_IF_ERROR(CheckItemShape(task, item));
  for (const DemoItem& demo : demos) {
    RETURN_IF_ERROR(CheckItemShape(task, demo));
    if (config.rationale_order != RationaleOrder::kNone && demo.reason.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("demonstration ", demo.id, " has no rationale"));
    }
  }
  PromptBundle bundle = BuildPromptSkeleton(task, demos, config.rationale_order);
  bundle.instance = RenderItem(task, item);
  if (config.max_prompt_tokens > 0) {
    const int tokens = EstimateTokens(bundle.Render());
    if (tokens > config.max_prompt_tokens) {
      PromptBundle trimmed = bundle;
      size_t drop = 0;
      while (!trimmed.demonstrations.empty() &&
             EstimateTokens(trimmed.Render()) > config.max_prompt_tokens) {
        trimmed.demonstrations.pop_back();
        ++drop;
      }
      if (EstimateTokens(trimmed.Render()) > config.max_prompt_tokens) {
        return OverLengthError(absl::StrCat("prompt needs about ", tokens,
                                            " tokens but the budget is ", config.max_prompt_tokens,
                                            "; it does not fit even without demonstrations"));
      }
      return OverLengthError(absl::StrCat("prompt needs about ", tokens,
                                          " tokens but the budget is ", config.max_prompt_tokens,
                                          "; drop ", drop, " of ", demos.size(),
                                          " demonstration(s)"));
    }
  }
  return bundle;
}

absl::StatusOr<PromptBundle> BuildIntentPrompt(const DemoItem& item,
                                               std::span<const DemoItem> demos,
                                               const PromptConfig& config) {
  const bool single = item.old_text.empty() != item.new_text.empty();
  return BuildPrompt(single ? Task::kIntentAddDelete : Task::kIntent, item, demos, config);
}

absl::StatusOr<SummaryPlan> BuildSummaryPrompts(std::span<const SummaryEdit> edits,
                                                const PromptConfig& config) {
  if (edits.empty()) return absl::InvalidArgumentError("no edits to summarize");
  SummaryPlan plan;
  PromptBundle whole = SummaryBundle(edits, kSummaryTask);
  const int budget = config.max_prompt_tokens;
  if (budget <= 0 || EstimateTokens(whole.Render()) <= budget) {
    plan.prompts.push_back(std::move(whole));
    return plan;
  }

  // Sections in order of first appearance; each unit is one section.
  std::vector<std::string> order;
  std::map<std::string, std::vector<SummaryEdit>> by_section;
  for (const SummaryEdit& e : edits) {
    auto [it, inserted] = by_section.try_emplace(e.section);
    if (inserted) order.push_back(e.section);
    it->second.push_back(e);
  }
  auto fits = [&](std::span<const SummaryEdit> chunk) {
    return EstimateTokens(SummaryBundle(chunk, kSummaryChunkTask).Render()) <= budget;
  };
  std::vector<std::vector<SummaryEdit>> units;
  for (const std::string& section : order) {
    std::vector<SummaryEdit>& group = by_section[section];
    if (fits(group)) {
      units.push_back(group);
      continue;
    }
    // An oversized section is split between its edits.
    for (const SummaryEdit& e : group) units.push_back({e});
  }
  std::vector<SummaryEdit> current;
  std::vector<std::vector<SummaryEdit>> chunks;
  for (const std::vector<SummaryEdit>& unit : units) {
    std::vector<SummaryEdit> candidate = current;
    candidate.insert(candidate.end(), unit.begin(), unit.end());
    if (!current.empty() && !fits(candidate)) {
      chunks.push_back(std::move(current));
      current = unit;
    } else {
      current = std::move(candidate);
    }
  }
  if (!current.empty()) chunks.push_back(std::move(current));
  for (const std::vector<SummaryEdit>& chunk : chunks) {
    if (!fits(chunk)) {
      return OverLengthError("a single edit exceeds the summary prompt budget");
    }
    plan.prompts.push_back(SummaryBundle(chunk, kSummaryChunkTask));
  }
  plan.needs_merge = plan.prompts.size() > 1;
  return plan;
}

PromptBundle BuildSummaryMergePrompt(std::span<const std::string> chunk_summaries) {
  PromptBundle bundle;
  bundle.system = kSummarySystem;
  bundle.task = kSummaryMergeTask;
  std::vector<std::string> parts;
  for (size_t i = 0; i < chunk_summaries.size(); ++i) {
    parts.push_back(absl::StrCat("Part ", i + 1, " summary: ", chunk_summaries[i]));
  }
  bundle.instance = absl::StrJoin(parts, "\n\n");
  return bundle;
}

absl::StatusOr<Verdict> ParseVerdict(std::string_view text, Task task) {
  const auto label_marker = FindMarker(text, "label");
  if (!label_marker) return ParseError(text, "no LABEL field");
  const auto reason_marker = FindMarker(text, "reason");

  // The label runs to the REASON marker or the end of its line.
  size_t label_end = text.size();
  if (reason_marker && reason_marker->first > label_marker->second) {
    label_end = reason_marker->first;
  }
  label_end = std::min(label_end, text.find('\n', label_marker->second));
  const std::string_view raw_label =
      text.substr(label_marker->second, label_end - label_marker->second);

  const auto& aliases = AliasTable(task);
  std::string key = NormalizeLabel(raw_label);
  auto it = aliases.find(key);
  if (it == aliases.end()) {
    // Fall back to the first word, tolerating chatter after the label.
    const std::string trimmed(absl::StripLeadingAsciiWhitespace(
        absl::string_view(raw_label.data(), raw_label.size())));
    key = NormalizeLabel(trimmed.substr(0, trimmed.find_first_of(" \t")));
    it = aliases.find(key);
  }
  if (it == aliases.end()) {
    return ParseError(text, absl::StrCat("unknown label '", std::string(raw_label), "'"));
  }

  Verdict verdict;
  verdict.label = it->second;
  if (reason_marker) {
    size_t reason_end = text.size();
    if (label_marker->first > reason_marker->second) reason_end = label_marker->first;
    const std::string_view reason =
        text.substr(reason_marker->second, reason_end - reason_marker->second);
    verdict.reason = std::string(absl::StripAsciiWhitespace(
        absl::string_view(reason.data(), reason.size())));
  }
  return verdict;
}

std::optional<std::string> RawAnswer(const absl::Status& status) {
  auto payload = status.GetPayload(kRawAnswerPayload);
  if (!payload) return std::nullopt;
  return std::string(*payload);
}

std::string RenderVerdict(const Verdict& verdict, RationaleOrder order) {
  switch (order) {
    case RationaleOrder::kLabelFirst:
      return absl::StrCat("LABEL: ", verdict.label, " REASON: ", verdict.reason);
    case RationaleOrder::kReasonFirst:
      return absl::StrCat("REASON: ", verdict.reason, " LABEL: ", verdict.label);
    case RationaleOrder::kNone:
      return absl::StrCat("LABEL: ", verdict.label);
  }
  return "";
}

std::string DefaultDemoPath(Task task) {
  return absl::StrCat(REVGRAPH_DATA_DIR, "/demos/", ToString(task), ".json");
}

}  // namespace revgraph::llm
