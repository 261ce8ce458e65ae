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

#include "revgraph/two_stage.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "absl/strings/str_cat.h"
#include "revgraph/llm/prompts.h"
#include "revgraph/status_macros.h"

namespace revgraph {

absl::StatusOr<TwoStageResult> TwoStageAlign(const DocumentGraph& old_doc,
                                             const DocumentGraph& new_doc,
                                             const AlignConfig& config,
                                             const llm::ChatProvider& provider,
                                             const TwoStageOptions& options) {
  ASSIGN_OR_RETURN(PreAlignment pre, PreAlignDetailed(old_doc, new_doc, config));
  TwoStageResult result;
  const size_t k = pre.residual_new.size();
  const size_t l = pre.residual_old.size();
  std::vector<bool> old_taken(l, false);
  for (int j : pre.aligned) {
    if (j >= 0) old_taken[j] = true;
  }

  struct Candidate {
    size_t i;
    size_t j;
  };
  std::vector<Candidate> candidates;
  for (size_t i = 0; i < k; ++i) {
    if (pre.aligned[i] >= 0) continue;
    int best = -1;
    double best_floor = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < l; ++j) {
      if (old_taken[j]) continue;
      double floor = std::numeric_limits<double>::infinity();
      for (size_t m = 0; m < pre.scores.measures(); ++m) {
        floor = std::min(floor, pre.scores.at(m, i, j));
      }
      if (floor > best_floor) {
        best_floor = floor;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || !(best_floor > config.t0)) continue;
    old_taken[best] = true;
    candidates.push_back({i, static_cast<size_t>(best)});
  }
  result.candidates = static_cast<int>(candidates.size());

  std::vector<llm::BatchItem> batch;
  for (const Candidate& c : candidates) {
    llm::DemoItem item;
    item.id = absl::StrCat(pre.residual_new[c.i], "|", pre.residual_old[c.j]);
    item.new_text = new_doc.Find(pre.residual_new[c.i])->text;
    item.old_text = old_doc.Find(pre.residual_old[c.j])->text;
    llm::PromptConfig prompt_config;
    prompt_config.rationale_order = options.rationale_order;
    prompt_config.max_prompt_tokens = provider.metadata().max_prompt_tokens;
    ASSIGN_OR_RETURN(llm::PromptBundle prompt,
                     llm::BuildPrompt(llm::Task::kAlignment, item, options.demos, prompt_config));
    batch.push_back({item.id, std::move(prompt)});
  }
  const auto answers = llm::RunBatch(provider, batch, options.batch);

  std::set<std::string> merged_new, merged_old;
  std::vector<Edit> merged_edits;
  for (size_t c = 0; c < candidates.size(); ++c) {
    const std::string& new_id = pre.residual_new[candidates[c].i];
    const std::string& old_id = pre.residual_old[candidates[c].j];
    const absl::StatusOr<std::string>& answer = answers.at(batch[c].id);
    if (!answer.ok()) {
      result.warnings.push_back(absl::StrCat(new_id, " / ", old_id, ": provider error: ",
                                             std::string(answer.status().message())));
      continue;
    }
    absl::StatusOr<llm::Verdict> verdict = llm::ParseVerdict(*answer, llm::Task::kAlignment);
    if (!verdict.ok()) {
      result.warnings.push_back(absl::StrCat(new_id, " / ", old_id, ": ",
                                             std::string(verdict.status().message())));
      continue;
    }
    if (verdict->label != "Yes") continue;
    Edit edit;
    edit.new_nodes = {new_id};
    edit.old_nodes = {old_id};
    edit.granularity = Granularity::kSentence;
    edit.action = EditAction::kModify;
    edit.provenance = Provenance::kLlmAssisted;
    edit.id = MakeEditId(edit.granularity, edit.new_nodes, edit.old_nodes);
    merged_new.insert(new_id);
    merged_old.insert(old_id);
    merged_edits.push_back(std::move(edit));
  }
  result.merged = static_cast<int>(merged_edits.size());

  for (Edit& e : pre.edits) {
    const bool absorbed = (e.action == EditAction::kAdd && merged_new.count(e.new_nodes[0])) ||
                          (e.action == EditAction::kDelete && merged_old.count(e.old_nodes[0]));
    if (!absorbed) result.edits.push_back(std::move(e));
  }
  for (Edit& e : merged_edits) result.edits.push_back(std::move(e));
  SortEdits(result.edits, old_doc, new_doc);
  return result;
}

}  // namespace revgraph
