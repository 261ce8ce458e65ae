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


// Pre-alignment followed by a language-model check of the leftovers.

#ifndef REVGRAPH_TWO_STAGE_H_
#define REVGRAPH_TWO_STAGE_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "revgraph/alignment.h"
#include "revgraph/llm/chat.h"
#include "revgraph/llm/demos.h"

namespace revgraph {

struct TwoStageOptions {
  std::vector<llm::DemoItem> demos;  // alignment demonstrations
  llm::RationaleOrder rationale_order = llm::RationaleOrder::kLabelFirst;
  llm::BatchOptions batch;
};

struct TwoStageResult {
  std::vector<Edit> edits;
  std::vector<std::string> warnings;  // one per failed candidate
  int candidates = 0;
  int merged = 0;
};

// Each added sentence is paired with the unclaimed deleted sentence whose
// lowest score across measures is highest; pairs above t0 on every measure
// go to the model, and a "Yes" turns the Add and Delete into one Modify
// edit with LlmAssisted provenance. Provider and parse failures leave the
// pair as it was and add a warning.
absl::StatusOr<TwoStageResult> TwoStageAlign(const DocumentGraph& old_doc,
                                             const DocumentGraph& new_doc,
                                             const AlignConfig& config,
                                             const llm::ChatProvider& provider,
                                             const TwoStageOptions& options = {});

}  // namespace revgraph

#endif  // REVGRAPH_TWO_STAGE_H_
