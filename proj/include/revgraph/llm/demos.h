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


// Picking in-context demonstrations for a test item.

#ifndef REVGRAPH_LLM_DEMOS_H_
#define REVGRAPH_LLM_DEMOS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "revgraph/similarity.h"

namespace revgraph::llm {

// A labeled example, or a test item when `label` is empty. Single-text
// items (additions, deletions, review sentences) leave one side empty.
struct DemoItem {
  std::string id;
  std::string old_text;
  std::string new_text;
  std::string old_section;
  std::string new_section;
  std::string label;
  std::string reason;

  bool operator==(const DemoItem&) const = default;
};

enum class DemoMethod { kCat, kDiff, kLoc, kDef };
enum class DemoOrdering { kDefThenDyn, kDynThenDef };
enum class RationaleOrder { kLabelFirst, kReasonFirst, kNone };

std::string ToString(DemoMethod m);
std::string ToString(DemoOrdering o);
std::string ToString(RationaleOrder r);  // "LR", "RL", "none"
std::optional<DemoMethod> ParseDemoMethod(std::string_view s);
std::optional<DemoOrdering> ParseDemoOrdering(std::string_view s);
std::optional<RationaleOrder> ParseRationaleOrder(std::string_view s);

struct DemoSelectorConfig {
  DemoMethod method = DemoMethod::kDef;
  int n = 0;                     // dynamic demonstrations
  bool include_defaults = false; // add the static set to a dynamic method
  DemoOrdering ordering = DemoOrdering::kDefThenDyn;
  RationaleOrder rationale_order = RationaleOrder::kLabelFirst;
};

struct DemoSelection {
  std::vector<DemoItem> demos;
  // Set when a zero difference vector forced concatenation ranking.
  bool fell_back_to_cat = false;
};

// Ranks `pool` by cosine similarity to `item` under the configured method
// and combines the top n with `defaults`. Ties keep pool order.
absl::StatusOr<DemoSelection> SelectDemos(const DemoSelectorConfig& config,
                                          const DemoItem& item,
                                          std::span<const DemoItem> pool,
                                          std::span<const DemoItem> defaults,
                                          const EmbeddingProvider& embedder);

// Similarity of every pool item to `item` under a dynamic method; -inf for
// items whose shape (one or two texts) differs from the test item.
absl::StatusOr<std::vector<double>> DemoScores(DemoMethod method, const DemoItem& item,
                                               std::span<const DemoItem> pool,
                                               const EmbeddingProvider& embedder,
                                               bool* fell_back_to_cat = nullptr);

// Majority label among ranked demonstrations; ties go to the label whose
// first occurrence ranks highest.
absl::StatusOr<std::string> MajorityLabel(std::span<const DemoItem> ranked);

// Reads a JSON array of demonstrations. Test items may omit the label.
absl::StatusOr<std::vector<DemoItem>> LoadDemoFile(const std::string& path,
                                                   bool require_label = true);

}  // namespace revgraph::llm

#endif  // REVGRAPH_LLM_DEMOS_H_
