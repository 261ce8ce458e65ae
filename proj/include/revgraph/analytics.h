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


// Revision statistics over a document pair and its edit set.

#ifndef REVGRAPH_ANALYTICS_H_
#define REVGRAPH_ANALYTICS_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "revgraph/doc_model.h"

namespace revgraph {

// Sentence-granularity edits per old-document sentence.
absl::StatusOr<double> EditRatio(std::span<const Edit> edits, const DocumentGraph& old_doc);

// Like EditRatio, counting only edits with a Fact/Evidence or Claim intent.
absl::StatusOr<double> SemanticEditRatio(std::span<const Edit> edits,
                                         const DocumentGraph& old_doc);

// Peak over root-mean-square. Errors on an empty or all-zero vector.
absl::StatusOr<double> CrestFactor(std::span<const double> counts);
absl::StatusOr<double> CrestFactor(std::span<const int> counts);

// Sentence edits per new-version container, in document order. Deleted
// sentences are charged to the new container at the same relative position.
absl::StatusOr<std::vector<int>> EditCountsPerContainer(std::span<const Edit> edits,
                                                        Granularity container,
                                                        const DocumentGraph& old_doc,
                                                        const DocumentGraph& new_doc);

struct PositionalHistogram {
  int bins = 10;
  std::map<EditAction, std::vector<int>> by_action;
  std::map<EditIntent, std::vector<int>> by_intent;
};

// Bin of a relative position in [0, 1].
int PositionBin(double position, int bins);

absl::StatusOr<PositionalHistogram> PositionalDistribution(std::span<const Edit> edits,
                                                           const DocumentGraph& new_doc,
                                                           const DocumentGraph& old_doc,
                                                           int bins);

struct LabelDistribution {
  std::map<EditAction, double> action;
  std::map<EditIntent, double> intent;
  std::map<std::pair<EditAction, EditIntent>, double> action_intent;
};

// Proportions over sentence edits; unlabeled edits only enter `action`.
LabelDistribution ComputeLabelDistribution(std::span<const Edit> edits);

// items x annotators; std::nullopt marks a missing label.
using AnnotationMatrix = std::vector<std::vector<std::optional<std::string>>>;

// Nominal Krippendorff alpha from the coincidence matrix.
absl::StatusOr<double> KrippendorffAlpha(const AnnotationMatrix& annotations);

struct RequestOutcome {
  double not_acted = 0;
  double single_edit = 0;
  double multi_edit = 0;
};

// Per request kind (NonRequest excluded), the share of requests linked to
// zero, one, or several edits. Kinds without requests are omitted.
std::map<RequestKind, RequestOutcome> RequestImpact(std::span<const ReviewRequest> requests,
                                                    std::span<const CrossLink> links);

struct SummaryLink {
  int summary_sentence = 0;
  std::string edit_id;
};

struct SummaryFlags {
  bool vague = false;
  bool incorrect = false;
};

struct SummaryMetrics {
  double comprehensiveness = 0;
  double compactness = 0;
  double specificity = 0;
  double factuality = 0;
};

SummaryMetrics ComputeSummaryMetrics(int summary_sentences, std::span<const std::string> edit_ids,
                                     std::span<const SummaryLink> links,
                                     std::span<const SummaryFlags> flags);

struct AnalyticsReport {
  double edit_ratio = 0;
  double semantic_edit_ratio = 0;
  std::optional<double> cf_paragraph;  // unset when there are no edits
  std::optional<double> cf_section;
  PositionalHistogram positional;
  LabelDistribution labels;
  std::map<RequestKind, RequestOutcome> request_impact;
};

absl::StatusOr<AnalyticsReport> Analyze(std::span<const Edit> edits,
                                        const DocumentGraph& old_doc,
                                        const DocumentGraph& new_doc,
                                        std::span<const ReviewRequest> requests,
                                        std::span<const CrossLink> links, int bins = 10);

// Corpus view: ratios and crest factors averaged over documents, histograms
// and label counts pooled before normalizing.
struct CorpusReport {
  int documents = 0;
  double mean_edit_ratio = 0;
  double mean_semantic_edit_ratio = 0;
  double mean_cf_paragraph = 0;
  double mean_cf_section = 0;
  PositionalHistogram positional;
  LabelDistribution labels;
  std::map<RequestKind, RequestOutcome> request_impact;
};

struct PairAnalyticsInput {
  const DocumentGraph* old_doc = nullptr;
  const DocumentGraph* new_doc = nullptr;
  std::span<const Edit> edits;
  std::span<const ReviewRequest> requests;
  std::span<const CrossLink> links;
};

absl::StatusOr<CorpusReport> AnalyzeCorpus(std::span<const PairAnalyticsInput> pairs,
                                           int bins = 10);

}  // namespace revgraph

#endif  // REVGRAPH_ANALYTICS_H_
