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

#include "revgraph/analytics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "absl/strings/str_cat.h"
#include "revgraph/status_macros.h"

namespace revgraph {
namespace {

bool IsSentenceEdit(const Edit& e) { return e.granularity == Granularity::kSentence; }

bool HasSemanticIntent(const Edit& e) {
  return std::any_of(e.intents.begin(), e.intents.end(), IsSemantic);
}

absl::Status RequireSentences(const DocumentGraph& old_doc) {
  if (old_doc.sentence_count() == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("document ", old_doc.doc_id(), " has no sentences"));
  }
  return absl::OkStatus();
}

// Index of the container holding `id` among all containers of the document.
std::optional<int> ContainerIndex(const DocumentGraph& doc, const std::string& id,
                                  Granularity container) {
  if (container == Granularity::kParagraph) return doc.ParagraphIndex(id);
  const TextNode* node = doc.Ancestor(id, container);
  if (node == nullptr) return std::nullopt;
  const std::vector<const TextNode*> all = doc.NodesAt(container);
  for (size_t i = 0; i < all.size(); ++i) {
    if (all[i] == node) return static_cast<int>(i);
  }
  return std::nullopt;
}

template <typename Key>
void Normalize(std::map<Key, double>& counts) {
  double total = 0;
  for (const auto& [key, count] : counts) total += count;
  if (total == 0) return;
  for (auto& [key, count] : counts) count /= total;
}

}  // namespace

absl::StatusOr<double> EditRatio(std::span<const Edit> edits, const DocumentGraph& old_doc) {
  RETURN_IF_ERROR(RequireSentences(old_doc));
  const auto count = std::count_if(edits.begin(), edits.end(), IsSentenceEdit);
  return static_cast<double>(count) / old_doc.sentence_count();
}

absl::StatusOr<double> SemanticEditRatio(std::span<const Edit> edits,
                                         const DocumentGraph& old_doc) {
  RETURN_IF_ERROR(RequireSentences(old_doc));
  const auto count = std::count_if(edits.begin(), edits.end(), [](const Edit& e) {
    return IsSentenceEdit(e) && HasSemanticIntent(e);
  });
  return static_cast<double>(count) / old_doc.sentence_count();
}

absl::StatusOr<double> CrestFactor(std::span<const double> counts) {
  double peak = 0;
  double sum_squares = 0;
  for (double c : counts) {
    if (c < 0 || !std::isfinite(c)) {
      return absl::InvalidArgumentError("counts must be finite and nonnegative");
    }
    peak = std::max(peak, c);
    sum_squares += c * c;
  }
  if (peak == 0) return absl::InvalidArgumentError("no edits");
  return peak / std::sqrt(sum_squares / counts.size());
}

absl::StatusOr<double> CrestFactor(std::span<const int> counts) {
  std::vector<double> values(counts.begin(), counts.end());
  return CrestFactor(std::span<const double>(values));
}

absl::StatusOr<std::vector<int>> EditCountsPerContainer(std::span<const Edit> edits,
                                                        Granularity container,
                                                        const DocumentGraph& old_doc,
                                                        const DocumentGraph& new_doc) {
  if (container != Granularity::kParagraph && container != Granularity::kSection) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot count edits per ", ToString(container)));
  }
  const int new_count = static_cast<int>(new_doc.NodesAt(container).size());
  const int old_count = static_cast<int>(old_doc.NodesAt(container).size());
  if (new_count == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("new document has no ", ToString(container), " nodes"));
  }
  std::vector<int> counts(new_count, 0);
  for (const Edit& e : edits) {
    if (!IsSentenceEdit(e)) continue;
    int index = -1;
    if (!e.new_nodes.empty()) {
      index = ContainerIndex(new_doc, e.new_nodes.front(), container).value_or(-1);
    } else if (!e.old_nodes.empty() && old_count > 0) {
      auto old_index = ContainerIndex(old_doc, e.old_nodes.front(), container);
      if (old_index) {
        index = std::min(new_count - 1,
                         static_cast<int>(std::floor(static_cast<double>(*old_index) /
                                                     old_count * new_count)));
      }
    }
    if (index < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("edit ", e.id, " has no ", ToString(container), " container"));
    }
    ++counts[index];
  }
  return counts;
}

int PositionBin(double position, int bins) {
  const int bin = static_cast<int>(std::floor(position * bins));
  return std::clamp(bin, 0, bins - 1);
}

absl::StatusOr<PositionalHistogram> PositionalDistribution(std::span<const Edit> edits,
                                                           const DocumentGraph& new_doc,
                                                           const DocumentGraph& old_doc,
                                                           int bins) {
  if (bins < 1) return absl::InvalidArgumentError("bins must be at least 1");
  PositionalHistogram histogram;
  histogram.bins = bins;
  for (EditAction a : kAllActions) histogram.by_action[a].assign(bins, 0);
  for (EditIntent i : kAllIntents) histogram.by_intent[i].assign(bins, 0);
  for (const Edit& e : edits) {
    if (!IsSentenceEdit(e)) continue;
    const bool use_new = !e.new_nodes.empty();
    const DocumentGraph& doc = use_new ? new_doc : old_doc;
    const std::string& id = use_new ? e.new_nodes.front() : e.old_nodes.front();
    const std::optional<int> ordinal = doc.SentenceIndex(id);
    if (!ordinal || doc.sentence_count() == 0) {
      return absl::InvalidArgumentError(absl::StrCat("dangling node: ", id));
    }
    const int bin =
        PositionBin(static_cast<double>(*ordinal) / doc.sentence_count(), bins);
    ++histogram.by_action[e.action][bin];
    for (EditIntent intent : e.intents) ++histogram.by_intent[intent][bin];
  }
  return histogram;
}

LabelDistribution ComputeLabelDistribution(std::span<const Edit> edits) {
  LabelDistribution d;
  for (const Edit& e : edits) {
    if (!IsSentenceEdit(e)) continue;
    d.action[e.action] += 1;
    for (EditIntent intent : e.intents) {
      d.intent[intent] += 1;
      d.action_intent[{e.action, intent}] += 1;
    }
  }
  Normalize(d.action);
  Normalize(d.intent);
  Normalize(d.action_intent);
  return d;
}

absl::StatusOr<double> KrippendorffAlpha(const AnnotationMatrix& annotations) {
  std::map<std::string, int> value_index;
  for (const auto& unit : annotations) {
    for (const auto& value : unit) {
      if (value) value_index.emplace(*value, 0);
    }
  }
  int next = 0;
  for (auto& [value, index] : value_index) index = next++;
  const int v = next;

  std::vector<double> coincidence(static_cast<size_t>(v) * v, 0.0);
  for (const auto& unit : annotations) {
    std::vector<int> values;
    for (const auto& value : unit) {
      if (value) values.push_back(value_index[*value]);
    }
    const size_t m = values.size();
    if (m < 2) continue;
    for (size_t a = 0; a < m; ++a) {
      for (size_t b = 0; b < m; ++b) {
        if (a != b) coincidence[values[a] * v + values[b]] += 1.0 / (m - 1);
      }
    }
  }
  std::vector<double> marginal(v, 0.0);
  double n = 0;
  for (int c = 0; c < v; ++c) {
    for (int k = 0; k < v; ++k) marginal[c] += coincidence[c * v + k];
    n += marginal[c];
  }
  if (n == 0) return absl::InvalidArgumentError("no item carries two or more labels");

  double observed = 0;
  double expected = 0;
  for (int c = 0; c < v; ++c) {
    for (int k = 0; k < v; ++k) {
      if (c == k) continue;
      observed += coincidence[c * v + k];
      expected += marginal[c] * marginal[k];
    }
  }
  observed /= n;
  expected /= n * (n - 1);
  if (expected == 0) return 1.0;
  return 1.0 - observed / expected;
}

std::map<RequestKind, RequestOutcome> RequestImpact(std::span<const ReviewRequest> requests,
                                                    std::span<const CrossLink> links) {
  std::map<std::string, std::set<std::string>> edits_of;
  for (const CrossLink& link : links) {
    if (link.kind == CrossLinkKind::kReviewToEdit) {
      edits_of[link.sentence_id].insert(link.edit_id);
    }
  }
  std::map<RequestKind, RequestOutcome> impact;
  std::map<RequestKind, int> totals;
  for (const ReviewRequest& r : requests) {
    if (r.kind == RequestKind::kNonRequest) continue;
    RequestOutcome& outcome = impact[r.kind];
    ++totals[r.kind];
    auto it = edits_of.find(r.sentence_id);
    const size_t linked = it == edits_of.end() ? 0 : it->second.size();
    if (linked == 0) {
      outcome.not_acted += 1;
    } else if (linked == 1) {
      outcome.single_edit += 1;
    } else {
      outcome.multi_edit += 1;
    }
  }
  for (auto& [kind, outcome] : impact) {
    const double total = totals[kind];
    outcome.not_acted /= total;
    outcome.single_edit /= total;
    outcome.multi_edit /= total;
  }
  return impact;
}

SummaryMetrics ComputeSummaryMetrics(int summary_sentences, std::span<const std::string> edit_ids,
                                     std::span<const SummaryLink> links,
                                     std::span<const SummaryFlags> flags) {
  SummaryMetrics metrics;
  const std::set<std::string> edits(edit_ids.begin(), edit_ids.end());
  std::set<std::string> covered;
  std::map<int, std::set<std::string>> per_sentence;
  for (const SummaryLink& link : links) {
    if (!edits.count(link.edit_id)) continue;
    covered.insert(link.edit_id);
    per_sentence[link.summary_sentence].insert(link.edit_id);
  }
  if (!edits.empty()) {
    metrics.comprehensiveness = static_cast<double>(covered.size()) / edits.size();
  }
  if (!per_sentence.empty()) {
    double total = 0;
    for (const auto& [sentence, linked] : per_sentence) total += linked.size();
    metrics.compactness = total / per_sentence.size();
  }
  if (summary_sentences > 0) {
    int vague = 0;
    int incorrect = 0;
    for (const SummaryFlags& f : flags) {
      vague += f.vague;
      incorrect += f.incorrect;
    }
    metrics.specificity = 1.0 - static_cast<double>(vague) / summary_sentences;
    metrics.factuality = 1.0 - static_cast<double>(incorrect) / summary_sentences;
  }
  return metrics;
}

absl::StatusOr<AnalyticsReport> Analyze(std::span<const Edit> edits,
                                        const DocumentGraph& old_doc,
                                        const DocumentGraph& new_doc,
                                        std::span<const ReviewRequest> requests,
                                        std::span<const CrossLink> links, int bins) {
  AnalyticsReport report;
  ASSIGN_OR_RETURN(report.edit_ratio, EditRatio(edits, old_doc));
  ASSIGN_OR_RETURN(report.semantic_edit_ratio, SemanticEditRatio(edits, old_doc));
  for (auto [g, out] : {std::pair(Granularity::kParagraph, &report.cf_paragraph),
                        std::pair(Granularity::kSection, &report.cf_section)}) {
    if (new_doc.NodesAt(g).empty()) continue;
    ASSIGN_OR_RETURN(std::vector<int> counts, EditCountsPerContainer(edits, g, old_doc, new_doc));
    if (std::any_of(counts.begin(), counts.end(), [](int c) { return c > 0; })) {
      ASSIGN_OR_RETURN(*out, CrestFactor(std::span<const int>(counts)));
    }
  }
  ASSIGN_OR_RETURN(report.positional, PositionalDistribution(edits, new_doc, old_doc, bins));
  report.labels = ComputeLabelDistribution(edits);
  report.request_impact = RequestImpact(requests, links);
  return report;
}

absl::StatusOr<CorpusReport> AnalyzeCorpus(std::span<const PairAnalyticsInput> pairs, int bins) {
  CorpusReport corpus;
  if (bins < 1) return absl::InvalidArgumentError("bins must be at least 1");
  corpus.positional.bins = bins;
  for (EditAction a : kAllActions) corpus.positional.by_action[a].assign(bins, 0);
  for (EditIntent i : kAllIntents) corpus.positional.by_intent[i].assign(bins, 0);
  std::vector<Edit> all_edits;
  std::vector<ReviewRequest> all_requests;
  std::vector<CrossLink> all_links;
  int cf_paragraph_docs = 0;
  int cf_section_docs = 0;
  for (const PairAnalyticsInput& pair : pairs) {
    ASSIGN_OR_RETURN(AnalyticsReport report,
                     Analyze(pair.edits, *pair.old_doc, *pair.new_doc, pair.requests,
                             pair.links, bins));
    ++corpus.documents;
    corpus.mean_edit_ratio += report.edit_ratio;
    corpus.mean_semantic_edit_ratio += report.semantic_edit_ratio;
    if (report.cf_paragraph) {
      corpus.mean_cf_paragraph += *report.cf_paragraph;
      ++cf_paragraph_docs;
    }
    if (report.cf_section) {
      corpus.mean_cf_section += *report.cf_section;
      ++cf_section_docs;
    }
    for (auto& [a, counts] : report.positional.by_action) {
      for (int b = 0; b < bins; ++b) corpus.positional.by_action[a][b] += counts[b];
    }
    for (auto& [i, counts] : report.positional.by_intent) {
      for (int b = 0; b < bins; ++b) corpus.positional.by_intent[i][b] += counts[b];
    }
    all_edits.insert(all_edits.end(), pair.edits.begin(), pair.edits.end());
    all_requests.insert(all_requests.end(), pair.requests.begin(), pair.requests.end());
    all_links.insert(all_links.end(), pair.links.begin(), pair.links.end());
  }
  if (corpus.documents > 0) {
    corpus.mean_edit_ratio /= corpus.documents;
    corpus.mean_semantic_edit_ratio /= corpus.documents;
  }
  if (cf_paragraph_docs > 0) corpus.mean_cf_paragraph /= cf_paragraph_docs;
  if (cf_section_docs > 0) corpus.mean_cf_section /= cf_section_docs;
  corpus.labels = ComputeLabelDistribution(all_edits);
  corpus.request_impact = RequestImpact(all_requests, all_links);
  return corpus;
}

}  // namespace revgraph
