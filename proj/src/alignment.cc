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

#include "revgraph/alignment.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "absl/strings/str_cat.h"
#include "revgraph/edit_graph.h"
#include "revgraph/status_macros.h"
#include "revgraph/text.h"

namespace revgraph {
namespace {

std::vector<std::string> SentenceTexts(const DocumentGraph& doc,
                                       std::span<const std::string> ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) out.push_back(doc.Find(id)->text);
  return out;
}

Edit MakeSingleEdit(EditAction action, std::vector<std::string> new_nodes,
                    std::vector<std::string> old_nodes) {
  Edit e;
  e.new_nodes = std::move(new_nodes);
  e.old_nodes = std::move(old_nodes);
  e.granularity = Granularity::kSentence;
  e.action = action;
  e.provenance = Provenance::kAuto;
  e.id = MakeEditId(e.granularity, e.new_nodes, e.old_nodes);
  return e;
}

}  // namespace

absl::Status AlignConfig::Validate() const {
  if (!(t0 > 0.0 && t1 < 100.0 && t0 < t1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("thresholds must satisfy 0 < t0 < t1 < 100, got t0=", t0, " t1=", t1));
  }
  if (measures.empty()) return absl::InvalidArgumentError("no similarity measures");
  for (const auto& m : measures) {
    if (m == nullptr) return absl::InvalidArgumentError("null similarity measure");
  }
  return absl::OkStatus();
}

AlignConfig DefaultAlignConfig(std::shared_ptr<const EmbeddingProvider> embedder) {
  AlignConfig config;
  config.measures = {MakeLevMeasure(), MakeFuzzyMeasure(),
                     MakeSemMeasure(std::move(embedder))};
  return config;
}

std::vector<Link> MatchIdenticalSentences(const DocumentGraph& old_doc,
                                          const DocumentGraph& new_doc) {
  std::vector<Link> pairs;
  std::set<std::string> matched_new, matched_old;

  auto sentences_of = [](const DocumentGraph& doc, const TextNode* paragraph) {
    std::vector<const TextNode*> out;
    for (const TextNode* child : doc.Children(paragraph->id)) {
      if (child->granularity == Granularity::kSentence) out.push_back(child);
    }
    return out;
  };

  // Identical paragraphs first.
  std::unordered_map<std::string, std::vector<const TextNode*>> old_paragraphs;
  for (const TextNode* p : old_doc.Paragraphs()) {
    old_paragraphs[CollapseWhitespace(p->text)].push_back(p);
  }
  std::unordered_map<std::string, size_t> paragraph_cursor;
  for (const TextNode* p : new_doc.Paragraphs()) {
    const std::string key = CollapseWhitespace(p->text);
    auto it = old_paragraphs.find(key);
    if (it == old_paragraphs.end()) continue;
    size_t& cursor = paragraph_cursor[key];
    if (cursor >= it->second.size()) continue;
    const TextNode* old_p = it->second[cursor++];
    std::vector<const TextNode*> ns = sentences_of(new_doc, p);
    std::vector<const TextNode*> os = sentences_of(old_doc, old_p);
    if (ns.size() != os.size()) continue;
    bool same = true;
    for (size_t s = 0; s < ns.size() && same; ++s) {
      same = CollapseWhitespace(ns[s]->text) == CollapseWhitespace(os[s]->text);
    }
    if (!same) continue;
    for (size_t s = 0; s < ns.size(); ++s) {
      pairs.push_back({ns[s]->id, os[s]->id});
      matched_new.insert(ns[s]->id);
      matched_old.insert(os[s]->id);
    }
  }

  // Then identical sentences among the rest.
  std::unordered_map<std::string, std::vector<const TextNode*>> old_sentences;
  for (const TextNode* s : old_doc.Sentences()) {
    if (!matched_old.count(s->id)) old_sentences[CollapseWhitespace(s->text)].push_back(s);
  }
  std::unordered_map<std::string, size_t> sentence_cursor;
  for (const TextNode* s : new_doc.Sentences()) {
    if (matched_new.count(s->id)) continue;
    const std::string key = CollapseWhitespace(s->text);
    auto it = old_sentences.find(key);
    if (it == old_sentences.end()) continue;
    size_t& cursor = sentence_cursor[key];
    if (cursor >= it->second.size()) continue;
    pairs.push_back({s->id, it->second[cursor++]->id});
  }
  return pairs;
}

double LocationDistance(int new_paragraph, int new_paragraph_count, int old_paragraph,
                        int old_paragraph_count) {
  const double a = static_cast<double>(new_paragraph) / new_paragraph_count;
  const double b = static_cast<double>(old_paragraph) / old_paragraph_count;
  return std::fabs(a - b);
}

absl::StatusOr<double> LocationDistance(const DocumentGraph& new_doc,
                                        std::string_view new_sentence,
                                        const DocumentGraph& old_doc,
                                        std::string_view old_sentence) {
  auto p_new = new_doc.ParagraphIndex(new_sentence);
  auto p_old = old_doc.ParagraphIndex(old_sentence);
  if (!p_new || !p_old) {
    return absl::InvalidArgumentError("sentence without a paragraph ancestor");
  }
  return LocationDistance(*p_new, new_doc.paragraph_count(), *p_old,
                          old_doc.paragraph_count());
}

absl::StatusOr<PreAlignment> PreAlignDetailed(const DocumentGraph& old_doc,
                                              const DocumentGraph& new_doc,
                                              const AlignConfig& config) {
  RETURN_IF_ERROR(config.Validate());
  if (!old_doc.IsSegmented() || !new_doc.IsSegmented()) {
    return absl::FailedPreconditionError(
        "unsegmented input: both documents need sentence nodes");
  }

  PreAlignment result;
  std::set<std::string> identical_new, identical_old;
  for (const Link& link : MatchIdenticalSentences(old_doc, new_doc)) {
    identical_new.insert(link.new_id);
    identical_old.insert(link.old_id);
  }
  for (const TextNode* s : new_doc.Sentences()) {
    if (!identical_new.count(s->id)) result.residual_new.push_back(s->id);
  }
  for (const TextNode* s : old_doc.Sentences()) {
    if (!identical_old.count(s->id)) result.residual_old.push_back(s->id);
  }

  const size_t k = result.residual_new.size();
  const size_t l = result.residual_old.size();
  const size_t measure_count = config.measures.size();
  const std::vector<std::string> new_texts = SentenceTexts(new_doc, result.residual_new);
  const std::vector<std::string> old_texts = SentenceTexts(old_doc, result.residual_old);

  result.scores = SimilarityTensor(measure_count, k, l);
  if (k > 0 && l > 0) {
    for (size_t m = 0; m < measure_count; ++m) {
      ASSIGN_OR_RETURN(std::vector<double> matrix,
                       config.measures[m]->ScoreMatrix(new_texts, old_texts));
      for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < l; ++j) result.scores.at(m, i, j) = matrix[i * l + j];
      }
    }
  }
  const SimilarityTensor& sim = result.scores;

  std::vector<int> old_paragraph(l);
  for (size_t j = 0; j < l; ++j) {
    old_paragraph[j] = *old_doc.ParagraphIndex(result.residual_old[j]);
  }

  result.candidates.assign(k, {});
  result.selected.assign(k, -1);
  for (size_t i = 0; i < k && l > 0; ++i) {
    std::vector<int>& candidates = result.candidates[i];
    for (size_t m = 0; m < measure_count; ++m) {
      double best = sim.at(m, i, 0);
      for (size_t j = 1; j < l; ++j) best = std::max(best, sim.at(m, i, j));
      if (!(best > config.t1)) continue;
      // Every old sentence attaining the maximum is a candidate, so exact
      // duplicates reach the location tie-break.
      for (size_t j = 0; j < l; ++j) {
        if (sim.at(m, i, j) != best) continue;
        bool all_above_t0 = true;
        for (size_t other = 0; other < measure_count && all_above_t0; ++other) {
          all_above_t0 = sim.at(other, i, j) > config.t0;
        }
        if (all_above_t0) candidates.push_back(static_cast<int>(j));
      }
    }
    if (candidates.empty()) continue;

    std::map<int, int> frequency;
    for (int j : candidates) ++frequency[j];
    int top = 0;
    for (const auto& [j, count] : frequency) top = std::max(top, count);
    const int new_paragraph = *new_doc.ParagraphIndex(result.residual_new[i]);
    int chosen = -1;
    double chosen_distance = 0;
    for (const auto& [j, count] : frequency) {
      if (count != top) continue;
      const double d = LocationDistance(new_paragraph, new_doc.paragraph_count(),
                                        old_paragraph[j], old_doc.paragraph_count());
      if (chosen < 0 || d < chosen_distance ||
          (d == chosen_distance && old_paragraph[j] < old_paragraph[chosen])) {
        chosen = j;
        chosen_distance = d;
      }
    }
    result.selected[i] = chosen;
  }

  // One-to-one: the strongest claimant keeps a contested old sentence.
  result.aligned.assign(k, -1);
  std::vector<int> owner(l, -1);
  auto score_sum = [&](size_t i, size_t j) {
    double total = 0;
    for (size_t m = 0; m < measure_count; ++m) total += sim.at(m, i, j);
    return total;
  };
  for (size_t i = 0; i < k; ++i) {
    const int j = result.selected[i];
    if (j < 0) continue;
    if (owner[j] < 0 || score_sum(i, j) > score_sum(owner[j], j)) owner[j] = static_cast<int>(i);
  }
  for (size_t j = 0; j < l; ++j) {
    if (owner[j] >= 0) result.aligned[owner[j]] = static_cast<int>(j);
  }

  for (size_t i = 0; i < k; ++i) {
    if (result.aligned[i] >= 0) {
      result.edits.push_back(MakeSingleEdit(EditAction::kModify, {result.residual_new[i]},
                                            {result.residual_old[result.aligned[i]]}));
    } else {
      result.edits.push_back(MakeSingleEdit(EditAction::kAdd, {result.residual_new[i]}, {}));
    }
  }
  for (size_t j = 0; j < l; ++j) {
    if (owner[j] < 0) {
      result.edits.push_back(MakeSingleEdit(EditAction::kDelete, {}, {result.residual_old[j]}));
    }
  }
  SortEdits(result.edits, old_doc, new_doc);
  return result;
}

absl::StatusOr<std::vector<Edit>> PreAlign(const DocumentGraph& old_doc,
                                           const DocumentGraph& new_doc,
                                           const AlignConfig& config) {
  ASSIGN_OR_RETURN(PreAlignment result, PreAlignDetailed(old_doc, new_doc, config));
  return std::move(result.edits);
}

absl::StatusOr<std::vector<Link>> GenerateAlignmentNegatives(
    std::span<const Edit> edits, const EmbeddingProvider& embedder,
    const DocumentGraph& old_doc, const DocumentGraph& new_doc) {
  std::vector<Link> positives;
  for (const Edit& e : edits) {
    if (e.granularity == Granularity::kSentence && e.new_nodes.size() == 1 &&
        e.old_nodes.size() == 1) {
      positives.push_back({e.new_nodes[0], e.old_nodes[0]});
    }
  }
  std::vector<Link> negatives;
  if (positives.size() < 2) return negatives;
  std::sort(positives.begin(), positives.end(), [&](const Link& a, const Link& b) {
    return old_doc.PreorderIndex(a.old_id).value_or(-1) <
           old_doc.PreorderIndex(b.old_id).value_or(-1);
  });
  auto text_of = [](const DocumentGraph& doc, const std::string& id) -> absl::StatusOr<std::string> {
    const TextNode* node = doc.Find(id);
    if (node == nullptr) return absl::InvalidArgumentError(absl::StrCat("dangling node: ", id));
    return node->text;
  };
  std::vector<std::vector<double>> old_embeddings;
  std::vector<std::string> old_texts;
  for (const Link& p : positives) {
    ASSIGN_OR_RETURN(std::string text, text_of(old_doc, p.old_id));
    ASSIGN_OR_RETURN(std::vector<double> v, embedder.Embed(text));
    old_texts.push_back(std::move(text));
    old_embeddings.push_back(std::move(v));
  }
  for (const Link& p : positives) {
    ASSIGN_OR_RETURN(std::string text, text_of(new_doc, p.new_id));
    ASSIGN_OR_RETURN(std::vector<double> v, embedder.Embed(text));
    int best = -1;
    double best_score = -1;
    for (size_t c = 0; c < positives.size(); ++c) {
      if (positives[c].old_id == p.old_id) continue;
      const double score =
          text == old_texts[c] ? 100.0 : std::max(0.0, Cosine(v, old_embeddings[c])) * 100.0;
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(c);
      }
    }
    negatives.push_back({p.new_id, positives[best].old_id});
  }
  return negatives;
}

}  // namespace revgraph
