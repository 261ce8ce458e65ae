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

// Sentence pre-alignment between two versions of a document.
//
// Identical paragraphs and then identical sentences are set aside. Every
// remaining new sentence is scored against every remaining old sentence
// with each similarity measure. For each measure the best-scoring old
// sentences become candidates when that score exceeds `t1` and every
// measure exceeds `t0` on the same pair. The most frequent candidate wins;
// ties go to the candidate whose paragraph sits at the closest relative
// position. New sentences without candidates are additions, old sentences
// never chosen are deletions.

#ifndef REVGRAPH_ALIGNMENT_H_
#define REVGRAPH_ALIGNMENT_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "revgraph/doc_model.h"
#include "revgraph/similarity.h"

namespace revgraph {

struct AlignConfig {
  double t0 = 40.0;
  double t1 = 85.0;
  MeasureList measures;

  // Requires 0 < t0 < t1 < 100 and at least one measure.
  absl::Status Validate() const;
};

// lev, fuzzy and sem (trigram embedder unless `embedder` is given) with the
// default thresholds.
AlignConfig DefaultAlignConfig(
    std::shared_ptr<const EmbeddingProvider> embedder = nullptr);

// Scores for `measure_count` measures over k new x l old sentences.
class SimilarityTensor {
 public:
  SimilarityTensor() = default;
  SimilarityTensor(size_t measures, size_t k, size_t l)
      : measures_(measures), k_(k), l_(l), scores_(measures * k * l, 0.0) {}

  size_t measures() const { return measures_; }
  size_t k() const { return k_; }
  size_t l() const { return l_; }

  double at(size_t m, size_t i, size_t j) const { return scores_[(m * k_ + i) * l_ + j]; }
  double& at(size_t m, size_t i, size_t j) { return scores_[(m * k_ + i) * l_ + j]; }

 private:
  size_t measures_ = 0;
  size_t k_ = 0;
  size_t l_ = 0;
  std::vector<double> scores_;
};

// Pairs of identical sentences (new id, old id) removed before scoring:
// first all sentences of identical paragraphs, then identical sentences
// among the rest, both matched greedily in document order. Texts are
// compared after whitespace collapsing.
std::vector<Link> MatchIdenticalSentences(const DocumentGraph& old_doc,
                                          const DocumentGraph& new_doc);

// |p_new / #P_new - p_old / #P_old| over linear paragraph indices.
double LocationDistance(int new_paragraph, int new_paragraph_count,
                        int old_paragraph, int old_paragraph_count);
absl::StatusOr<double> LocationDistance(const DocumentGraph& new_doc,
                                        std::string_view new_sentence,
                                        const DocumentGraph& old_doc,
                                        std::string_view old_sentence);

// Full trace of a pre-alignment run.
struct PreAlignment {
  std::vector<std::string> residual_new;  // k sentence ids
  std::vector<std::string> residual_old;  // l sentence ids
  SimilarityTensor scores;
  std::vector<std::vector<int>> candidates;  // C_i, indices into residual_old
  std::vector<int> selected;  // per i: chosen j before conflicts, or -1
  std::vector<int> aligned;   // per i: final j after conflicts, or -1
  std::vector<Edit> edits;
};

// When several new sentences select the same old sentence, the one with
// the highest score sum over all measures keeps it (ties: smallest i) and
// the others become additions, so the output is always one-to-one.
absl::StatusOr<PreAlignment> PreAlignDetailed(const DocumentGraph& old_doc,
                                              const DocumentGraph& new_doc,
                                              const AlignConfig& config);

absl::StatusOr<std::vector<Edit>> PreAlign(const DocumentGraph& old_doc,
                                           const DocumentGraph& new_doc,
                                           const AlignConfig& config);

// For each one-to-one revision pair, pairs its new sentence with the old
// sentence of another revision pair that is most similar under the
// semantic measure (ties: document order). Documents with fewer than two
// revision pairs yield nothing. Returned links are (new id, old id).
absl::StatusOr<std::vector<Link>> GenerateAlignmentNegatives(
    std::span<const Edit> edits, const EmbeddingProvider& embedder,
    const DocumentGraph& old_doc, const DocumentGraph& new_doc);

}  // namespace revgraph

#endif  // REVGRAPH_ALIGNMENT_H_
