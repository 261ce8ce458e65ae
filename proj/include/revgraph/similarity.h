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

// Similarity measures on a 0..100 scale (100 = perfect match) used by
// sentence pre-alignment, and the embedding provider abstraction behind
// the semantic measure.

#ifndef REVGRAPH_SIMILARITY_H_
#define REVGRAPH_SIMILARITY_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace revgraph {

// Edit distance over Unicode code points with unit costs.
size_t LevenshteinDistance(std::u32string_view a, std::u32string_view b);

// (1 - dist / max(|a|, |b|)) * 100, counted in code points; 100 when both
// strings are empty.
double LevSimilarity(std::string_view a, std::string_view b);
double LevSimilarity(std::u32string_view a, std::u32string_view b);

// Whitespace tokens sorted lexicographically and re-joined by single
// spaces.
std::string TokenSortKey(std::string_view text);

// Token-sort ratio: LevSimilarity of the two token-sorted strings.
double FuzzySimilarity(std::string_view a, std::string_view b);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::string name() const = 0;
  virtual int dimension() const = 0;
  // Provider failures are reported as kUnavailable (retryable).
  virtual absl::StatusOr<std::vector<double>> Embed(std::string_view text) const = 0;
};

// Deterministic character-trigram embedder: lowercased code-point trigrams
// of " text " hashed (FNV-1a) into `dimension` buckets.
class TrigramEmbedder : public EmbeddingProvider {
 public:
  explicit TrigramEmbedder(int dimension = 1024) : dimension_(dimension) {}

  std::string name() const override { return "trigram"; }
  int dimension() const override { return dimension_; }
  absl::StatusOr<std::vector<double>> Embed(std::string_view text) const override;

 private:
  int dimension_;
};

// Looks texts up in a fixed table; unknown texts are delegated to
// `fallback` or rejected with kNotFound.
class TableEmbedder : public EmbeddingProvider {
 public:
  TableEmbedder(std::map<std::string, std::vector<double>, std::less<>> table,
                std::shared_ptr<const EmbeddingProvider> fallback = nullptr);

  std::string name() const override { return "table"; }
  int dimension() const override { return dimension_; }
  absl::StatusOr<std::vector<double>> Embed(std::string_view text) const override;

 private:
  std::map<std::string, std::vector<double>, std::less<>> table_;
  std::shared_ptr<const EmbeddingProvider> fallback_;
  int dimension_ = 0;
};

// Cosine similarity; 0 when either vector is zero or dimensions differ.
double Cosine(std::span<const double> a, std::span<const double> b);

// max(0, cos(emb(a), emb(b))) * 100; identical strings score 100.
absl::StatusOr<double> SemSimilarity(std::string_view a, std::string_view b,
                                     const EmbeddingProvider& embedder);

// A named similarity measure. ScoreMatrix lets implementations prepare
// each string once (decoding, sorting, embedding) before scoring all
// pairs; the result is row-major rows.size() x cols.size().
class SimilarityMeasure {
 public:
  virtual ~SimilarityMeasure() = default;

  virtual std::string name() const = 0;
  virtual absl::StatusOr<double> Score(std::string_view a, std::string_view b) const = 0;
  virtual absl::StatusOr<std::vector<double>> ScoreMatrix(
      std::span<const std::string> rows, std::span<const std::string> cols) const;
};

using MeasureList = std::vector<std::shared_ptr<const SimilarityMeasure>>;

std::shared_ptr<const SimilarityMeasure> MakeLevMeasure();
std::shared_ptr<const SimilarityMeasure> MakeFuzzyMeasure();
std::shared_ptr<const SimilarityMeasure> MakeSemMeasure(
    std::shared_ptr<const EmbeddingProvider> embedder);

// Parses a comma-separated list of "lev", "fuzzy", "sem".
absl::StatusOr<MeasureList> MakeMeasures(
    std::string_view names, std::shared_ptr<const EmbeddingProvider> embedder);

}  // namespace revgraph

#endif  // REVGRAPH_SIMILARITY_H_
