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

#include "revgraph/similarity.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "revgraph/status_macros.h"
#include "revgraph/text.h"

#include <unicode/uchar.h>

namespace revgraph {
namespace {

double RatioFromDistance(size_t distance, size_t a_len, size_t b_len) {
  const size_t longest = std::max(a_len, b_len);
  if (longest == 0) return 100.0;
  return (1.0 - static_cast<double>(distance) / static_cast<double>(longest)) * 100.0;
}

class LevMeasure : public SimilarityMeasure {
 public:
  std::string name() const override { return "lev"; }
  absl::StatusOr<double> Score(std::string_view a, std::string_view b) const override {
    return LevSimilarity(a, b);
  }
  absl::StatusOr<std::vector<double>> ScoreMatrix(
      std::span<const std::string> rows,
      std::span<const std::string> cols) const override {
    return Matrix(rows, cols, [](std::string_view s) { return ToCodePoints(s); });
  }

 protected:
  template <typename Prepare>
  static std::vector<double> Matrix(std::span<const std::string> rows,
                                    std::span<const std::string> cols,
                                    Prepare prepare) {
    std::vector<std::u32string> r, c;
    for (const auto& s : rows) r.push_back(prepare(s));
    for (const auto& s : cols) c.push_back(prepare(s));
    std::vector<double> out(r.size() * c.size());
    for (size_t i = 0; i < r.size(); ++i) {
      for (size_t j = 0; j < c.size(); ++j) {
        out[i * c.size() + j] = LevSimilarity(r[i], c[j]);
      }
    }
    return out;
  }
};

class FuzzyMeasure : public LevMeasure {
 public:
  std::string name() const override { return "fuzzy"; }
  absl::StatusOr<double> Score(std::string_view a, std::string_view b) const override {
    return FuzzySimilarity(a, b);
  }
  absl::StatusOr<std::vector<double>> ScoreMatrix(
      std::span<const std::string> rows,
      std::span<const std::string> cols) const override {
    return Matrix(rows, cols,
                  [](std::string_view s) { return ToCodePoints(TokenSortKey(s)); });
  }
};

class SemMeasure : public SimilarityMeasure {
 public:
  explicit SemMeasure(std::shared_ptr<const EmbeddingProvider> embedder)
      : embedder_(std::move(embedder)) {}

  std::string name() const override { return "sem"; }
  absl::StatusOr<double> Score(std::string_view a, std::string_view b) const override {
    return SemSimilarity(a, b, *embedder_);
  }
  absl::StatusOr<std::vector<double>> ScoreMatrix(
      std::span<const std::string> rows,
      std::span<const std::string> cols) const override {
    std::vector<std::vector<double>> r, c;
    for (const auto& s : rows) {
      ASSIGN_OR_RETURN(auto v, embedder_->Embed(s));
      r.push_back(std::move(v));
    }
    for (const auto& s : cols) {
      ASSIGN_OR_RETURN(auto v, embedder_->Embed(s));
      c.push_back(std::move(v));
    }
    std::vector<double> out(r.size() * c.size());
    for (size_t i = 0; i < r.size(); ++i) {
      for (size_t j = 0; j < c.size(); ++j) {
        out[i * c.size() + j] =
            rows[i] == cols[j] ? 100.0 : std::max(0.0, Cosine(r[i], c[j])) * 100.0;
      }
    }
    return out;
  }

 private:
  std::shared_ptr<const EmbeddingProvider> embedder_;
};

uint64_t Fnv1a(std::u32string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (char32_t c : s) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (static_cast<uint32_t>(c) >> shift) & 0xFF;
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace

size_t LevenshteinDistance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diagonal = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

double LevSimilarity(std::u32string_view a, std::u32string_view b) {
  if (a == b) return 100.0;
  return RatioFromDistance(LevenshteinDistance(a, b), a.size(), b.size());
}

double LevSimilarity(std::string_view a, std::string_view b) {
  return LevSimilarity(ToCodePoints(a), ToCodePoints(b));
}

std::string TokenSortKey(std::string_view text) {
  std::vector<std::string> tokens = SplitOnWhitespace(text);
  std::sort(tokens.begin(), tokens.end());
  return absl::StrJoin(tokens, " ");
}

double FuzzySimilarity(std::string_view a, std::string_view b) {
  return LevSimilarity(TokenSortKey(a), TokenSortKey(b));
}

absl::StatusOr<std::vector<double>> TrigramEmbedder::Embed(std::string_view text) const {
  std::u32string cps = U" ";
  for (char32_t c : ToCodePoints(text)) {
    cps.push_back(static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))));
  }
  cps.push_back(U' ');
  std::vector<double> v(dimension_, 0.0);
  for (size_t i = 0; i + 3 <= cps.size(); ++i) {
    v[Fnv1a(std::u32string_view(cps).substr(i, 3)) % dimension_] += 1.0;
  }
  return v;
}

TableEmbedder::TableEmbedder(
    std::map<std::string, std::vector<double>, std::less<>> table,
    std::shared_ptr<const EmbeddingProvider> fallback)
    : table_(std::move(table)), fallback_(std::move(fallback)) {
  if (!table_.empty()) {
    dimension_ = static_cast<int>(table_.begin()->second.size());
  } else if (fallback_) {
    dimension_ = fallback_->dimension();
  }
}

absl::StatusOr<std::vector<double>> TableEmbedder::Embed(std::string_view text) const {
  auto it = table_.find(text);
  if (it != table_.end()) return it->second;
  if (fallback_) return fallback_->Embed(text);
  return absl::NotFoundError(absl::StrCat("no embedding for: ", std::string(text)));
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) return 0.0;
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

absl::StatusOr<double> SemSimilarity(std::string_view a, std::string_view b,
                                     const EmbeddingProvider& embedder) {
  if (a == b) return 100.0;
  ASSIGN_OR_RETURN(std::vector<double> ea, embedder.Embed(a));
  ASSIGN_OR_RETURN(std::vector<double> eb, embedder.Embed(b));
  return std::max(0.0, Cosine(ea, eb)) * 100.0;
}

absl::StatusOr<std::vector<double>> SimilarityMeasure::ScoreMatrix(
    std::span<const std::string> rows, std::span<const std::string> cols) const {
  std::vector<double> out;
  out.reserve(rows.size() * cols.size());
  for (const auto& r : rows) {
    for (const auto& c : cols) {
      ASSIGN_OR_RETURN(double s, Score(r, c));
      out.push_back(s);
    }
  }
  return out;
}

std::shared_ptr<const SimilarityMeasure> MakeLevMeasure() {
  return std::make_shared<LevMeasure>();
}

std::shared_ptr<const SimilarityMeasure> MakeFuzzyMeasure() {
  return std::make_shared<FuzzyMeasure>();
}

std::shared_ptr<const SimilarityMeasure> MakeSemMeasure(
    std::shared_ptr<const EmbeddingProvider> embedder) {
  if (embedder == nullptr) embedder = std::make_shared<TrigramEmbedder>();
  return std::make_shared<SemMeasure>(std::move(embedder));
}

absl::StatusOr<MeasureList> MakeMeasures(
    std::string_view names, std::shared_ptr<const EmbeddingProvider> embedder) {
  MeasureList out;
  for (absl::string_view raw : absl::StrSplit(absl::string_view(names.data(), names.size()),
                                              ',', absl::SkipWhitespace())) {
    std::string name(TrimWhitespace(std::string_view(raw.data(), raw.size())));
    if (name == "lev") {
      out.push_back(MakeLevMeasure());
    } else if (name == "fuzzy") {
      out.push_back(MakeFuzzyMeasure());
    } else if (name == "sem") {
      out.push_back(MakeSemMeasure(embedder));
    } else {
      return absl::InvalidArgumentError(absl::StrCat("unknown similarity measure: ", name));
    }
  }
  if (out.empty()) return absl::InvalidArgumentError("no similarity measures given");
  return out;
}

}  // namespace revgraph
