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

// Sentence segmentation with an ensemble of pluggable splitters. The
// ensemble keeps the candidate with the fewest sentences, which suppresses
// spurious splits at dots inside numbers and abbreviations.

#ifndef REVGRAPH_SEGMENTATION_H_
#define REVGRAPH_SEGMENTATION_H_

#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "revgraph/doc_model.h"

namespace revgraph {

// Half-open byte range into the paragraph text.
struct Span {
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const Span&) const = default;
};

struct Segmenter {
  std::string name;
  std::function<std::vector<Span>(std::string_view)> split;
};

// Lowercase abbreviations without their final dot ("e.g", "fig").
class AbbreviationSet {
 public:
  AbbreviationSet() = default;
  explicit AbbreviationSet(std::set<std::string, std::less<>> entries)
      : entries_(std::move(entries)) {}

  // The list shipped in data/abbreviations.txt.
  static const AbbreviationSet& Default();

  // Adds one entry per non-empty, non-'#' line of the file.
  absl::Status MergeFile(const std::string& path);

  bool Contains(std::string_view word) const;
  size_t size() const { return entries_.size(); }

 private:
  std::set<std::string, std::less<>> entries_{};
};

// Checks that spans are ordered, non-overlapping, trimmed and non-empty,
// and that everything between them is whitespace.
absl::Status ValidateSpans(std::string_view text, std::span<const Span> spans);

// Splits at runs of . ! ? (plus closing quotes or brackets) followed by
// whitespace and an uppercase letter, unless the word before a single dot
// is a known abbreviation.
std::vector<Span> DefaultSplit(std::string_view text,
                               const AbbreviationSet& abbreviations =
                                   AbbreviationSet::Default());

// Splits after every run of . ! ? followed by whitespace.
std::vector<Span> NaiveSplit(std::string_view text);

Segmenter MakeDefaultSegmenter(
    std::shared_ptr<const AbbreviationSet> abbreviations = nullptr);
Segmenter MakeNaiveSegmenter();

// Registry lookup by name ("default", "naive").
absl::StatusOr<std::vector<Segmenter>> SegmentersByName(
    std::span<const std::string> names,
    std::shared_ptr<const AbbreviationSet> abbreviations = nullptr);

// Runs every segmenter and returns the candidate with the fewest spans;
// ties go to the earliest segmenter in the list.
absl::StatusOr<std::vector<Span>> SegmentParagraph(
    std::string_view text, std::span<const Segmenter> segmenters);

std::vector<std::string> SpanTexts(std::string_view text,
                                   std::span<const Span> spans);

// Fills in sentences for every unprotected paragraph. Paragraphs that
// already carry sentences are kept unless `overwrite` is set.
absl::StatusOr<DocumentInput> SegmentDocument(
    const DocumentInput& input, std::span<const Segmenter> segmenters,
    bool overwrite = false);

absl::StatusOr<DocumentGraph> SegmentGraph(const DocumentGraph& graph,
                                           std::span<const Segmenter> segmenters,
                                           bool overwrite = false);

}  // namespace revgraph

#endif  // REVGRAPH_SEGMENTATION_H_
