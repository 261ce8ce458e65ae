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


// Reading and writing corpora, and building the train/test datasets.

#ifndef REVGRAPH_CORPUS_IO_H_
#define REVGRAPH_CORPUS_IO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "revgraph/doc_model.h"
#include "revgraph/segmentation.h"
#include "revgraph/similarity.h"

namespace revgraph {

absl::StatusOr<std::string> ReadFile(const std::string& path);
// Writes through a temporary file and renames it into place.
absl::Status WriteFile(const std::string& path, const std::string& content);

struct ManifestEntry {
  std::string pair_id;
  std::string old_path;
  std::string new_path;
  std::vector<std::string> review_paths;
  std::string response_path;    // optional
  std::string annotation_path;  // optional edits JSONL
  std::string requests_path;    // optional requests JSONL
  std::string links_path;       // optional cross-links JSONL
};

// Paths are stored resolved against the manifest's directory.
struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  uint64_t seed = 0;
};

absl::StatusOr<CorpusManifest> LoadManifest(const std::string& path);
absl::Status SaveManifest(const std::string& path, const CorpusManifest& manifest);

absl::StatusOr<DocumentGraph> LoadDocument(const std::string& path);
absl::Status SaveDocument(const std::string& path, const DocumentGraph& doc);

// Parses edits JSONL. Errors carry "path:line".
absl::StatusOr<std::vector<Edit>> LoadEdits(const std::string& path);
absl::Status SaveEdits(const std::string& path, std::span<const Edit> edits);

struct CorpusPair {
  std::string pair_id;
  DocumentGraph old_doc;
  DocumentGraph new_doc;
  std::vector<DocumentGraph> reviews;
  std::optional<DocumentGraph> response;
  std::vector<Edit> edits;
  std::vector<ReviewRequest> requests;
  std::vector<CrossLink> links;
};

struct LoadOptions {
  // Segment documents that arrive without sentences.
  std::vector<Segmenter> segmenters = {MakeDefaultSegmenter()};
};

// Loads and validates one pair; the first violation is reported with the
// file (and line for JSONL inputs) it came from.
absl::StatusOr<CorpusPair> LoadPair(const ManifestEntry& entry,
                                    const LoadOptions& options = {});

// Loads every entry, in parallel. Errors are prefixed with the pair id.
absl::StatusOr<std::vector<CorpusPair>> LoadCorpus(const CorpusManifest& manifest,
                                                   const LoadOptions& options = {});

// Writes documents and annotations under `dir`, returning the entry.
absl::StatusOr<ManifestEntry> SavePair(const std::string& dir, const CorpusPair& pair);

inline constexpr double kTrainFraction = 0.2;

struct DocumentSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::vector<std::string> warnings;
};

// floor(0.2 n) documents go to train; the rest to test. Both lists keep
// the input order.
DocumentSplit SplitDocuments(std::span<const std::string> doc_ids, uint64_t seed);

struct IntentSample {
  std::string pair_id;
  std::string edit_id;
  EditAction action = EditAction::kModify;
  std::string old_text;
  std::string new_text;
  std::string old_section;
  std::string new_section;
  std::optional<EditIntent> intent;
};

struct IntentDataset {
  std::vector<IntentSample> train;
  std::vector<IntentSample> test;
  std::vector<std::string> warnings;
};

// Labeled sentence edits, split by document.
IntentDataset BuildIntentDataset(std::span<const CorpusPair> corpus, uint64_t seed);

struct AlignmentSample {
  std::string pair_id;
  std::string new_id;
  std::string old_id;
  std::string new_text;
  std::string old_text;
  bool aligned = false;
};

struct AlignmentDataset {
  std::vector<AlignmentSample> train;
  std::vector<AlignmentSample> test;
  std::vector<std::string> warnings;
};

absl::StatusOr<AlignmentDataset> BuildAlignmentDataset(std::span<const CorpusPair> corpus,
                                                       const EmbeddingProvider& embedder,
                                                       uint64_t seed);

inline constexpr double kDefaultNegativeRatio = 440.0 / 560.0;

struct RequestSample {
  std::string pair_id;
  std::string sentence_id;
  std::string text;
  bool is_request = false;
};

struct RequestDataset {
  std::vector<RequestSample> train;
  std::vector<RequestSample> test;
  std::vector<std::string> warnings;
};

// Positives are annotated requests; floor(ratio * positives) negatives are
// drawn uniformly from the other sentences of the same review documents.
absl::StatusOr<RequestDataset> BuildRequestDataset(std::span<const CorpusPair> corpus,
                                                   uint64_t seed,
                                                   double ratio = kDefaultNegativeRatio);

}  // namespace revgraph

#endif  // REVGRAPH_CORPUS_IO_H_
