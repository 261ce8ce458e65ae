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

#include "revgraph/corpus_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "revgraph/alignment.h"
#include "revgraph/serialization.h"
#include "revgraph/status_macros.h"

namespace revgraph {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

absl::Status Annotate(const absl::Status& status, const std::string& prefix) {
  return absl::Status(status.code(), absl::StrCat(prefix, ": ", std::string(status.message())));
}

absl::StatusOr<json> ReadJson(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) {
    // Re-parse with exceptions to recover the position.
    try {
      json reparsed = json::parse(text);
      (void)reparsed;
    } catch (const json::parse_error& e) {
      return absl::InvalidArgumentError(absl::StrCat(path, ": ", e.what()));
    }
    return absl::InvalidArgumentError(absl::StrCat(path, ": invalid JSON"));
  }
  return value;
}

// Parses JSONL into records, keeping each record's line number.
template <typename T, typename Parse>
absl::StatusOr<std::vector<std::pair<int, T>>> ReadRecords(const std::string& path,
                                                           Parse parse) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  std::vector<std::pair<int, T>> records;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = absl::StrCat(path, ":", line_number);
    json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) return absl::InvalidArgumentError(absl::StrCat(where, ": invalid JSON"));
    absl::StatusOr<T> record = parse(value);
    if (!record.ok()) return Annotate(record.status(), where);
    records.emplace_back(line_number, *std::move(record));
  }
  return records;
}

template <typename T, typename ToJson>
absl::Status WriteRecords(const std::string& path, std::span<const T> records, ToJson to_json) {
  std::string out;
  for (const T& r : records) absl::StrAppend(&out, to_json(r).dump(), "\n");
  return WriteFile(path, out);
}

std::string Resolve(const fs::path& base, const std::string& path) {
  if (path.empty()) return path;
  const fs::path p(path);
  return p.is_absolute() ? p.string() : (base / p).lexically_normal().string();
}

std::string Relativize(const fs::path& base, const std::string& path) {
  if (path.empty()) return path;
  return fs::path(path).lexically_proximate(base).string();
}

absl::StatusOr<DocumentGraph> LoadSegmented(const std::string& path, const LoadOptions& options) {
  ASSIGN_OR_RETURN(DocumentGraph doc, LoadDocument(path));
  if (doc.IsSegmented() || options.segmenters.empty()) return doc;
  absl::StatusOr<DocumentGraph> segmented = SegmentGraph(doc, options.segmenters);
  if (!segmented.ok()) return Annotate(segmented.status(), path);
  return segmented;
}

std::string JoinTexts(const DocumentGraph& doc, std::span<const std::string> ids) {
  std::vector<std::string> texts;
  for (const std::string& id : ids) {
    if (const TextNode* node = doc.Find(id)) texts.push_back(node->text);
  }
  return absl::StrJoin(texts, " ");
}

std::string SectionTitle(const DocumentGraph& doc, std::span<const std::string> ids) {
  if (ids.empty()) return "";
  const TextNode* section = doc.Ancestor(ids.front(), Granularity::kSection);
  return section == nullptr ? "" : section->text;
}

template <typename Sample>
void SplitSamples(std::vector<Sample> samples, uint64_t seed, std::vector<Sample>& train,
                  std::vector<Sample>& test, std::vector<std::string>& warnings) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const Sample& s : samples) {
    if (seen.insert(s.pair_id).second) ids.push_back(s.pair_id);
  }
  DocumentSplit split = SplitDocuments(ids, seed);
  const std::set<std::string> train_ids(split.train.begin(), split.train.end());
  for (Sample& s : samples) {
    (train_ids.count(s.pair_id) ? train : test).push_back(std::move(s));
  }
  warnings.insert(warnings.end(), split.warnings.begin(), split.warnings.end());
}

}  // namespace

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("cannot read ", path));
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", tmp));
    out << content;
    out.flush();
    if (!out) return absl::DataLossError(absl::StrCat("short write to ", tmp));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) return absl::InternalError(absl::StrCat("rename ", tmp, ": ", ec.message()));
  return absl::OkStatus();
}

absl::StatusOr<CorpusManifest> LoadManifest(const std::string& path) {
  ASSIGN_OR_RETURN(json j, ReadJson(path));
  const fs::path base = fs::path(path).parent_path();
  CorpusManifest manifest;
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": manifest needs an 'entries' array"));
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      return absl::InvalidArgumentError(absl::StrCat(path, ": 'seed' must be a nonnegative integer"));
    }
    manifest.seed = j["seed"].get<uint64_t>();
  }
  std::set<std::string> ids;
  for (size_t i = 0; i < j["entries"].size(); ++i) {
    const json& e = j["entries"][i];
    const std::string where = absl::StrCat(path, ": entries[", i, "]");
    auto get = [&](const char* key, bool required) -> absl::StatusOr<std::string> {
      if (!e.contains(key) || e[key].is_null()) {
        if (required) return absl::InvalidArgumentError(absl::StrCat(where, ": missing '", key, "'"));
        return std::string();
      }
      if (!e[key].is_string()) {
        return absl::InvalidArgumentError(absl::StrCat(where, ": '", key, "' must be a string"));
      }
      return e[key].get<std::string>();
    };
    ManifestEntry entry;
    ASSIGN_OR_RETURN(entry.pair_id, get("pair_id", true));
    ASSIGN_OR_RETURN(std::string old_path, get("old_path", true));
    ASSIGN_OR_RETURN(std::string new_path, get("new_path", true));
    ASSIGN_OR_RETURN(std::string response_path, get("response_path", false));
    ASSIGN_OR_RETURN(std::string annotation_path, get("annotation_path", false));
    ASSIGN_OR_RETURN(std::string requests_path, get("requests_path", false));
    ASSIGN_OR_RETURN(std::string links_path, get("links_path", false));
    entry.old_path = Resolve(base, old_path);
    entry.new_path = Resolve(base, new_path);
    entry.response_path = Resolve(base, response_path);
    entry.annotation_path = Resolve(base, annotation_path);
    entry.requests_path = Resolve(base, requests_path);
    entry.links_path = Resolve(base, links_path);
    if (e.contains("review_paths")) {
      if (!e["review_paths"].is_array()) {
        return absl::InvalidArgumentError(absl::StrCat(where, ": 'review_paths' must be an array"));
      }
      for (const json& r : e["review_paths"]) {
        if (!r.is_string()) {
          return absl::InvalidArgumentError(absl::StrCat(where, ": 'review_paths' must hold strings"));
        }
        entry.review_paths.push_back(Resolve(base, r.get<std::string>()));
      }
    }
    if (!ids.insert(entry.pair_id).second) {
      return absl::InvalidArgumentError(absl::StrCat(where, ": duplicate pair_id '", entry.pair_id, "'"));
    }
    for (const std::string* p : {&entry.old_path, &entry.new_path}) {
      if (!fs::exists(*p)) return absl::NotFoundError(absl::StrCat(where, ": missing file ", *p));
    }
    for (const std::string& p : entry.review_paths) {
      if (!fs::exists(p)) return absl::NotFoundError(absl::StrCat(where, ": missing file ", p));
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

absl::Status SaveManifest(const std::string& path, const CorpusManifest& manifest) {
  const fs::path base = fs::path(path).parent_path().empty() ? fs::path(".")
                                                             : fs::path(path).parent_path();
  json entries = json::array();
  for (const ManifestEntry& e : manifest.entries) {
    json reviews = json::array();
    for (const std::string& r : e.review_paths) reviews.push_back(Relativize(base, r));
    json ej = {{"pair_id", e.pair_id},
               {"old_path", Relativize(base, e.old_path)},
               {"new_path", Relativize(base, e.new_path)},
               {"review_paths", std::move(reviews)}};
    if (!e.response_path.empty()) ej["response_path"] = Relativize(base, e.response_path);
    if (!e.annotation_path.empty()) ej["annotation_path"] = Relativize(base, e.annotation_path);
    if (!e.requests_path.empty()) ej["requests_path"] = Relativize(base, e.requests_path);
    if (!e.links_path.empty()) ej["links_path"] = Relativize(base, e.links_path);
    entries.push_back(std::move(ej));
  }
  json j = {{"schema_version", kSchemaVersion}, {"seed", manifest.seed}, {"entries", entries}};
  return WriteFile(path, j.dump(2) + "\n");
}

absl::StatusOr<DocumentGraph> LoadDocument(const std::string& path) {
  ASSIGN_OR_RETURN(json j, ReadJson(path));
  absl::StatusOr<DocumentInput> input = DocumentInputFromJson(j);
  if (!input.ok()) return Annotate(input.status(), path);
  absl::StatusOr<DocumentGraph> doc = BuildDocument(*input);
  if (!doc.ok()) return Annotate(doc.status(), path);
  return doc;
}

absl::Status SaveDocument(const std::string& path, const DocumentGraph& doc) {
  return WriteFile(path, DocumentToJson(doc).dump(2) + "\n");
}

absl::StatusOr<std::vector<Edit>> LoadEdits(const std::string& path) {
  ASSIGN_OR_RETURN(auto records, ReadRecords<Edit>(path, EditFromJson));
  std::vector<Edit> edits;
  for (auto& [line, edit] : records) edits.push_back(std::move(edit));
  return edits;
}

absl::Status SaveEdits(const std::string& path, std::span<const Edit> edits) {
  return WriteRecords(path, edits, EditToJson);
}

absl::StatusOr<CorpusPair> LoadPair(const ManifestEntry& entry, const LoadOptions& options) {
  CorpusPair pair;
  pair.pair_id = entry.pair_id;
  ASSIGN_OR_RETURN(pair.old_doc, LoadSegmented(entry.old_path, options));
  ASSIGN_OR_RETURN(pair.new_doc, LoadSegmented(entry.new_path, options));
  for (const std::string& path : entry.review_paths) {
    ASSIGN_OR_RETURN(DocumentGraph review, LoadSegmented(path, options));
    pair.reviews.push_back(std::move(review));
  }
  if (!entry.response_path.empty()) {
    ASSIGN_OR_RETURN(pair.response, LoadSegmented(entry.response_path, options));
  }

  if (!entry.annotation_path.empty()) {
    ASSIGN_OR_RETURN(auto records, ReadRecords<Edit>(entry.annotation_path, EditFromJson));
    for (auto& [line, edit] : records) {
      std::vector<std::string> violations = ValidateEdit(edit, pair.old_doc, pair.new_doc);
      if (!violations.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat(entry.annotation_path, ":", line, ": ", violations.front()));
      }
      pair.edits.push_back(std::move(edit));
    }
    std::vector<std::string> violations = ValidateEditSet(pair.edits, pair.old_doc, pair.new_doc);
    if (!violations.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(entry.annotation_path, ": ", violations.front()));
    }
  }

  if (!entry.requests_path.empty()) {
    ASSIGN_OR_RETURN(auto records, ReadRecords<ReviewRequest>(entry.requests_path, RequestFromJson));
    for (auto& [line, request] : records) {
      const bool known = std::any_of(pair.reviews.begin(), pair.reviews.end(),
                                     [&](const DocumentGraph& r) {
                                       const TextNode* n = r.Find(request.sentence_id);
                                       return n && n->granularity == Granularity::kSentence;
                                     });
      if (!known) {
        return absl::InvalidArgumentError(absl::StrCat(entry.requests_path, ":", line,
                                                       ": dangling node: ", request.sentence_id));
      }
      pair.requests.push_back(std::move(request));
    }
  }

  if (!entry.links_path.empty()) {
    ASSIGN_OR_RETURN(auto records, ReadRecords<CrossLink>(entry.links_path, CrossLinkFromJson));
    const DocumentGraph* response = pair.response ? &*pair.response : nullptr;
    for (auto& [line, link] : records) {
      std::vector<std::string> violations =
          ValidateCrossLink(link, pair.edits, pair.reviews, response, pair.requests);
      if (!violations.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat(entry.links_path, ":", line, ": ", violations.front()));
      }
      pair.links.push_back(std::move(link));
    }
  }
  return pair;
}

absl::StatusOr<std::vector<CorpusPair>> LoadCorpus(const CorpusManifest& manifest,
                                                   const LoadOptions& options) {
  std::vector<std::future<absl::StatusOr<CorpusPair>>> pending;
  for (const ManifestEntry& entry : manifest.entries) {
    pending.push_back(std::async(std::launch::async,
                                 [&entry, &options] { return LoadPair(entry, options); }));
  }
  std::vector<CorpusPair> corpus;
  absl::Status first_error;
  for (size_t i = 0; i < pending.size(); ++i) {
    absl::StatusOr<CorpusPair> pair = pending[i].get();
    if (!pair.ok()) {
      if (first_error.ok()) first_error = Annotate(pair.status(), manifest.entries[i].pair_id);
      continue;
    }
    corpus.push_back(*std::move(pair));
  }
  if (!first_error.ok()) return first_error;
  return corpus;
}

absl::StatusOr<ManifestEntry> SavePair(const std::string& dir, const CorpusPair& pair) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return absl::PermissionDeniedError(absl::StrCat("cannot create ", dir, ": ", ec.message()));
  const fs::path base(dir);
  auto file = [&](const std::string& suffix) {
    return (base / absl::StrCat(pair.pair_id, suffix)).string();
  };
  ManifestEntry entry;
  entry.pair_id = pair.pair_id;
  entry.old_path = file(".old.json");
  entry.new_path = file(".new.json");
  RETURN_IF_ERROR(SaveDocument(entry.old_path, pair.old_doc));
  RETURN_IF_ERROR(SaveDocument(entry.new_path, pair.new_doc));
  for (size_t i = 0; i < pair.reviews.size(); ++i) {
    entry.review_paths.push_back(file(absl::StrCat(".review", i, ".json")));
    RETURN_IF_ERROR(SaveDocument(entry.review_paths.back(), pair.reviews[i]));
  }
  if (pair.response) {
    entry.response_path = file(".response.json");
    RETURN_IF_ERROR(SaveDocument(entry.response_path, *pair.response));
  }
  entry.annotation_path = file(".edits.jsonl");
  RETURN_IF_ERROR(SaveEdits(entry.annotation_path, pair.edits));
  if (!pair.requests.empty()) {
    entry.requests_path = file(".requests.jsonl");
    RETURN_IF_ERROR(WriteRecords(entry.requests_path, std::span<const ReviewRequest>(pair.requests),
                                 RequestToJson));
  }
  if (!pair.links.empty()) {
    entry.links_path = file(".links.jsonl");
    RETURN_IF_ERROR(WriteRecords(entry.links_path, std::span<const CrossLink>(pair.links),
                                 CrossLinkToJson));
  }
  return entry;
}

DocumentSplit SplitDocuments(std::span<const std::string> doc_ids, uint64_t seed) {
  DocumentSplit split;
  const size_t n = doc_ids.size();
  const size_t n_train = static_cast<size_t>(std::floor(kTrainFraction * n + 1e-9));
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> in_train(n, false);
  for (size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;
  for (size_t i = 0; i < n; ++i) {
    (in_train[i] ? split.train : split.test).push_back(doc_ids[i]);
  }
  if (n > 0 && split.train.empty()) {
    split.warnings.push_back(
        absl::StrCat("training split is empty: ", n, " document(s) are too few for a 20% share"));
  }
  return split;
}

IntentDataset BuildIntentDataset(std::span<const CorpusPair> corpus, uint64_t seed) {
  std::vector<IntentSample> samples;
  for (const CorpusPair& pair : corpus) {
    for (const Edit& e : pair.edits) {
      if (e.granularity != Granularity::kSentence) continue;
      IntentSample s;
      s.pair_id = pair.pair_id;
      s.edit_id = e.id;
      s.action = e.action;
      s.old_text = JoinTexts(pair.old_doc, e.old_nodes);
      s.new_text = JoinTexts(pair.new_doc, e.new_nodes);
      s.old_section = SectionTitle(pair.old_doc, e.old_nodes);
      s.new_section = SectionTitle(pair.new_doc, e.new_nodes);
      if (!e.intents.empty()) s.intent = *e.intents.begin();
      samples.push_back(std::move(s));
    }
  }
  IntentDataset dataset;
  SplitSamples(std::move(samples), seed, dataset.train, dataset.test, dataset.warnings);
  return dataset;
}

absl::StatusOr<AlignmentDataset> BuildAlignmentDataset(std::span<const CorpusPair> corpus,
                                                       const EmbeddingProvider& embedder,
                                                       uint64_t seed) {
  std::vector<AlignmentSample> samples;
  for (const CorpusPair& pair : corpus) {
    auto text = [&](const DocumentGraph& doc, const std::string& id) {
      const TextNode* node = doc.Find(id);
      return node == nullptr ? std::string() : node->text;
    };
    for (const Edit& e : pair.edits) {
      if (e.granularity != Granularity::kSentence || e.new_nodes.size() != 1 ||
          e.old_nodes.size() != 1) {
        continue;
      }
      samples.push_back({pair.pair_id, e.new_nodes[0], e.old_nodes[0],
                         text(pair.new_doc, e.new_nodes[0]), text(pair.old_doc, e.old_nodes[0]),
                         true});
    }
    absl::StatusOr<std::vector<Link>> negatives =
        GenerateAlignmentNegatives(pair.edits, embedder, pair.old_doc, pair.new_doc);
    if (!negatives.ok()) return Annotate(negatives.status(), pair.pair_id);
    for (const Link& link : *negatives) {
      samples.push_back({pair.pair_id, link.new_id, link.old_id, text(pair.new_doc, link.new_id),
                         text(pair.old_doc, link.old_id), false});
    }
  }
  AlignmentDataset dataset;
  SplitSamples(std::move(samples), seed, dataset.train, dataset.test, dataset.warnings);
  return dataset;
}

absl::StatusOr<RequestDataset> BuildRequestDataset(std::span<const CorpusPair> corpus,
                                                   uint64_t seed, double ratio) {
  if (!(ratio >= 0) || !std::isfinite(ratio)) {
    return absl::InvalidArgumentError("negative ratio must be a finite nonnegative number");
  }
  std::vector<RequestSample> positives;
  std::vector<RequestSample> candidates;
  for (const CorpusPair& pair : corpus) {
    std::map<std::string, RequestKind> kind_of;
    for (const ReviewRequest& r : pair.requests) kind_of[r.sentence_id] = r.kind;
    for (const DocumentGraph& review : pair.reviews) {
      for (const TextNode* s : review.Sentences()) {
        auto it = kind_of.find(s->id);
        const bool is_request = it != kind_of.end() && it->second != RequestKind::kNonRequest;
        (is_request ? positives : candidates)
            .push_back({pair.pair_id, s->id, s->text, is_request});
      }
    }
  }
  const size_t wanted = static_cast<size_t>(std::floor(ratio * positives.size() + 1e-9));
  if (wanted > candidates.size()) {
    return absl::FailedPreconditionError(
        absl::StrCat("need ", wanted, " negative samples but only ", candidates.size(),
                     " non-request sentences are available"));
  }
  std::vector<RequestSample> samples = std::move(positives);
  std::mt19937_64 rng(seed);
  std::sample(candidates.begin(), candidates.end(), std::back_inserter(samples), wanted, rng);
  RequestDataset dataset;
  SplitSamples(std::move(samples), seed, dataset.train, dataset.test, dataset.warnings);
  return dataset;
}

}  // namespace revgraph
