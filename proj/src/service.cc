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

#include "revgraph/service.h"

#include <atomic>
#include <filesystem>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "revgraph/analytics.h"
#include "revgraph/serialization.h"
#include "revgraph/status_macros.h"

namespace revgraph {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json ErrorBody(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

ServiceResponse NotFound(const std::string& pair_id) {
  return {404, ErrorBody("not_found", absl::StrCat("unknown pair '", pair_id, "'"))};
}

json EditsJson(const std::vector<Edit>& edits) {
  json out = json::array();
  for (const Edit& e : edits) out.push_back(EditToJson(e));
  return out;
}

// Corrections address sentence edits; coarser edits pass through.
void SplitByGranularity(const std::vector<Edit>& edits, std::vector<Edit>& sentence,
                        std::vector<Edit>& other) {
  for (const Edit& e : edits) {
    (e.granularity == Granularity::kSentence ? sentence : other).push_back(e);
  }
}

absl::StatusOr<std::vector<Edit>> ApplyToSentenceEdits(const std::vector<Edit>& edits,
                                                       std::span<const Correction> ops,
                                                       const CorpusPair& pair) {
  std::vector<Edit> sentence, other;
  SplitByGranularity(edits, sentence, other);
  ASSIGN_OR_RETURN(std::vector<Edit> corrected,
                   ApplyCorrections(sentence, ops, pair.old_doc, pair.new_doc));
  corrected.insert(corrected.end(), other.begin(), other.end());
  SortEdits(corrected, pair.old_doc, pair.new_doc);
  return corrected;
}

}  // namespace

absl::StatusOr<std::unique_ptr<RevisionService>> RevisionService::Create(
    const CorpusManifest& manifest, ServiceConfig config) {
  RETURN_IF_ERROR(config.align.Validate());
  if (config.journal_dir.empty()) return absl::InvalidArgumentError("journal directory is required");
  std::error_code ec;
  fs::create_directories(config.journal_dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", config.journal_dir, ": ", ec.message()));
  }
  std::unique_ptr<RevisionService> service(new RevisionService());
  service->config_ = std::move(config);
  ASSIGN_OR_RETURN(std::vector<CorpusPair> corpus, LoadCorpus(manifest));
  for (size_t index = 0; index < corpus.size(); ++index) {
    CorpusPair& pair = corpus[index];
    if (pair.pair_id.find('/') != std::string::npos) {
      return absl::InvalidArgumentError(absl::StrCat("pair id '", pair.pair_id, "' contains '/'"));
    }
    auto state = std::make_unique<PairState>();
    const fs::path dir(service->config_.journal_dir);
    const std::string base_path = (dir / (pair.pair_id + ".base.jsonl")).string();
    std::vector<Edit> edits;
    if (fs::exists(base_path)) {
      ASSIGN_OR_RETURN(edits, LoadEdits(base_path));
      std::vector<std::string> violations = ValidateEditSet(edits, pair.old_doc, pair.new_doc);
      if (!violations.empty()) {
        return absl::DataLossError(absl::StrCat(base_path, ": ", violations.front()));
      }
    } else {
      if (!manifest.entries[index].annotation_path.empty()) {
        edits = pair.edits;
      } else {
        ASSIGN_OR_RETURN(edits, PreAlign(pair.old_doc, pair.new_doc, service->config_.align));
      }
      RETURN_IF_ERROR(SaveEdits(base_path, edits));
    }

    ASSIGN_OR_RETURN(state->journal,
                     Journal::Open((dir / (pair.pair_id + ".journal.jsonl")).string()));
    int64_t revision = 0;
    for (const JournalEntry& entry : state->journal->entries()) {
      if (entry.revision != revision + 1) {
        return absl::DataLossError(absl::StrCat(pair.pair_id, ": journal jumps from revision ",
                                                revision, " to ", entry.revision));
      }
      absl::StatusOr<std::vector<Edit>> replayed = ApplyToSentenceEdits(edits, entry.ops, pair);
      if (!replayed.ok()) {
        return absl::DataLossError(absl::StrCat(pair.pair_id, ": replay of revision ",
                                                entry.revision, " failed: ",
                                                std::string(replayed.status().message())));
      }
      edits = *std::move(replayed);
      revision = entry.revision;
    }
    state->snapshot = std::make_shared<const EditSnapshot>(EditSnapshot{revision, std::move(edits)});
    state->pair = std::move(pair);
    service->order_.push_back(state->pair.pair_id);
    service->pairs_.emplace(state->pair.pair_id, std::move(state));
  }
  return service;
}

const RevisionService::PairState* RevisionService::Find(const std::string& pair_id) const {
  auto it = pairs_.find(pair_id);
  return it == pairs_.end() ? nullptr : it->second.get();
}

std::shared_ptr<const RevisionService::EditSnapshot> RevisionService::Load(
    const PairState& state) const {
  return std::atomic_load(&state.snapshot);
}

json RevisionService::PairPayload(const PairState& state, const EditSnapshot& snapshot) const {
  const CorpusPair& pair = state.pair;
  json reviews = json::array();
  for (const DocumentGraph& r : pair.reviews) reviews.push_back(DocumentToJson(r));
  json requests = json::array();
  for (const ReviewRequest& r : pair.requests) requests.push_back(RequestToJson(r));
  json links = json::array();
  for (const CrossLink& l : pair.links) links.push_back(CrossLinkToJson(l));
  return {{"pair_id", pair.pair_id},
          {"revision", snapshot.revision},
          {"old", DocumentToJson(pair.old_doc)},
          {"new", DocumentToJson(pair.new_doc)},
          {"reviews", std::move(reviews)},
          {"response", pair.response ? DocumentToJson(*pair.response) : json(nullptr)},
          {"requests", std::move(requests)},
          {"links", std::move(links)},
          {"edits", EditsJson(snapshot.edits)}};
}

ServiceResponse RevisionService::ListPairs() const {
  json pairs = json::array();
  for (const std::string& id : order_) {
    const PairState* state = Find(id);
    auto snapshot = Load(*state);
    pairs.push_back({{"pair_id", id},
                     {"revision", snapshot->revision},
                     {"edit_count", snapshot->edits.size()}});
  }
  return {200, {{"pairs", std::move(pairs)}}};
}

ServiceResponse RevisionService::GetPair(const std::string& pair_id) const {
  const PairState* state = Find(pair_id);
  if (state == nullptr) return NotFound(pair_id);
  return {200, PairPayload(*state, *Load(*state))};
}

ServiceResponse RevisionService::GetAnalytics(const std::string& pair_id) const {
  const PairState* state = Find(pair_id);
  if (state == nullptr) return NotFound(pair_id);
  auto snapshot = Load(*state);
  absl::StatusOr<AnalyticsReport> report =
      Analyze(snapshot->edits, state->pair.old_doc, state->pair.new_doc, state->pair.requests,
              state->pair.links);
  if (!report.ok()) {
    return {422, ErrorBody("analytics_failed", std::string(report.status().message()))};
  }
  json body = ReportToJson(*report);
  body["revision"] = snapshot->revision;
  return {200, std::move(body)};
}

ServiceResponse RevisionService::PostCorrections(const std::string& pair_id,
                                                 const std::string& body) {
  return Write(pair_id, body, /*labels_only=*/false);
}

ServiceResponse RevisionService::PostLabels(const std::string& pair_id, const std::string& body) {
  return Write(pair_id, body, /*labels_only=*/true);
}

ServiceResponse RevisionService::Write(const std::string& pair_id, const std::string& body,
                                       bool labels_only) {
  auto it = pairs_.find(pair_id);
  if (it == pairs_.end()) return NotFound(pair_id);
  PairState& state = *it->second;

  json request = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (request.is_discarded() || !request.is_object()) {
    return {400, ErrorBody("bad_request", "body must be a JSON object")};
  }
  if (!request.contains("expected_revision") || !request["expected_revision"].is_number_integer()) {
    return {422, ErrorBody("invalid_op", "missing integer 'expected_revision'")};
  }
  if (!request.contains("ops") || !request["ops"].is_array()) {
    return {422, ErrorBody("invalid_op", "missing 'ops' array")};
  }
  std::vector<Correction> ops;
  for (size_t i = 0; i < request["ops"].size(); ++i) {
    absl::StatusOr<Correction> op = CorrectionFromJson(request["ops"][i]);
    if (!op.ok()) {
      return {422, ErrorBody("invalid_op", absl::StrCat("ops[", i, "]: ",
                                                        std::string(op.status().message())))};
    }
    if (labels_only && (op->op == Correction::Op::kAddLink || op->op == Correction::Op::kRemoveLink)) {
      return {422, ErrorBody("invalid_op", absl::StrCat("ops[", i, "]: link changes belong to "
                                                        "/corrections"))};
    }
    ops.push_back(*std::move(op));
  }
  const int64_t expected = request["expected_revision"].get<int64_t>();

  std::lock_guard<std::mutex> lock(state.write_mu);
  std::shared_ptr<const EditSnapshot> current = Load(state);
  if (expected != current->revision) {
    json conflict = ErrorBody("stale_revision", absl::StrCat("expected revision ", expected,
                                                             ", current is ", current->revision));
    conflict["current"] = PairPayload(state, *current);
    return {409, std::move(conflict)};
  }
  absl::StatusOr<std::vector<Edit>> edits = ApplyToSentenceEdits(current->edits, ops, state.pair);
  if (!edits.ok()) return {422, ErrorBody("invalid_op", std::string(edits.status().message()))};
  std::vector<std::string> violations =
      ValidateEditSet(*edits, state.pair.old_doc, state.pair.new_doc);
  if (!violations.empty()) return {422, ErrorBody("invalid_edit_set", violations.front())};

  const int64_t revision = current->revision + 1;
  if (absl::Status s = state.journal->Append({revision, ops}); !s.ok()) {
    return {500, ErrorBody("journal_failed", std::string(s.message()))};
  }
  auto next = std::make_shared<const EditSnapshot>(EditSnapshot{revision, *std::move(edits)});
  std::atomic_store(&state.snapshot, next);
  return {200, {{"pair_id", pair_id}, {"revision", revision}, {"edits", EditsJson(next->edits)}}};
}

absl::StatusOr<std::pair<int64_t, std::vector<Edit>>> RevisionService::Snapshot(
    const std::string& pair_id) const {
  const PairState* state = Find(pair_id);
  if (state == nullptr) return absl::NotFoundError(absl::StrCat("unknown pair '", pair_id, "'"));
  auto snapshot = Load(*state);
  return std::pair(snapshot->revision, snapshot->edits);
}

void RegisterRoutes(RevisionService& service, httplib::Server& server,
                    const std::string& static_dir) {
  auto reply = [](httplib::Response& res, const ServiceResponse& out) {
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get("/pairs", [&service, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service.ListPairs());
  });
  server.Get(R"(/pairs/([^/]+))", [&service, reply](const httplib::Request& req,
                                                    httplib::Response& res) {
    reply(res, service.GetPair(req.matches[1]));
  });
  server.Get(R"(/pairs/([^/]+)/analytics)", [&service, reply](const httplib::Request& req,
                                                              httplib::Response& res) {
    reply(res, service.GetAnalytics(req.matches[1]));
  });
  server.Post(R"(/pairs/([^/]+)/corrections)", [&service, reply](const httplib::Request& req,
                                                                 httplib::Response& res) {
    reply(res, service.PostCorrections(req.matches[1], req.body));
  });
  server.Post(R"(/pairs/([^/]+)/labels)", [&service, reply](const httplib::Request& req,
                                                            httplib::Response& res) {
    reply(res, service.PostLabels(req.matches[1], req.body));
  });
  if (!static_dir.empty()) server.set_mount_point("/", static_dir);
}

absl::Status Serve(RevisionService& service, const std::string& host, int port,
                   const std::string& static_dir) {
  httplib::Server server;
  RegisterRoutes(service, server, static_dir);
  if (!server.listen(host, port)) {
    return absl::UnavailableError(absl::StrCat("cannot listen on ", host, ":", port));
  }
  return absl::OkStatus();
}

}  // namespace revgraph
