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


// JSON service over a corpus: browsing pairs, correcting edits, and
// reading analytics. Writes use optimistic concurrency on a per-pair
// revision counter and are journaled before they are acknowledged.

#ifndef REVGRAPH_SERVICE_H_
#define REVGRAPH_SERVICE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "revgraph/alignment.h"
#include "revgraph/corpus_io.h"
#include "revgraph/journal.h"

namespace httplib {
class Server;
}

namespace revgraph {

struct ServiceConfig {
  AlignConfig align;
  // Holds one base snapshot and one journal per pair.
  std::string journal_dir;
};

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

class RevisionService {
 public:
  // Loads every pair, then replays its journal. A pair without annotations
  // starts from pre-alignment; that starting point is saved on first use so
  // replay does not depend on later configuration changes.
  static absl::StatusOr<std::unique_ptr<RevisionService>> Create(const CorpusManifest& manifest,
                                                                 ServiceConfig config);

  ServiceResponse ListPairs() const;
  ServiceResponse GetPair(const std::string& pair_id) const;
  // Body: {"expected_revision": n, "ops": [...]}.
  ServiceResponse PostCorrections(const std::string& pair_id, const std::string& body);
  // As PostCorrections, restricted to set_intent and set_action_sublabel.
  ServiceResponse PostLabels(const std::string& pair_id, const std::string& body);
  ServiceResponse GetAnalytics(const std::string& pair_id) const;

  // Current revision and edits, for tests.
  absl::StatusOr<std::pair<int64_t, std::vector<Edit>>> Snapshot(const std::string& pair_id) const;

 private:
  struct EditSnapshot {
    int64_t revision = 0;
    std::vector<Edit> edits;
  };
  struct PairState {
    CorpusPair pair;
    std::mutex write_mu;  // single writer per pair
    std::shared_ptr<const EditSnapshot> snapshot;
    std::unique_ptr<Journal> journal;
  };

  RevisionService() = default;

  const PairState* Find(const std::string& pair_id) const;
  std::shared_ptr<const EditSnapshot> Load(const PairState& state) const;
  nlohmann::json PairPayload(const PairState& state, const EditSnapshot& snapshot) const;
  ServiceResponse Write(const std::string& pair_id, const std::string& body, bool labels_only);

  ServiceConfig config_;
  std::vector<std::string> order_;
  std::map<std::string, std::unique_ptr<PairState>> pairs_;
};

// Binds the API routes, and the static UI bundle when `static_dir` is set.
void RegisterRoutes(RevisionService& service, httplib::Server& server,
                    const std::string& static_dir = "");

// Blocks serving on host:port.
absl::Status Serve(RevisionService& service, const std::string& host, int port,
                   const std::string& static_dir = "");

}  // namespace revgraph

#endif  // REVGRAPH_SERVICE_H_
