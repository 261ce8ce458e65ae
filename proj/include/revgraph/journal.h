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


// Append-only JSONL log of accepted correction batches.

#ifndef REVGRAPH_JOURNAL_H_
#define REVGRAPH_JOURNAL_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "revgraph/edit_graph.h"

namespace revgraph {

struct JournalEntry {
  int64_t revision = 0;
  std::vector<Correction> ops;

  bool operator==(const JournalEntry&) const = default;
};

class Journal {
 public:
  // Opens or creates the file. A torn final line, left by a crash in the
  // middle of a write, is cut off.
  static absl::StatusOr<std::unique_ptr<Journal>> Open(const std::string& path);
  ~Journal();

  Journal(const Journal&) = delete;
  Journal& operator=(const Journal&) = delete;

  // Entries in file order.
  const std::vector<JournalEntry>& entries() const { return entries_; }

  // Writes one line and fsyncs before returning.
  absl::Status Append(const JournalEntry& entry);

 private:
  Journal(std::string path, int fd) : path_(std::move(path)), fd_(fd) {}

  std::string path_;
  int fd_ = -1;
  std::vector<JournalEntry> entries_;
};

}  // namespace revgraph

#endif  // REVGRAPH_JOURNAL_H_
