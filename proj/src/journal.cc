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

#include "revgraph/journal.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "revgraph/corpus_io.h"
#include "revgraph/serialization.h"
#include "revgraph/status_macros.h"

namespace revgraph {
namespace {

using nlohmann::json;

absl::Status ErrnoError(const std::string& what, const std::string& path) {
  return absl::InternalError(absl::StrCat(what, " ", path, ": ", std::strerror(errno)));
}

absl::StatusOr<JournalEntry> ParseEntry(const json& j) {
  if (!j.is_object() || !j.contains("revision") || !j["revision"].is_number_integer() ||
      !j.contains("ops") || !j["ops"].is_array()) {
    return absl::InvalidArgumentError("journal entry needs 'revision' and 'ops'");
  }
  JournalEntry entry;
  entry.revision = j["revision"].get<int64_t>();
  for (const json& op : j["ops"]) {
    ASSIGN_OR_RETURN(Correction c, CorrectionFromJson(op));
    entry.ops.push_back(std::move(c));
  }
  return entry;
}

}  // namespace

absl::StatusOr<std::unique_ptr<Journal>> Journal::Open(const std::string& path) {
  std::string content;
  if (::access(path.c_str(), F_OK) == 0) {
    ASSIGN_OR_RETURN(content, ReadFile(path));
  }
  // Keep only complete lines; a crash can leave a partial last line.
  const size_t complete = content.rfind('\n') == std::string::npos ? 0 : content.rfind('\n') + 1;
  const int fd = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) return ErrnoError("cannot open", path);
  std::unique_ptr<Journal> journal(new Journal(path, fd));
  if (complete != content.size()) {
    if (::ftruncate(fd, static_cast<off_t>(complete)) != 0) return ErrnoError("cannot truncate", path);
    if (::fsync(fd) != 0) return ErrnoError("cannot sync", path);
    content.resize(complete);
  }
  if (::lseek(fd, 0, SEEK_END) < 0) return ErrnoError("cannot seek", path);

  ASSIGN_OR_RETURN(std::vector<json> lines, ParseJsonLines(content));
  for (size_t i = 0; i < lines.size(); ++i) {
    absl::StatusOr<JournalEntry> entry = ParseEntry(lines[i]);
    if (!entry.ok()) {
      return absl::DataLossError(absl::StrCat(path, ": entry ", i + 1, ": ",
                                              std::string(entry.status().message())));
    }
    journal->entries_.push_back(*std::move(entry));
  }
  return journal;
}

Journal::~Journal() {
  if (fd_ >= 0) ::close(fd_);
}

absl::Status Journal::Append(const JournalEntry& entry) {
  json ops = json::array();
  for (const Correction& c : entry.ops) ops.push_back(CorrectionToJson(c));
  const std::string line = json{{"revision", entry.revision}, {"ops", ops}}.dump() + "\n";
  const off_t start = ::lseek(fd_, 0, SEEK_END);
  if (start < 0) return ErrnoError("cannot seek", path_);
  size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      absl::Status error = ErrnoError("cannot append to", path_);
      // Drop the partial line so later appends stay parseable.
      if (::ftruncate(fd_, start) != 0) return ErrnoError("cannot roll back", path_);
      return error;
    }
    written += static_cast<size_t>(n);
  }
  if (::fsync(fd_) != 0) return ErrnoError("cannot sync", path_);
  entries_.push_back(entry);
  return absl::OkStatus();
}

}  // namespace revgraph
