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


// Chat-completion providers. Errors are typed through status codes:
// kResourceExhausted = rate limited, kOutOfRange = prompt too long,
// kUnavailable = transport failure.

#ifndef REVGRAPH_LLM_CHAT_H_
#define REVGRAPH_LLM_CHAT_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace revgraph::llm {

struct PromptBundle {
  std::string system;
  std::vector<std::string> demonstrations;
  std::string task;      // instruction
  std::string instance;  // the item to answer; may be empty
  std::string parse_template;

  // system, demonstrations, and task separated by blank lines; the instance
  // follows the task on the next line.
  std::string Render() const;
  // Everything after the system text, as sent in the user turn.
  std::string UserMessage() const;

  bool operator==(const PromptBundle&) const = default;
};

// Rough token count: one token per four bytes, rounded up.
int EstimateTokens(std::string_view text);

absl::Status RateLimitError(const std::string& message);
absl::Status OverLengthError(const std::string& message);
absl::Status TransportError(const std::string& message);
bool IsRateLimit(const absl::Status& status);
bool IsOverLength(const absl::Status& status);
bool IsTransport(const absl::Status& status);

struct ChatMetadata {
  std::string model;
  int max_prompt_tokens = 4096;  // 0 means unlimited
};

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;

  virtual ChatMetadata metadata() const = 0;
  virtual absl::StatusOr<std::string> Complete(const PromptBundle& prompt) const = 0;
};

// OverLengthError when the rendered prompt exceeds the provider's budget.
absl::Status CheckPromptLength(const PromptBundle& prompt, const ChatMetadata& metadata);

// Answers through a callback; for tests and mocks.
class ScriptedProvider : public ChatProvider {
 public:
  using Script = std::function<absl::StatusOr<std::string>(const PromptBundle&)>;

  explicit ScriptedProvider(Script script, ChatMetadata metadata = {"scripted", 0})
      : script_(std::move(script)), metadata_(std::move(metadata)) {}

  ChatMetadata metadata() const override { return metadata_; }
  absl::StatusOr<std::string> Complete(const PromptBundle& prompt) const override;

 private:
  Script script_;
  ChatMetadata metadata_;
};

// Serves responses recorded by RecordingProvider, keyed by rendered prompt.
class ReplayProvider : public ChatProvider {
 public:
  static absl::StatusOr<std::unique_ptr<ReplayProvider>> FromFile(const std::string& path);
  static absl::StatusOr<std::unique_ptr<ReplayProvider>> FromJsonLines(const std::string& text);

  ChatMetadata metadata() const override { return metadata_; }
  absl::StatusOr<std::string> Complete(const PromptBundle& prompt) const override;

 private:
  ReplayProvider() = default;

  ChatMetadata metadata_{"replay", 0};
  std::map<std::string, absl::StatusOr<std::string>> responses_;
};

// Forwards to `inner` and appends one JSON line per call to `path`.
class RecordingProvider : public ChatProvider {
 public:
  RecordingProvider(std::shared_ptr<const ChatProvider> inner, std::string path)
      : inner_(std::move(inner)), path_(std::move(path)) {}

  ChatMetadata metadata() const override { return inner_->metadata(); }
  absl::StatusOr<std::string> Complete(const PromptBundle& prompt) const override;

 private:
  std::shared_ptr<const ChatProvider> inner_;
  std::string path_;
  mutable std::mutex mu_;
};

// An OpenAI-compatible /v1/chat/completions endpoint over HTTP or HTTPS.
// The API key is read from the environment variable named in the config.
struct HttpChatConfig {
  std::string base_url = "http://localhost:8000";
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "REVGRAPH_CHAT_API_KEY";
  int max_prompt_tokens = 4096;
  int max_output_tokens = 256;
  double temperature = 0.0;
  std::chrono::seconds timeout{60};
};

class HttpChatProvider : public ChatProvider {
 public:
  explicit HttpChatProvider(HttpChatConfig config) : config_(std::move(config)) {}

  ChatMetadata metadata() const override {
    return {config_.model, config_.max_prompt_tokens};
  }
  absl::StatusOr<std::string> Complete(const PromptBundle& prompt) const override;

 private:
  HttpChatConfig config_;
};

// Provider from a config object: {"kind": "replay", "path": ...} or
// {"kind": "http", "base_url": ..., "model": ..., ...}.
absl::StatusOr<std::shared_ptr<const ChatProvider>> MakeChatProvider(
    const nlohmann::json& config);

struct BatchItem {
  std::string id;
  PromptBundle prompt;
};

struct BatchOptions {
  int max_in_flight = 4;
  int max_retries = 5;
  std::chrono::milliseconds base_backoff{250};
  uint64_t seed = 0;
  // Replaceable for tests.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Runs every prompt with at most `max_in_flight` concurrent calls,
// retrying rate-limited calls with jittered exponential backoff. Results
// are keyed by item id, independent of completion order.
std::map<std::string, absl::StatusOr<std::string>> RunBatch(const ChatProvider& provider,
                                                            std::span<const BatchItem> items,
                                                            const BatchOptions& options = {});

}  // namespace revgraph::llm

#endif  // REVGRAPH_LLM_CHAT_H_
