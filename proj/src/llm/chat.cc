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

#include "revgraph/llm/chat.h"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "httplib.h"
#include "revgraph/corpus_io.h"
#include "revgraph/serialization.h"
#include "revgraph/status_macros.h"

namespace revgraph::llm {
namespace {

using nlohmann::json;

json TranscriptLine(const PromptBundle& prompt, const absl::StatusOr<std::string>& response) {
  json line = {{"prompt", prompt.Render()}};
  if (response.ok()) {
    line["response"] = *response;
  } else {
    line["error"] = {{"code", static_cast<int>(response.status().code())},
                     {"message", std::string(response.status().message())}};
  }
  return line;
}

}  // namespace

std::string PromptBundle::UserMessage() const {
  std::vector<std::string> parts = demonstrations;
  parts.push_back(instance.empty() ? task : absl::StrCat(task, "\n", instance));
  return absl::StrJoin(parts, "\n\n");
}

std::string PromptBundle::Render() const {
  return absl::StrCat(system, "\n\n", UserMessage());
}

int EstimateTokens(std::string_view text) { return static_cast<int>((text.size() + 3) / 4); }

absl::Status RateLimitError(const std::string& message) {
  return absl::ResourceExhaustedError(message);
}
absl::Status OverLengthError(const std::string& message) { return absl::OutOfRangeError(message); }
absl::Status TransportError(const std::string& message) { return absl::UnavailableError(message); }
bool IsRateLimit(const absl::Status& status) { return absl::IsResourceExhausted(status); }
bool IsOverLength(const absl::Status& status) { return absl::IsOutOfRange(status); }
bool IsTransport(const absl::Status& status) { return absl::IsUnavailable(status); }

absl::Status CheckPromptLength(const PromptBundle& prompt, const ChatMetadata& metadata) {
  if (metadata.max_prompt_tokens <= 0) return absl::OkStatus();
  const int tokens = EstimateTokens(prompt.Render());
  if (tokens > metadata.max_prompt_tokens) {
    return OverLengthError(absl::StrCat("prompt needs about ", tokens, " tokens, limit is ",
                                        metadata.max_prompt_tokens));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ScriptedProvider::Complete(const PromptBundle& prompt) const {
  RETURN_IF_ERROR(CheckPromptLength(prompt, metadata_));
  return script_(prompt);
}

absl::StatusOr<std::unique_ptr<ReplayProvider>> ReplayProvider::FromFile(
    const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<std::unique_ptr<ReplayProvider>> provider = FromJsonLines(text);
  if (!provider.ok()) {
    return absl::Status(provider.status().code(),
                        absl::StrCat(path, ": ", std::string(provider.status().message())));
  }
  return provider;
}

absl::StatusOr<std::unique_ptr<ReplayProvider>> ReplayProvider::FromJsonLines(
    const std::string& text) {
  ASSIGN_OR_RETURN(std::vector<json> lines, ParseJsonLines(text));
  std::unique_ptr<ReplayProvider> provider(new ReplayProvider());
  for (size_t i = 0; i < lines.size(); ++i) {
    const json& line = lines[i];
    if (!line.contains("prompt") || !line["prompt"].is_string()) {
      return absl::InvalidArgumentError(absl::StrCat("transcript entry ", i + 1, " has no prompt"));
    }
    const std::string prompt = line["prompt"].get<std::string>();
    if (line.contains("response") && line["response"].is_string()) {
      provider->responses_.insert_or_assign(prompt, line["response"].get<std::string>());
    } else if (line.contains("error") && line["error"].is_object()) {
      const json& error = line["error"];
      const auto code = static_cast<absl::StatusCode>(error.value("code", 2));
      provider->responses_.insert_or_assign(
          prompt, absl::Status(code, error.value("message", std::string("recorded error"))));
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("transcript entry ", i + 1, " has neither response nor error"));
    }
  }
  return provider;
}

absl::StatusOr<std::string> ReplayProvider::Complete(const PromptBundle& prompt) const {
  auto it = responses_.find(prompt.Render());
  if (it == responses_.end()) {
    return absl::NotFoundError("no recorded response for this prompt");
  }
  return it->second;
}

absl::StatusOr<std::string> RecordingProvider::Complete(const PromptBundle& prompt) const {
  absl::StatusOr<std::string> response = inner_->Complete(prompt);
  std::lock_guard<std::mutex> lock(mu_);
  std::ofstream out(path_, std::ios::app);
  out << TranscriptLine(prompt, response).dump() << "\n";
  if (!out) return absl::DataLossError(absl::StrCat("cannot append to ", path_));
  return response;
}

absl::StatusOr<std::string> HttpChatProvider::Complete(const PromptBundle& prompt) const {
  RETURN_IF_ERROR(CheckPromptLength(prompt, metadata()));
  httplib::Client client(config_.base_url);
  if (!client.is_valid()) {
    return absl::InvalidArgumentError(absl::StrCat("bad base_url ", config_.base_url));
  }
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key) {
      headers.emplace("Authorization", absl::StrCat("Bearer ", key));
    }
  }
  json messages = json::array();
  if (!prompt.system.empty()) messages.push_back({{"role", "system"}, {"content", prompt.system}});
  messages.push_back({{"role", "user"}, {"content", prompt.UserMessage()}});
  const json body = {{"model", config_.model},
                     {"messages", messages},
                     {"temperature", config_.temperature},
                     {"max_tokens", config_.max_output_tokens}};
  httplib::Result result = client.Post(config_.path, headers, body.dump(), "application/json");
  if (!result) {
    return TransportError(absl::StrCat("request failed: ", httplib::to_string(result.error())));
  }
  const int status = result->status;
  if (status == 429) return RateLimitError(absl::StrCat("rate limited: ", result->body));
  if (status == 413 || (status == 400 && result->body.find("context") != std::string::npos)) {
    return OverLengthError(absl::StrCat("prompt rejected as too long: ", result->body));
  }
  if (status >= 500) return TransportError(absl::StrCat("server error ", status));
  if (status != 200) {
    return absl::InvalidArgumentError(absl::StrCat("HTTP ", status, ": ", result->body));
  }
  json response = json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  if (response.is_discarded() || !response.contains("choices") || response["choices"].empty()) {
    return TransportError("malformed completion response");
  }
  const json& message = response["choices"][0]["message"];
  if (!message.contains("content") || !message["content"].is_string()) {
    return TransportError("completion without text content");
  }
  return message["content"].get<std::string>();
}

absl::StatusOr<std::shared_ptr<const ChatProvider>> MakeChatProvider(const json& config) {
  if (!config.is_object() || !config.contains("kind") || !config["kind"].is_string()) {
    return absl::InvalidArgumentError("provider config needs a 'kind'");
  }
  const std::string kind = config["kind"].get<std::string>();
  if (kind == "replay") {
    if (!config.contains("path") || !config["path"].is_string()) {
      return absl::InvalidArgumentError("replay provider needs a 'path'");
    }
    ASSIGN_OR_RETURN(std::unique_ptr<ReplayProvider> provider,
                     ReplayProvider::FromFile(config["path"].get<std::string>()));
    return std::shared_ptr<const ChatProvider>(std::move(provider));
  }
  if (kind == "http") {
    HttpChatConfig http;
    http.base_url = config.value("base_url", http.base_url);
    http.path = config.value("path", http.path);
    http.model = config.value("model", http.model);
    http.api_key_env = config.value("api_key_env", http.api_key_env);
    http.max_prompt_tokens = config.value("max_prompt_tokens", http.max_prompt_tokens);
    http.max_output_tokens = config.value("max_output_tokens", http.max_output_tokens);
    http.temperature = config.value("temperature", http.temperature);
    http.timeout = std::chrono::seconds(config.value("timeout_seconds", 60));
    std::shared_ptr<const ChatProvider> provider = std::make_shared<HttpChatProvider>(http);
    if (config.contains("record") && config["record"].is_string()) {
      provider = std::make_shared<RecordingProvider>(provider, config["record"].get<std::string>());
    }
    return provider;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown provider kind '", kind, "'"));
}

std::map<std::string, absl::StatusOr<std::string>> RunBatch(const ChatProvider& provider,
                                                            std::span<const BatchItem> items,
                                                            const BatchOptions& options) {
  std::vector<absl::StatusOr<std::string>> results(items.size(),
                                                   absl::UnknownError("not run"));
  auto sleep = options.sleep ? options.sleep : [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < items.size(); i = next++) {
      // Per-item jitter stream, so backoff does not depend on scheduling.
      std::mt19937_64 rng(options.seed ^ std::hash<std::string>{}(items[i].id));
      std::uniform_real_distribution<double> jitter(0.5, 1.5);
      absl::StatusOr<std::string> response = provider.Complete(items[i].prompt);
      for (int attempt = 0; attempt < options.max_retries && IsRateLimit(response.status());
           ++attempt) {
        const double scale = static_cast<double>(1 << std::min(attempt, 16)) * jitter(rng);
        sleep(std::chrono::milliseconds(
            static_cast<int64_t>(options.base_backoff.count() * scale)));
        response = provider.Complete(items[i].prompt);
      }
      results[i] = std::move(response);
    }
  };
  const int threads = std::max(1, std::min<int>(options.max_in_flight,
                                                static_cast<int>(items.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::map<std::string, absl::StatusOr<std::string>> keyed;
  for (size_t i = 0; i < items.size(); ++i) keyed.insert_or_assign(items[i].id, std::move(results[i]));
  return keyed;
}

}  // namespace revgraph::llm
