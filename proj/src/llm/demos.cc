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

#include "revgraph/llm/demos.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "revgraph/corpus_io.h"
#include "revgraph/status_macros.h"

namespace revgraph::llm {
namespace {

using nlohmann::json;

class EmbeddingCache {
 public:
  explicit EmbeddingCache(const EmbeddingProvider& embedder) : embedder_(embedder) {}

  absl::StatusOr<std::vector<double>> Get(const std::string& text) {
    auto it = cache_.find(text);
    if (it != cache_.end()) return it->second;
    ASSIGN_OR_RETURN(std::vector<double> v, embedder_.Embed(text));
    cache_.emplace(text, v);
    return v;
  }

 private:
  const EmbeddingProvider& embedder_;
  std::map<std::string, std::vector<double>> cache_;
};

bool HasBothTexts(const DemoItem& item) {
  return !item.old_text.empty() && !item.new_text.empty();
}

std::vector<double> Concat(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool IsZero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

absl::StatusOr<std::vector<double>> ItemVector(DemoMethod method, const DemoItem& item,
                                               EmbeddingCache& cache) {
  const bool both = HasBothTexts(item);
  switch (method) {
    case DemoMethod::kCat: {
      if (!both) return cache.Get(item.new_text.empty() ? item.old_text : item.new_text);
      ASSIGN_OR_RETURN(std::vector<double> n, cache.Get(item.new_text));
      ASSIGN_OR_RETURN(std::vector<double> o, cache.Get(item.old_text));
      return Concat(std::move(n), o);
    }
    case DemoMethod::kDiff: {
      if (!both) return cache.Get(item.new_text.empty() ? item.old_text : item.new_text);
      ASSIGN_OR_RETURN(std::vector<double> n, cache.Get(item.new_text));
      ASSIGN_OR_RETURN(std::vector<double> o, cache.Get(item.old_text));
      if (n.size() != o.size()) return absl::InternalError("embedding dimension changed");
      for (size_t i = 0; i < n.size(); ++i) n[i] -= o[i];
      return n;
    }
    case DemoMethod::kLoc: {
      if (!both) return cache.Get(item.new_text.empty() ? item.old_section : item.new_section);
      ASSIGN_OR_RETURN(std::vector<double> n, cache.Get(item.new_section));
      ASSIGN_OR_RETURN(std::vector<double> o, cache.Get(item.old_section));
      return Concat(std::move(n), o);
    }
    case DemoMethod::kDef:
      break;
  }
  return absl::InvalidArgumentError("def is not a ranking method");
}

template <typename Enum, size_t N>
std::optional<Enum> Lookup(const std::pair<Enum, const char*> (&table)[N], std::string_view s) {
  for (const auto& [e, name] : table) {
    if (s == name) return e;
  }
  return std::nullopt;
}

template <typename Enum, size_t N>
std::string Name(const std::pair<Enum, const char*> (&table)[N], Enum value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

constexpr std::pair<DemoMethod, const char*> kMethodNames[] = {
    {DemoMethod::kCat, "cat"}, {DemoMethod::kDiff, "diff"},
    {DemoMethod::kLoc, "loc"}, {DemoMethod::kDef, "def"}};
constexpr std::pair<DemoOrdering, const char*> kOrderingNames[] = {
    {DemoOrdering::kDefThenDyn, "def_then_dyn"}, {DemoOrdering::kDynThenDef, "dyn_then_def"}};
constexpr std::pair<RationaleOrder, const char*> kRationaleNames[] = {
    {RationaleOrder::kLabelFirst, "LR"},
    {RationaleOrder::kReasonFirst, "RL"},
    {RationaleOrder::kNone, "none"}};

}  // namespace

std::string ToString(DemoMethod m) { return Name(kMethodNames, m); }
std::string ToString(DemoOrdering o) { return Name(kOrderingNames, o); }
std::string ToString(RationaleOrder r) { return Name(kRationaleNames, r); }
std::optional<DemoMethod> ParseDemoMethod(std::string_view s) { return Lookup(kMethodNames, s); }
std::optional<DemoOrdering> ParseDemoOrdering(std::string_view s) {
  return Lookup(kOrderingNames, s);
}
std::optional<RationaleOrder> ParseRationaleOrder(std::string_view s) {
  return Lookup(kRationaleNames, s);
}

absl::StatusOr<std::vector<double>> DemoScores(DemoMethod method, const DemoItem& item,
                                               std::span<const DemoItem> pool,
                                               const EmbeddingProvider& embedder,
                                               bool* fell_back_to_cat) {
  EmbeddingCache cache(embedder);
  ASSIGN_OR_RETURN(std::vector<double> query, ItemVector(method, item, cache));
  if (fell_back_to_cat != nullptr) *fell_back_to_cat = false;
  if (method == DemoMethod::kDiff && HasBothTexts(item) && IsZero(query)) {
    method = DemoMethod::kCat;
    ASSIGN_OR_RETURN(query, ItemVector(method, item, cache));
    if (fell_back_to_cat != nullptr) *fell_back_to_cat = true;
  }
  std::vector<double> scores;
  scores.reserve(pool.size());
  for (const DemoItem& candidate : pool) {
    if (HasBothTexts(candidate) != HasBothTexts(item)) {
      scores.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    ASSIGN_OR_RETURN(std::vector<double> v, ItemVector(method, candidate, cache));
    scores.push_back(Cosine(query, v));
  }
  return scores;
}

absl::StatusOr<DemoSelection> SelectDemos(const DemoSelectorConfig& config,
                                          const DemoItem& item,
                                          std::span<const DemoItem> pool,
                                          std::span<const DemoItem> defaults,
                                          const EmbeddingProvider& embedder) {
  if (config.n < 0) return absl::InvalidArgumentError("n must be nonnegative");
  const bool use_defaults = config.method == DemoMethod::kDef || config.include_defaults;
  if (use_defaults && defaults.empty()) {
    return absl::InvalidArgumentError("the default method needs a static example file");
  }
  DemoSelection selection;
  std::vector<DemoItem> dynamic;
  if (config.method != DemoMethod::kDef && config.n > 0) {
    if (pool.empty()) return absl::InvalidArgumentError("demonstration pool is empty");
    ASSIGN_OR_RETURN(std::vector<double> scores,
                     DemoScores(config.method, item, pool, embedder, &selection.fell_back_to_cat));
    std::vector<size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return scores[a] > scores[b]; });
    const size_t take = std::min(order.size(), static_cast<size_t>(config.n));
    for (size_t i = 0; i < take; ++i) dynamic.push_back(pool[order[i]]);
  }
  std::vector<DemoItem> fixed;
  if (use_defaults) fixed.assign(defaults.begin(), defaults.end());
  if (config.ordering == DemoOrdering::kDefThenDyn) {
    selection.demos = std::move(fixed);
    selection.demos.insert(selection.demos.end(), dynamic.begin(), dynamic.end());
  } else {
    selection.demos = std::move(dynamic);
    selection.demos.insert(selection.demos.end(), fixed.begin(), fixed.end());
  }
  if (config.rationale_order != RationaleOrder::kNone) {
    for (const DemoItem& demo : selection.demos) {
      if (demo.reason.empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "demonstration ", demo.id, " has no rationale; use rationale order 'none'"));
      }
    }
  }
  return selection;
}

absl::StatusOr<std::string> MajorityLabel(std::span<const DemoItem> ranked) {
  if (ranked.empty()) return absl::InvalidArgumentError("no demonstrations to vote");
  std::map<std::string, int> votes;
  for (const DemoItem& d : ranked) ++votes[d.label];
  int best = 0;
  for (const auto& [label, count] : votes) best = std::max(best, count);
  for (const DemoItem& d : ranked) {
    if (votes[d.label] == best) return d.label;
  }
  return absl::InternalError("unreachable");
}

absl::StatusOr<std::vector<DemoItem>> LoadDemoFile(const std::string& path, bool require_label) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_array()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": expected a JSON array"));
  }
  std::vector<DemoItem> demos;
  for (size_t i = 0; i < j.size(); ++i) {
    const json& d = j[i];
    if (!d.is_object() || (require_label && !d.contains("label")) ||
        (d.contains("label") && !d["label"].is_string())) {
      return absl::InvalidArgumentError(absl::StrCat(path, ": item ", i, " needs a string 'label'"));
    }
    DemoItem item;
    item.id = d.value("id", absl::StrCat("demo", i));
    item.old_text = d.value("old_text", "");
    item.new_text = d.value("new_text", "");
    item.old_section = d.value("old_section", "");
    item.new_section = d.value("new_section", "");
    item.label = d.value("label", "");
    item.reason = d.value("reason", "");
    if (item.old_text.empty() && item.new_text.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(path, ": item ", i, " has no text"));
    }
    demos.push_back(std::move(item));
  }
  return demos;
}

}  // namespace revgraph::llm
