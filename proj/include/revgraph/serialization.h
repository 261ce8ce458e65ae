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


// JSON forms of the document, edit, correction, and report types. Every
// top-level record carries "schema_version".

#ifndef REVGRAPH_SERIALIZATION_H_
#define REVGRAPH_SERIALIZATION_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "revgraph/analytics.h"
#include "revgraph/doc_model.h"
#include "revgraph/edit_graph.h"

namespace revgraph {

inline constexpr int kSchemaVersion = 1;

nlohmann::json DocumentToJson(const DocumentGraph& doc);
absl::StatusOr<DocumentInput> DocumentInputFromJson(const nlohmann::json& j);

nlohmann::json EditToJson(const Edit& edit);
absl::StatusOr<Edit> EditFromJson(const nlohmann::json& j);

nlohmann::json CorrectionToJson(const Correction& c);
absl::StatusOr<Correction> CorrectionFromJson(const nlohmann::json& j);

nlohmann::json RequestToJson(const ReviewRequest& r);
absl::StatusOr<ReviewRequest> RequestFromJson(const nlohmann::json& j);

nlohmann::json CrossLinkToJson(const CrossLink& link);
absl::StatusOr<CrossLink> CrossLinkFromJson(const nlohmann::json& j);

nlohmann::json ReportToJson(const AnalyticsReport& report);
nlohmann::json CorpusReportToJson(const CorpusReport& report);

// One JSON value per line; blank lines are skipped. Errors name the line.
absl::StatusOr<std::vector<nlohmann::json>> ParseJsonLines(const std::string& text);
std::string ToJsonLines(const std::vector<nlohmann::json>& values);

}  // namespace revgraph

#endif  // REVGRAPH_SERIALIZATION_H_
