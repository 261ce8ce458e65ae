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

#include "revgraph/serialization.h"

#include <sstream>

#include "absl/strings/str_cat.h"
#include "revgraph/status_macros.h"

namespace revgraph {
namespace {

using nlohmann::json;

absl::Status SchemaError(const std::string& what) {
  return absl::InvalidArgumentError(absl::StrCat("schema violation: ", what));
}

absl::StatusOr<const json*> Field(const json& j, const char* key) {
  if (!j.is_object()) return SchemaError(absl::StrCat("expected an object around '", key, "'"));
  auto it = j.find(key);
  if (it == j.end()) return SchemaError(absl::StrCat("missing field '", key, "'"));
  return &*it;
}

absl::StatusOr<std::string> GetString(const json& j, const char* key) {
  ASSIGN_OR_RETURN(const json* v, Field(j, key));
  if (!v->is_string()) return SchemaError(absl::StrCat("field '", key, "' must be a string"));
  return v->get<std::string>();
}

std::string GetStringOr(const json& j, const char* key, const std::string& fallback) {
  auto it = j.find(key);
  return it != j.end() && it->is_string() ? it->get<std::string>() : fallback;
}

absl::StatusOr<std::vector<std::string>> GetStringList(const json& j, const char* key) {
  ASSIGN_OR_RETURN(const json* v, Field(j, key));
  if (!v->is_array()) return SchemaError(absl::StrCat("field '", key, "' must be an array"));
  std::vector<std::string> out;
  for (const json& item : *v) {
    if (!item.is_string()) {
      return SchemaError(absl::StrCat("field '", key, "' must hold strings"));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

template <typename Enum, typename Parser>
absl::StatusOr<Enum> GetEnum(const json& j, const char* key, const char* kind, Parser parse) {
  ASSIGN_OR_RETURN(std::string value, GetString(j, key));
  std::optional<Enum> parsed = parse(value);
  if (!parsed) return absl::InvalidArgumentError(absl::StrCat("unknown ", kind, " '", value, "'"));
  return *parsed;
}

absl::Status CheckSchemaVersion(const json& j) {
  auto it = j.find("schema_version");
  if (it == j.end()) return absl::OkStatus();
  if (!it->is_number_integer() || it->get<int>() != kSchemaVersion) {
    return SchemaError(absl::StrCat("unsupported schema_version ", it->dump()));
  }
  return absl::OkStatus();
}

json HistogramToJson(const PositionalHistogram& h) {
  json out = {{"bins", h.bins}, {"by_action", json::object()}, {"by_intent", json::object()}};
  for (const auto& [action, counts] : h.by_action) out["by_action"][ToString(action)] = counts;
  for (const auto& [intent, counts] : h.by_intent) out["by_intent"][ToString(intent)] = counts;
  return out;
}

json LabelsToJson(const LabelDistribution& d) {
  json out = {{"action", json::object()}, {"intent", json::object()},
              {"action_intent", json::object()}};
  for (const auto& [action, p] : d.action) out["action"][ToString(action)] = p;
  for (const auto& [intent, p] : d.intent) out["intent"][ToString(intent)] = p;
  for (const auto& [key, p] : d.action_intent) {
    out["action_intent"][absl::StrCat(ToString(key.first), "|", ToString(key.second))] = p;
  }
  return out;
}

json ImpactToJson(const std::map<RequestKind, RequestOutcome>& impact) {
  json out = json::object();
  for (const auto& [kind, o] : impact) {
    out[ToString(kind)] = {{"not_acted", o.not_acted},
                           {"single_edit", o.single_edit},
                           {"multi_edit", o.multi_edit}};
  }
  return out;
}

json OptionalNumber(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json DocumentToJson(const DocumentGraph& doc) {
  const DocumentInput input = ToDocumentInput(doc);
  json sections = json::array();
  for (const SectionInput& s : input.sections) {
    json paragraphs = json::array();
    for (const ParagraphInput& p : s.paragraphs) {
      json pj = {{"text", p.text}};
      if (p.is_protected) pj["protected"] = true;
      if (p.sentences) pj["sentences"] = *p.sentences;
      paragraphs.push_back(std::move(pj));
    }
    sections.push_back({{"title", s.title}, {"paragraphs", std::move(paragraphs)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"doc_id", input.doc_id},
          {"version", ToString(input.version)},
          {"sections", std::move(sections)}};
}

absl::StatusOr<DocumentInput> DocumentInputFromJson(const json& j) {
  RETURN_IF_ERROR(CheckSchemaVersion(j));
  DocumentInput input;
  ASSIGN_OR_RETURN(input.doc_id, GetString(j, "doc_id"));
  ASSIGN_OR_RETURN(input.version, GetEnum<DocVersion>(j, "version", "version", ParseDocVersion));
  ASSIGN_OR_RETURN(const json* sections, Field(j, "sections"));
  if (!sections->is_array()) return SchemaError("field 'sections' must be an array");
  for (size_t i = 0; i < sections->size(); ++i) {
    const json& sj = (*sections)[i];
    SectionInput section;
    section.title = GetStringOr(sj, "title", "");
    ASSIGN_OR_RETURN(const json* paragraphs, Field(sj, "paragraphs"));
    if (!paragraphs->is_array()) {
      return SchemaError(absl::StrCat("sections[", i, "].paragraphs must be an array"));
    }
    for (const json& pj : *paragraphs) {
      ParagraphInput paragraph;
      ASSIGN_OR_RETURN(paragraph.text, GetString(pj, "text"));
      if (auto it = pj.find("protected"); it != pj.end()) {
        if (!it->is_boolean()) return SchemaError("field 'protected' must be a boolean");
        paragraph.is_protected = it->get<bool>();
      }
      if (pj.contains("sentences")) {
        ASSIGN_OR_RETURN(paragraph.sentences, GetStringList(pj, "sentences"));
      }
      section.paragraphs.push_back(std::move(paragraph));
    }
    input.sections.push_back(std::move(section));
  }
  return input;
}

json EditToJson(const Edit& edit) {
  json sublabels = json::array();
  for (const auto& [link, label] : edit.sublabels) {
    sublabels.push_back(
        {{"new_id", link.new_id}, {"old_id", link.old_id}, {"label", ToString(label)}});
  }
  json intents = json::array();
  for (EditIntent i : edit.intents) intents.push_back(ToString(i));
  json out = {{"schema_version", kSchemaVersion},
              {"id", edit.id},
              {"granularity", ToString(edit.granularity)},
              {"action", ToString(edit.action)},
              {"new_nodes", edit.new_nodes},
              {"old_nodes", edit.old_nodes},
              {"intents", std::move(intents)},
              {"provenance", ToString(edit.provenance)}};
  if (!sublabels.empty()) out["sublabels"] = std::move(sublabels);
  return out;
}

absl::StatusOr<Edit> EditFromJson(const json& j) {
  RETURN_IF_ERROR(CheckSchemaVersion(j));
  Edit edit;
  edit.id = GetStringOr(j, "id", "");
  ASSIGN_OR_RETURN(edit.granularity,
                   GetEnum<Granularity>(j, "granularity", "granularity", ParseGranularity));
  ASSIGN_OR_RETURN(edit.action, GetEnum<EditAction>(j, "action", "action", ParseEditAction));
  ASSIGN_OR_RETURN(edit.new_nodes, GetStringList(j, "new_nodes"));
  ASSIGN_OR_RETURN(edit.old_nodes, GetStringList(j, "old_nodes"));
  if (j.contains("intents")) {
    ASSIGN_OR_RETURN(std::vector<std::string> intents, GetStringList(j, "intents"));
    for (const std::string& name : intents) {
      std::optional<EditIntent> intent = ParseEditIntent(name);
      if (!intent) return absl::InvalidArgumentError(absl::StrCat("unknown intent '", name, "'"));
      edit.intents.insert(*intent);
    }
  }
  if (j.contains("provenance")) {
    ASSIGN_OR_RETURN(edit.provenance,
                     GetEnum<Provenance>(j, "provenance", "provenance", ParseProvenance));
  }
  if (auto it = j.find("sublabels"); it != j.end()) {
    if (!it->is_array()) return SchemaError("field 'sublabels' must be an array");
    for (const json& sj : *it) {
      Link link;
      ASSIGN_OR_RETURN(link.new_id, GetString(sj, "new_id"));
      ASSIGN_OR_RETURN(link.old_id, GetString(sj, "old_id"));
      ASSIGN_OR_RETURN(edit.sublabels[link], GetEnum<ContentSublabel>(
                                                 sj, "label", "sublabel", ParseContentSublabel));
    }
  }
  if (edit.id.empty()) edit.id = MakeEditId(edit.granularity, edit.new_nodes, edit.old_nodes);
  return edit;
}

json CorrectionToJson(const Correction& c) {
  json out = {{"op", ToString(c.op)}};
  switch (c.op) {
    case Correction::Op::kAddLink:
    case Correction::Op::kRemoveLink:
      out["new_id"] = c.new_id;
      out["old_id"] = c.old_id;
      break;
    case Correction::Op::kSetIntent:
      if (!c.edit_id.empty()) out["edit_id"] = c.edit_id;
      if (!c.node_id.empty()) out["node_id"] = c.node_id;
      out["intent"] = c.intent ? json(ToString(*c.intent)) : json(nullptr);
      break;
    case Correction::Op::kSetActionSublabel:
      out["new_id"] = c.new_id;
      out["old_id"] = c.old_id;
      out["sublabel"] = c.sublabel ? json(ToString(*c.sublabel)) : json(nullptr);
      break;
  }
  return out;
}

absl::StatusOr<Correction> CorrectionFromJson(const json& j) {
  Correction c;
  ASSIGN_OR_RETURN(std::string op, GetString(j, "op"));
  std::optional<Correction::Op> parsed = ParseCorrectionOp(op);
  if (!parsed) return absl::InvalidArgumentError(absl::StrCat("unknown op '", op, "'"));
  c.op = *parsed;
  switch (c.op) {
    case Correction::Op::kAddLink:
    case Correction::Op::kRemoveLink: {
      ASSIGN_OR_RETURN(c.new_id, GetString(j, "new_id"));
      ASSIGN_OR_RETURN(c.old_id, GetString(j, "old_id"));
      break;
    }
    case Correction::Op::kSetIntent: {
      c.edit_id = GetStringOr(j, "edit_id", "");
      c.node_id = GetStringOr(j, "node_id", "");
      if (c.edit_id.empty() && c.node_id.empty()) {
        return SchemaError("set_intent needs 'edit_id' or 'node_id'");
      }
      auto it = j.find("intent");
      if (it != j.end() && !it->is_null()) {
        ASSIGN_OR_RETURN(c.intent, GetEnum<EditIntent>(j, "intent", "intent", ParseEditIntent));
      }
      break;
    }
    case Correction::Op::kSetActionSublabel: {
      ASSIGN_OR_RETURN(c.new_id, GetString(j, "new_id"));
      ASSIGN_OR_RETURN(c.old_id, GetString(j, "old_id"));
      ASSIGN_OR_RETURN(c.sublabel, GetEnum<ContentSublabel>(j, "sublabel", "sublabel",
                                                            ParseContentSublabel));
      break;
    }
  }
  return c;
}

json RequestToJson(const ReviewRequest& r) {
  return {{"sentence_id", r.sentence_id}, {"kind", ToString(r.kind)}};
}

absl::StatusOr<ReviewRequest> RequestFromJson(const json& j) {
  ReviewRequest r;
  ASSIGN_OR_RETURN(r.sentence_id, GetString(j, "sentence_id"));
  ASSIGN_OR_RETURN(r.kind, GetEnum<RequestKind>(j, "kind", "request kind", ParseRequestKind));
  return r;
}

json CrossLinkToJson(const CrossLink& link) {
  return {{"kind", ToString(link.kind)},
          {"edit_id", link.edit_id},
          {"sentence_id", link.sentence_id}};
}

absl::StatusOr<CrossLink> CrossLinkFromJson(const json& j) {
  CrossLink link;
  ASSIGN_OR_RETURN(link.kind,
                   GetEnum<CrossLinkKind>(j, "kind", "cross-link kind", ParseCrossLinkKind));
  ASSIGN_OR_RETURN(link.edit_id, GetString(j, "edit_id"));
  ASSIGN_OR_RETURN(link.sentence_id, GetString(j, "sentence_id"));
  return link;
}

json ReportToJson(const AnalyticsReport& report) {
  return {{"schema_version", kSchemaVersion},
          {"edit_ratio", report.edit_ratio},
          {"semantic_edit_ratio", report.semantic_edit_ratio},
          {"cf_paragraph", OptionalNumber(report.cf_paragraph)},
          {"cf_section", OptionalNumber(report.cf_section)},
          {"positional_histogram", HistogramToJson(report.positional)},
          {"label_distribution", LabelsToJson(report.labels)},
          {"request_impact", ImpactToJson(report.request_impact)}};
}

json CorpusReportToJson(const CorpusReport& report) {
  return {{"schema_version", kSchemaVersion},
          {"documents", report.documents},
          {"mean_edit_ratio", report.mean_edit_ratio},
          {"mean_semantic_edit_ratio", report.mean_semantic_edit_ratio},
          {"mean_cf_paragraph", report.mean_cf_paragraph},
          {"mean_cf_section", report.mean_cf_section},
          {"positional_histogram", HistogramToJson(report.positional)},
          {"label_distribution", LabelsToJson(report.labels)},
          {"request_impact", ImpactToJson(report.request_impact)}};
}

absl::StatusOr<std::vector<json>> ParseJsonLines(const std::string& text) {
  std::vector<json> values;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) {
      return absl::InvalidArgumentError(absl::StrCat("line ", line_number, ": invalid JSON"));
    }
    values.push_back(std::move(value));
  }
  return values;
}

std::string ToJsonLines(const std::vector<json>& values) {
  std::string out;
  for (const json& v : values) absl::StrAppend(&out, v.dump(), "\n");
  return out;
}

}  // namespace revgraph
