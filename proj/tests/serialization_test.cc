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

#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "revgraph/alignment.h"
#include "revgraph/edit_graph.h"
#include "test_util.h"

namespace revgraph {
namespace {

using ::testing::HasSubstr;
using nlohmann::json;
using test_util::MakeDoc;
using test_util::SentenceId;

TEST(DocumentJsonTest, SchemaFieldNames) {
  DocumentGraph doc = MakeDoc("paper7", DocVersion::kNew, {{"One.", "Two."}});
  json j = DocumentToJson(doc);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["doc_id"], "paper7");
  EXPECT_EQ(j["version"], "new");
  EXPECT_EQ(j["sections"][0]["title"], "Body");
  EXPECT_EQ(j["sections"][0]["paragraphs"][0]["text"], "One. Two.");
  EXPECT_EQ(j["sections"][0]["paragraphs"][0]["sentences"], json({"One.", "Two."}));
}

TEST(DocumentJsonTest, RoundTripsRandomDocuments) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto [old_doc, new_doc] = test_util::RandomPair(rng, 20);
    for (const DocumentGraph* doc : {&old_doc, &new_doc}) {
      absl::StatusOr<DocumentInput> input = DocumentInputFromJson(json::parse(DocumentToJson(*doc).dump()));
      ASSERT_TRUE(input.ok()) << input.status();
      EXPECT_EQ(*BuildDocument(*input), *doc);
    }
  }
}

TEST(DocumentJsonTest, MinimalSchemaWithoutSentences) {
  json j = json::parse(R"({"doc_id": "d", "version": "old",
      "sections": [{"title": "T", "paragraphs": [{"text": "A. B."}, {"text": "- item", "protected": true}]}]})");
  absl::StatusOr<DocumentInput> input = DocumentInputFromJson(j);
  ASSERT_TRUE(input.ok()) << input.status();
  EXPECT_TRUE(input->sections[0].paragraphs[1].is_protected);
  EXPECT_FALSE(input->sections[0].paragraphs[0].sentences.has_value());
}

TEST(DocumentJsonTest, UnknownVersionIsNamed) {
  json j = json::parse(R"({"doc_id": "d", "version": "draft", "sections": []})");
  absl::StatusOr<DocumentInput> input = DocumentInputFromJson(j);
  ASSERT_FALSE(input.ok());
  EXPECT_THAT(std::string(input.status().message()), HasSubstr("draft"));
}

TEST(EditJsonTest, RoundTripsEveryField) {
  Edit e;
  e.id = "S:p0.s0|p0.s0,p0.s1";
  e.granularity = Granularity::kSentence;
  e.action = EditAction::kMerge;
  e.new_nodes = {"d:new:p0.s0"};
  e.old_nodes = {"d:old:p0.s0", "d:old:p0.s1"};
  e.sublabels = {{{"d:new:p0.s0", "d:old:p0.s0"}, ContentSublabel::kIdentical},
                 {{"d:new:p0.s0", "d:old:p0.s1"}, ContentSublabel::kModify}};
  e.intents = {EditIntent::kFactEvidence};
  e.provenance = Provenance::kLlmAssisted;
  json j = EditToJson(e);
  for (const char* field : {"id", "granularity", "action", "new_nodes", "old_nodes", "intents",
                            "provenance", "sublabels"}) {
    EXPECT_TRUE(j.contains(field)) << field;
  }
  EXPECT_EQ(*EditFromJson(json::parse(j.dump())), e);
}

TEST(EditJsonTest, UnknownActionIsNamed) {
  json j = EditToJson(Edit{"S:|p0.s0", {}, {"d:old:p0.s0"}, Granularity::kSentence, EditAction::kDelete});
  j["action"] = "Rewrite";
  absl::StatusOr<Edit> e = EditFromJson(j);
  ASSERT_FALSE(e.ok());
  EXPECT_THAT(std::string(e.status().message()), HasSubstr("unknown action 'Rewrite'"));
}

TEST(CorrectionJsonTest, RoundTripsAllOps) {
  std::vector<Correction> ops = {
      {Correction::Op::kAddLink, "n", "o"},
      {Correction::Op::kRemoveLink, "n", "o"},
      {Correction::Op::kSetIntent, "", "", "S:x", "", EditIntent::kClaim},
      {Correction::Op::kSetIntent, "", "", "", "d:new:p0.s0", std::nullopt},
      {Correction::Op::kSetActionSublabel, "n", "o", "", "", std::nullopt, ContentSublabel::kIdentical}};
  for (const Correction& c : ops) {
    absl::StatusOr<Correction> back = CorrectionFromJson(json::parse(CorrectionToJson(c).dump()));
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(*back, c);
  }
  EXPECT_EQ(CorrectionToJson(ops[0])["op"], "add_link");
  EXPECT_FALSE(CorrectionFromJson(json{{"op", "rename"}}).ok());
}

TEST(RequestJsonTest, RoundTrips) {
  ReviewRequest r{"d:review:p0.s1", RequestKind::kImplicitEdit};
  EXPECT_EQ(*RequestFromJson(RequestToJson(r)), r);
  CrossLink l{CrossLinkKind::kResponseToEdit, "S:p0.s0|", "d:response:p0.s0"};
  EXPECT_EQ(*CrossLinkFromJson(CrossLinkToJson(l)), l);
}

TEST(JsonLinesTest, ErrorsNameTheLine) {
  absl::StatusOr<std::vector<json>> ok = ParseJsonLines("{\"a\":1}\n\n[2]\n");
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok->size(), 2u);
  absl::StatusOr<std::vector<json>> bad = ParseJsonLines("{}\n{oops\n");
  ASSERT_FALSE(bad.ok());
  EXPECT_THAT(std::string(bad.status().message()), HasSubstr("line 2"));
  EXPECT_EQ(ToJsonLines({json{{"a", 1}}, json::array()}), "{\"a\":1}\n[]\n");
}

TEST(ReportJsonTest, CarriesTheHeadlineNumbers) {
  AnalyticsReport r;
  r.edit_ratio = 0.25;
  r.semantic_edit_ratio = 0.125;
  r.cf_paragraph = 2.0;
  json j = ReportToJson(r);
  EXPECT_EQ(j["edit_ratio"], 0.25);
  EXPECT_EQ(j["semantic_edit_ratio"], 0.125);
  EXPECT_EQ(j["cf_paragraph"], 2.0);
  EXPECT_TRUE(j["cf_section"].is_null());
}

}  // namespace
}  // namespace revgraph
