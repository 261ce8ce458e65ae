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

#include "revgraph/alignment.h"

#include <cmath>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"

namespace revgraph {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using oracle::PlainEdit;
using test_util::MakeDoc;
using test_util::SentenceId;

// Embeddings for the three-sentence example: only the cat sentences are
// semantically close (cosine 0.9).
std::shared_ptr<const EmbeddingProvider> CatEmbedder() {
  return std::make_shared<TableEmbedder>(std::map<std::string, std::vector<double>, std::less<>>{
      {"The cat sat.", {1, 0, 0, 0}},
      {"The cat sat on the mat.", {0.9, std::sqrt(1 - 0.81), 0, 0}},
      {"Dogs bark loudly.", {0, 0, 1, 0}},
      {"It rains.", {0, 0, 0.5, 0.5}},
      {"A new sentence.", {0, 0, 0, 1}}});
}

TEST(PreAlignTest, ThreeSentenceExample) {
  DocumentGraph old_doc =
      MakeDoc("d", DocVersion::kOld, {{"The cat sat.", "Dogs bark loudly.", "It rains."}});
  DocumentGraph new_doc =
      MakeDoc("d", DocVersion::kNew, {{"The cat sat on the mat.", "It rains.", "A new sentence."}});
  absl::StatusOr<std::vector<Edit>> edits = PreAlign(old_doc, new_doc, DefaultAlignConfig(CatEmbedder()));
  ASSERT_TRUE(edits.ok()) << edits.status();
  EXPECT_THAT(oracle::Plain(*edits),
              ElementsAre(PlainEdit{EditAction::kAdd, {SentenceId(new_doc, 0, 2)}, {}},
                          PlainEdit{EditAction::kDelete, {}, {SentenceId(old_doc, 0, 1)}},
                          PlainEdit{EditAction::kModify, {SentenceId(new_doc, 0, 0)},
                                    {SentenceId(old_doc, 0, 0)}}));
  for (const Edit& e : *edits) EXPECT_EQ(e.provenance, Provenance::kAuto);
  EXPECT_THAT(ValidateEditSet(*edits, old_doc, new_doc), IsEmpty());
}

TEST(PreAlignTest, IdenticalDocumentsGiveNoEdits) {
  test_util::Paragraphs p = {{"Same one.", "Same two."}, {"Same three."}};
  absl::StatusOr<std::vector<Edit>> edits = PreAlign(
      MakeDoc("d", DocVersion::kOld, p), MakeDoc("d", DocVersion::kNew, p), DefaultAlignConfig());
  ASSERT_TRUE(edits.ok());
  EXPECT_THAT(*edits, IsEmpty());
}

TEST(PreAlignTest, RepeatedSentenceAlignsToTheCloserCopy) {
  test_util::Paragraphs old_p, new_p;
  for (int p = 0; p < 10; ++p) {
    old_p.push_back({"Filler paragraph number " + std::to_string(p) + " stays put."});
  }
  new_p = old_p;
  old_p[1].push_back("We use model X.");
  old_p[8].push_back("We use model X.");
  new_p[8].push_back("We use model X2.");
  DocumentGraph old_doc = MakeDoc("d", DocVersion::kOld, old_p);
  DocumentGraph new_doc = MakeDoc("d", DocVersion::kNew, new_p);
  absl::StatusOr<PreAlignment> result = PreAlignDetailed(old_doc, new_doc, DefaultAlignConfig());
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->residual_new.size(), 1u);
  EXPECT_EQ(result->candidates[0].size() >= 2, true);
  EXPECT_THAT(oracle::Plain(result->edits),
              ElementsAre(PlainEdit{EditAction::kDelete, {}, {SentenceId(old_doc, 1, 1)}},
                          PlainEdit{EditAction::kModify, {SentenceId(new_doc, 8, 1)},
                                    {SentenceId(old_doc, 8, 1)}}));
}

TEST(PreAlignTest, LocationTieGoesToTheEarlierParagraph) {
  // New sentence sits in the middle; both old copies are equally far.
  DocumentGraph old_doc = MakeDoc("d", DocVersion::kOld,
                                  {{"Copy of the claim here."}, {"Unrelated."}, {"Copy of the claim here."}});
  DocumentGraph new_doc = MakeDoc("d", DocVersion::kNew,
                                  {{"Zzz."}, {"Copy of the claims here."}, {"Qqq."}});
  absl::StatusOr<std::vector<Edit>> edits = PreAlign(old_doc, new_doc, DefaultAlignConfig());
  ASSERT_TRUE(edits.ok());
  bool found = false;
  for (const Edit& e : *edits) {
    if (e.action == EditAction::kModify) {
      EXPECT_EQ(e.old_nodes, std::vector<std::string>{SentenceId(old_doc, 0, 0)});
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(PreAlignTest, ContestedOldSentenceGoesToTheStrongestClaimant) {
  DocumentGraph old_doc = MakeDoc("d", DocVersion::kOld, {{"The results improve on all datasets."}});
  DocumentGraph new_doc = MakeDoc("d", DocVersion::kNew,
                                  {{"The results improve on all the datasets.",
                                    "The results improved on all datasets."}});
  absl::StatusOr<PreAlignment> result = PreAlignDetailed(old_doc, new_doc, DefaultAlignConfig());
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->selected, (std::vector<int>{0, 0}));
  double sums[2] = {0, 0};
  for (size_t i = 0; i < 2; ++i) {
    for (size_t m = 0; m < 3; ++m) sums[i] += result->scores.at(m, i, 0);
  }
  const int winner = sums[1] > sums[0] ? 1 : 0;
  EXPECT_EQ(result->aligned[winner], 0);
  EXPECT_EQ(result->aligned[1 - winner], -1);
  EXPECT_THAT(ValidateEditSet(result->edits, old_doc, new_doc), IsEmpty());
}

TEST(PreAlignTest, UnsegmentedInputIsAnError) {
  DocumentInput input;
  input.doc_id = "d";
  input.sections = {{"S", {{"Not split yet. Two sentences."}}}};
  DocumentGraph raw = *BuildDocument(input);
  DocumentGraph doc = MakeDoc("d", DocVersion::kNew, {{"A."}});
  absl::StatusOr<std::vector<Edit>> edits = PreAlign(raw, doc, DefaultAlignConfig());
  EXPECT_EQ(edits.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(AlignConfigTest, Validation) {
  AlignConfig config = DefaultAlignConfig();
  EXPECT_DOUBLE_EQ(config.t0, 40.0);
  EXPECT_DOUBLE_EQ(config.t1, 85.0);
  EXPECT_TRUE(config.Validate().ok());
  config.t0 = 90;
  EXPECT_FALSE(config.Validate().ok());
  config.t0 = 0;
  EXPECT_FALSE(config.Validate().ok());
  config = DefaultAlignConfig();
  config.t1 = 100;
  EXPECT_FALSE(config.Validate().ok());
  config = DefaultAlignConfig();
  config.measures.clear();
  EXPECT_FALSE(config.Validate().ok());
}

TEST(LocationDistanceTest, Examples) {
  EXPECT_DOUBLE_EQ(LocationDistance(3, 6, 1, 2), 0.0);
  EXPECT_NEAR(LocationDistance(2, 10, 8, 10), 0.6, 1e-12);
  EXPECT_NEAR(LocationDistance(0, 4, 3, 4), 0.75, 1e-12);
}

TEST(PreAlignTest, MatchesReferenceOnRandomPairs) {
  std::mt19937_64 rng(20240501);
  AlignConfig config = DefaultAlignConfig();
  for (int trial = 0; trial < 150; ++trial) {
    auto [old_doc, new_doc] = test_util::RandomPair(rng, 25);
    absl::StatusOr<std::vector<Edit>> edits = PreAlign(old_doc, new_doc, config);
    absl::StatusOr<std::vector<PlainEdit>> expected =
        oracle::ReferencePreAlign(old_doc, new_doc, config);
    ASSERT_TRUE(edits.ok() && expected.ok());
    ASSERT_EQ(oracle::Plain(*edits), *expected) << "trial " << trial;
    ASSERT_THAT(ValidateEditSet(*edits, old_doc, new_doc), IsEmpty());
  }
}

class NegativesTest : public ::testing::Test {
 protected:
  std::vector<Edit> Pairs(int n) {
    std::vector<Edit> edits;
    for (int i = 0; i < n; ++i) {
      edits.push_back(test_util::MakeEdit(EditAction::kModify, {SentenceId(new_doc_, i, 0)},
                                          {SentenceId(old_doc_, i, 0)}, old_doc_, new_doc_));
    }
    return edits;
  }
  DocumentGraph old_doc_ = MakeDoc("d", DocVersion::kOld, {{"o0"}, {"o1"}, {"o2"}});
  DocumentGraph new_doc_ = MakeDoc("d", DocVersion::kNew, {{"n0"}, {"n1"}, {"n2"}});
  std::shared_ptr<const EmbeddingProvider> embedder_ =
      std::make_shared<TableEmbedder>(std::map<std::string, std::vector<double>, std::less<>>{
          {"o0", {1, 0, 0}}, {"o1", {0, 1, 0}}, {"o2", {0.6, 0.8, 0}},
          {"n0", {0, 0.2, 1}}, {"n1", {1, 0, 0.1}}, {"n2", {0, 1, 0}}});
};

TEST_F(NegativesTest, OnePairGivesNothing) {
  std::vector<Edit> edits = Pairs(1);
  EXPECT_THAT(*GenerateAlignmentNegatives(edits, *embedder_, old_doc_, new_doc_), IsEmpty());
}

TEST_F(NegativesTest, TwoPairsSwapPartners) {
  std::vector<Edit> edits = Pairs(2);
  std::vector<Link> negatives = *GenerateAlignmentNegatives(edits, *embedder_, old_doc_, new_doc_);
  EXPECT_THAT(negatives, ElementsAre(Link{SentenceId(new_doc_, 0, 0), SentenceId(old_doc_, 1, 0)},
                                     Link{SentenceId(new_doc_, 1, 0), SentenceId(old_doc_, 0, 0)}));
}

TEST_F(NegativesTest, ThreePairsPickTheMostSimilarNonPartner) {
  std::vector<Edit> edits = Pairs(3);
  std::vector<Link> negatives = *GenerateAlignmentNegatives(edits, *embedder_, old_doc_, new_doc_);
  ASSERT_EQ(negatives.size(), 3u);
  // Brute force over non-partners.
  for (const Link& neg : negatives) {
    const std::string new_text = new_doc_.Find(neg.new_id)->text;
    const int own = *new_doc_.ParagraphIndex(neg.new_id);
    double best = -1;
    std::string best_id;
    for (int j = 0; j < 3; ++j) {
      if (j == own) continue;
      const double s = *SemSimilarity(new_text, "o" + std::to_string(j), *embedder_);
      if (s > best) {
        best = s;
        best_id = SentenceId(old_doc_, j, 0);
      }
    }
    EXPECT_EQ(neg.old_id, best_id) << neg.new_id;
  }
}

}  // namespace
}  // namespace revgraph
