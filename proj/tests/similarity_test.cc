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

#include "revgraph/similarity.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace revgraph {
namespace {

constexpr double kTol = 0.01;

TEST(LevSimilarityTest, Examples) {
  EXPECT_DOUBLE_EQ(LevSimilarity("abc", "abc"), 100.0);
  EXPECT_NEAR(LevSimilarity("kitten", "sitting"), 57.14, kTol);
  EXPECT_DOUBLE_EQ(LevSimilarity("a", ""), 0.0);
  EXPECT_DOUBLE_EQ(LevSimilarity("", ""), 100.0);
}

TEST(LevSimilarityTest, CountsCodePointsNotBytes) {
  // One substitution over four code points, although "é" takes two bytes.
  EXPECT_NEAR(LevSimilarity("caf\xC3\xA9", "cafe"), 75.0, 1e-9);
  EXPECT_EQ(LevenshteinDistance(U"flaw", U"lawn"), 2u);
}

TEST(FuzzySimilarityTest, Examples) {
  EXPECT_DOUBLE_EQ(FuzzySimilarity("b a", "a b"), 100.0);
  EXPECT_DOUBLE_EQ(FuzzySimilarity("the cat sat", "sat the cat"), 100.0);
  EXPECT_NEAR(FuzzySimilarity("cat", "dog"), 0.0, kTol);
  EXPECT_EQ(TokenSortKey("  sat the\tcat "), "cat sat the");
}

std::shared_ptr<const EmbeddingProvider> FixtureEmbedder() {
  const double s = std::sqrt(0.75);
  return std::make_shared<TableEmbedder>(
      std::map<std::string, std::vector<double>, std::less<>>{
          {"x", {1, 0, 0}}, {"y", {0, 1, 0}}, {"half", {0.5, s, 0}}, {"neg", {-1, 0, 0}}});
}

TEST(SemSimilarityTest, Examples) {
  auto embedder = FixtureEmbedder();
  EXPECT_DOUBLE_EQ(*SemSimilarity("x", "x", *embedder), 100.0);
  EXPECT_NEAR(*SemSimilarity("x", "y", *embedder), 0.0, 1e-9);
  EXPECT_NEAR(*SemSimilarity("x", "half", *embedder), 50.0, 1e-9);
  EXPECT_NEAR(*SemSimilarity("x", "neg", *embedder), 0.0, 1e-9);
  EXPECT_FALSE(SemSimilarity("x", "unknown", *embedder).ok());
}

TEST(SemSimilarityTest, TrigramEmbedderIsDeterministic) {
  TrigramEmbedder a, b;
  EXPECT_EQ(*a.Embed("Hello world"), *b.Embed("Hello world"));
  EXPECT_EQ(a.Embed("x")->size(), 1024u);
}

TEST(MeasureTest, ContractOnRandomStrings) {
  std::mt19937_64 rng(7);
  MeasureList measures = *MakeMeasures("lev,fuzzy,sem", std::make_shared<TrigramEmbedder>());
  for (int trial = 0; trial < 200; ++trial) {
    const std::string a = test_util::RandomSentence(rng, 1 + rng() % 6, 20);
    const std::string b = test_util::RandomSentence(rng, 1 + rng() % 6, 20);
    for (const auto& m : measures) {
      const double ab = *m->Score(a, b);
      EXPECT_GE(ab, 0.0);
      EXPECT_LE(ab, 100.0);
      EXPECT_NEAR(ab, *m->Score(b, a), 1e-9) << m->name();
      EXPECT_DOUBLE_EQ(*m->Score(a, a), 100.0) << m->name();
    }
  }
}

TEST(MeasureTest, ScoreMatrixMatchesScore) {
  MeasureList measures = *MakeMeasures("lev,fuzzy,sem", std::make_shared<TrigramEmbedder>());
  std::vector<std::string> rows = {"alpha beta", "gamma", ""};
  std::vector<std::string> cols = {"beta alpha", "gamma delta"};
  for (const auto& m : measures) {
    std::vector<double> matrix = *m->ScoreMatrix(rows, cols);
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t j = 0; j < cols.size(); ++j) {
        EXPECT_DOUBLE_EQ(matrix[i * cols.size() + j], *m->Score(rows[i], cols[j])) << m->name();
      }
    }
  }
}

TEST(MeasureTest, UnknownNameIsRejected) {
  EXPECT_FALSE(MakeMeasures("lev,bleu", nullptr).ok());
  EXPECT_EQ(MakeMeasures("lev, fuzzy", nullptr)->size(), 2u);
}

}  // namespace
}  // namespace revgraph
