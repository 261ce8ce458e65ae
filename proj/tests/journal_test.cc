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

#include <filesystem>
#include <fstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "revgraph/corpus_io.h"
#include "test_util.h"

namespace revgraph {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

JournalEntry Entry(int64_t revision) {
  Correction link;
  link.op = Correction::Op::kAddLink;
  link.new_id = "d:new:p0.s0";
  link.old_id = "d:old:p0.s0";
  Correction intent;
  intent.op = Correction::Op::kSetIntent;
  intent.node_id = "d:new:p0.s0";
  intent.intent = EditIntent::kClarity;
  return {revision, {link, intent}};
}

std::string FreshPath(const std::string& name) {
  const std::string path = test_util::MakeTempDir("journal") + "/" + name;
  std::filesystem::remove(path);
  return path;
}

TEST(JournalTest, AppendAndReopen) {
  const std::string path = FreshPath("a.jsonl");
  {
    auto journal = Journal::Open(path);
    ASSERT_TRUE(journal.ok()) << journal.status();
    EXPECT_THAT((*journal)->entries(), IsEmpty());
    ASSERT_TRUE((*journal)->Append(Entry(1)).ok());
    ASSERT_TRUE((*journal)->Append(Entry(2)).ok());
  }
  auto reopened = Journal::Open(path);
  ASSERT_TRUE(reopened.ok()) << reopened.status();
  EXPECT_THAT((*reopened)->entries(), ElementsAre(Entry(1), Entry(2)));
}

TEST(JournalTest, TornLastLineIsDropped) {
  const std::string path = FreshPath("torn.jsonl");
  {
    auto journal = Journal::Open(path);
    ASSERT_TRUE(journal.ok());
    ASSERT_TRUE((*journal)->Append(Entry(1)).ok());
  }
  std::ofstream(path, std::ios::app) << R"({"revision":2,"ops":[{"op":"add_li)";
  {
    auto journal = Journal::Open(path);
    ASSERT_TRUE(journal.ok()) << journal.status();
    EXPECT_THAT((*journal)->entries(), ElementsAre(Entry(1)));
    ASSERT_TRUE((*journal)->Append(Entry(2)).ok());
  }
  auto reopened = Journal::Open(path);
  ASSERT_TRUE(reopened.ok()) << reopened.status();
  EXPECT_THAT((*reopened)->entries(), ElementsAre(Entry(1), Entry(2)));
}

TEST(JournalTest, CorruptCompleteLineIsDataLoss) {
  const std::string path = FreshPath("bad.jsonl");
  ASSERT_TRUE(WriteFile(path, "{\"revision\":1}\n").ok());
  EXPECT_TRUE(absl::IsDataLoss(Journal::Open(path).status()));
}

}  // namespace
}  // namespace revgraph
