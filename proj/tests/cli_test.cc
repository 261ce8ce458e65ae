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

// Runs the revgraph binary end to end.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "absl/strings/str_cat.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "oracles.h"
#include "revgraph/corpus_io.h"
#include "test_util.h"

namespace revgraph {
namespace {

using ::testing::HasSubstr;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult RunCli(const std::string& args, const std::string& dir) {
  const std::string err_path = dir + "/stderr.txt";
  const std::string command =
      absl::StrCat(REVGRAPH_CLI_PATH, " ", args, " 2>", err_path);
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = ReadFile(err_path).value_or("");
  return result;
}

void WriteJson(const std::string& path, const json& j) {
  ASSERT_TRUE(WriteFile(path, j.dump()).ok());
}

json RawDoc(const std::string& version, const std::string& text) {
  return {{"doc_id", "d"},
          {"version", version},
          {"sections",
           {{{"title", "Body"}, {"paragraphs", {{{"text", text}, {"protected", false}}}}}}}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = test_util::MakeTempDir(
        absl::StrCat("cli_", ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    WriteJson(dir_ + "/old.json", RawDoc("old", "The cat sat. Dogs bark loudly. It rains."));
    WriteJson(dir_ + "/new.json",
              RawDoc("new", "The cat sat on the mat. It rains. A new sentence."));
  }

  std::string dir_;
};

TEST_F(CliTest, AlignThreeSentenceFixture) {
  // Only the two cat sentences are semantically close (cosine 0.9).
  const json config = {
      {"embedder",
       {{"vectors",
         {{"The cat sat.", {1, 0, 0, 0}},
          {"The cat sat on the mat.", {0.9, std::sqrt(1 - 0.81), 0, 0}},
          {"Dogs bark loudly.", {0, 0, 1, 0}},
          {"It rains.", {0, 0, 0.5, 0.5}},
          {"A new sentence.", {0, 0, 0, 1}}}}}}};
  WriteJson(dir_ + "/config.json", config);
  const RunResult run =
      RunCli(absl::StrCat("--config ", dir_, "/config.json align --old ", dir_, "/old.json --new ",
                       dir_, "/new.json --t0 40 --t1 85 --measures lev,fuzzy,sem --out ", dir_,
                       "/edits.jsonl"),
          dir_);
  ASSERT_EQ(run.exit_code, 0) << run.err;
  auto edits = LoadEdits(dir_ + "/edits.jsonl");
  ASSERT_TRUE(edits.ok()) << edits.status();
  EXPECT_THAT(oracle::Plain(*edits),
              ::testing::ElementsAre(
                  oracle::PlainEdit{EditAction::kAdd, {"d:new:p0.s2"}, {}},
                  oracle::PlainEdit{EditAction::kDelete, {}, {"d:old:p0.s1"}},
                  oracle::PlainEdit{EditAction::kModify, {"d:new:p0.s0"}, {"d:old:p0.s0"}}));
}

TEST_F(CliTest, AnalyzeZeroEditPair) {
  WriteJson(dir_ + "/same.json", RawDoc("new", "The cat sat. Dogs bark loudly. It rains."));
  ASSERT_TRUE(WriteFile(dir_ + "/none.jsonl", "").ok());
  const RunResult run = RunCli(absl::StrCat("analyze --old ", dir_, "/old.json --new ", dir_,
                                         "/same.json --edits ", dir_, "/none.jsonl"),
                            dir_);
  ASSERT_EQ(run.exit_code, 0) << run.err;
  const json report = json::parse(run.out);
  EXPECT_EQ(report["edit_ratio"], 0.0);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli("align --bogus", dir_).exit_code, 2);
  EXPECT_EQ(RunCli("frobnicate", dir_).exit_code, 2);
  EXPECT_EQ(RunCli("--help", dir_).exit_code, 0);
}

TEST_F(CliTest, DomainErrorsExitOneWithJson) {
  ASSERT_TRUE(WriteFile(dir_ + "/broken.json", "{").ok());
  const RunResult run =
      RunCli(absl::StrCat("--json align --old ", dir_, "/broken.json --new ", dir_, "/new.json"),
          dir_);
  EXPECT_EQ(run.exit_code, 1);
  const json error = json::parse(run.err, nullptr, /*allow_exceptions=*/false);
  ASSERT_FALSE(error.is_discarded()) << run.err;
  EXPECT_TRUE(error["error"].contains("code"));
  EXPECT_TRUE(error["error"].contains("message"));
}

TEST_F(CliTest, SegmentWritesSentences) {
  const RunResult run = RunCli(absl::StrCat("segment --in ", dir_, "/old.json"), dir_);
  ASSERT_EQ(run.exit_code, 0) << run.err;
  const json doc = json::parse(run.out);
  EXPECT_EQ(doc["sections"][0]["paragraphs"][0]["sentences"].size(), 3u) << run.out;
}

TEST_F(CliTest, PromptsAndEval) {
  const RunResult skeleton = RunCli("prompts --task alignment --rationale RL", dir_);
  ASSERT_EQ(skeleton.exit_code, 0) << skeleton.err;
  EXPECT_THAT(skeleton.out, HasSubstr("REASON:<your answer> LABEL:<your answer>."));

  ASSERT_TRUE(WriteFile(dir_ + "/pred.jsonl",
                        "{\"gold\":\"Yes\",\"prediction\":\"Yes\"}\n"
                        "{\"gold\":\"No\",\"answer\":\"LABEL: Yes REASON: close\"}\n"
                        "{\"gold\":\"No\",\"answer\":\"no idea\"}\n"
                        "{\"gold\":\"No\",\"prediction\":\"No\"}\n")
                  .ok());
  const RunResult eval =
      RunCli(absl::StrCat("eval --task alignment --predictions ", dir_, "/pred.jsonl"), dir_);
  ASSERT_EQ(eval.exit_code, 0) << eval.err;
  const json result = json::parse(eval.out);
  EXPECT_DOUBLE_EQ(result["accuracy"].get<double>(), 0.5);
  EXPECT_EQ(result["confusion_counts"][1][2], 1);
}

}  // namespace
}  // namespace revgraph
