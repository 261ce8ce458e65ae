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

#include "test_util.h"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "gtest/gtest.h"
#include "revgraph/similarity.h"

namespace revgraph::test_util {
namespace {

DocumentGraph BuildOrDie(const DocumentInput& input) {
  absl::StatusOr<DocumentGraph> doc = BuildDocument(input);
  if (!doc.ok()) {
    std::cerr << "test document is invalid: " << doc.status() << "\n";
    std::abort();
  }
  return *std::move(doc);
}

}  // namespace

DocumentGraph MakeSectionedDoc(const std::string& doc_id, DocVersion version,
                               const std::vector<SectionSpec>& sections) {
  DocumentInput input;
  input.doc_id = doc_id;
  input.version = version;
  for (const auto& [title, paragraphs] : sections) {
    SectionInput section;
    section.title = title;
    for (const std::vector<std::string>& sentences : paragraphs) {
      ParagraphInput p;
      p.text = absl::StrJoin(sentences, " ");
      p.sentences = sentences;
      section.paragraphs.push_back(std::move(p));
    }
    input.sections.push_back(std::move(section));
  }
  return BuildOrDie(input);
}

DocumentGraph MakeDoc(const std::string& doc_id, DocVersion version,
                      const Paragraphs& paragraphs) {
  return MakeSectionedDoc(doc_id, version, {{"Body", paragraphs}});
}

std::string ParagraphId(const DocumentGraph& doc, int paragraph) {
  return absl::StrCat(doc.doc_id(), ":", ToString(doc.version()), ":p", paragraph);
}

std::string SentenceId(const DocumentGraph& doc, int paragraph, int sentence) {
  return absl::StrCat(ParagraphId(doc, paragraph), ".s", sentence);
}

Edit MakeEdit(EditAction action, std::vector<std::string> new_nodes,
              std::vector<std::string> old_nodes, const DocumentGraph& old_doc,
              const DocumentGraph& new_doc, std::set<EditIntent> intents) {
  Edit edit;
  edit.action = action;
  edit.granularity = Granularity::kSentence;
  edit.new_nodes = std::move(new_nodes);
  edit.old_nodes = std::move(old_nodes);
  edit.intents = std::move(intents);
  CanonicalizeEdit(edit, old_doc, new_doc);
  return edit;
}

std::string MakeTempDir(const std::string& name) {
  static int counter = 0;
  std::filesystem::path dir = std::filesystem::path(::testing::TempDir()) /
                              absl::StrCat("revgraph_", name, "_", ::getpid(), "_", counter++);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

std::string RandomSentence(std::mt19937_64& rng, int words, int vocabulary) {
  static constexpr const char* kSyllables[] = {"ka", "lo", "mi", "ne", "ru", "ta", "vo",
                                               "si", "de", "po", "xu", "ba"};
  std::uniform_int_distribution<int> pick(0, vocabulary - 1);
  std::vector<std::string> tokens;
  for (int w = 0; w < words; ++w) {
    int id = pick(rng);
    std::string word;
    do {
      word += kSyllables[id % 12];
      id /= 12;
    } while (id > 0);
    tokens.push_back(std::move(word));
  }
  tokens[0][0] = static_cast<char>(std::toupper(tokens[0][0]));
  return absl::StrCat(absl::StrJoin(tokens, " "), ".");
}

std::string Perturb(std::mt19937_64& rng, const std::string& text, double min_similarity) {
  for (;;) {
    std::string out = text;
    std::uniform_int_distribution<int> edits(1, 3);
    const int n = edits(rng);
    for (int e = 0; e < n; ++e) {
      std::uniform_int_distribution<size_t> pos(1, out.size() - 2);
      const size_t p = pos(rng);
      switch (rng() % 3) {
        case 0:
          out[p] = static_cast<char>('a' + rng() % 26);
          break;
        case 1:
          out.insert(out.begin() + p, static_cast<char>('a' + rng() % 26));
          break;
        default:
          out.erase(out.begin() + p);
          break;
      }
    }
    const double sim = LevSimilarity(text, out);
    if (out != text && sim >= min_similarity && sim < 100) return out;
  }
}

std::pair<DocumentGraph, DocumentGraph> RandomPair(std::mt19937_64& rng, int max_sentences) {
  std::uniform_int_distribution<int> count(1, max_sentences);
  std::uniform_int_distribution<int> words(3, 9);
  const int total = count(rng);
  std::vector<std::string> pool;
  for (int s = 0; s < total; ++s) pool.push_back(RandomSentence(rng, words(rng), 30));

  // Old side: the pool with a few duplicates, cut into paragraphs.
  std::vector<std::string> old_sentences = pool;
  for (size_t s = 0; s < old_sentences.size(); ++s) {
    if (rng() % 10 == 0 && old_sentences.size() < static_cast<size_t>(max_sentences)) {
      old_sentences.push_back(old_sentences[rng() % old_sentences.size()]);
    }
  }
  std::vector<std::string> new_sentences;
  for (const std::string& s : old_sentences) {
    switch (rng() % 8) {
      case 0:
        break;  // dropped
      case 1:
      case 2:
        new_sentences.push_back(Perturb(rng, s, 80));
        break;
      case 3:
        new_sentences.push_back(RandomSentence(rng, words(rng), 30));
        break;
      default:
        new_sentences.push_back(s);
    }
    if (rng() % 10 == 0) new_sentences.push_back(RandomSentence(rng, words(rng), 30));
  }
  if (new_sentences.empty()) new_sentences.push_back(RandomSentence(rng, 5, 30));
  while (new_sentences.size() > static_cast<size_t>(max_sentences)) new_sentences.pop_back();

  auto chunk = [&](const std::vector<std::string>& sentences) {
    Paragraphs paragraphs;
    std::uniform_int_distribution<int> size(1, 4);
    for (size_t s = 0; s < sentences.size();) {
      const size_t n = std::min<size_t>(size(rng), sentences.size() - s);
      paragraphs.emplace_back(sentences.begin() + s, sentences.begin() + s + n);
      s += n;
    }
    return paragraphs;
  };
  return {MakeDoc("d", DocVersion::kOld, chunk(old_sentences)),
          MakeDoc("d", DocVersion::kNew, chunk(new_sentences))};
}

}  // namespace revgraph::test_util
