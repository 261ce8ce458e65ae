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

// Document and edit builders shared by the unit and acceptance tests.

#ifndef REVGRAPH_TESTS_TEST_UTIL_H_
#define REVGRAPH_TESTS_TEST_UTIL_H_

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "revgraph/doc_model.h"

namespace revgraph::test_util {

using Paragraphs = std::vector<std::vector<std::string>>;
using SectionSpec = std::pair<std::string, Paragraphs>;

// Segmented document with one section; paragraph text is its sentences
// joined by single spaces. Aborts on invalid input.
DocumentGraph MakeDoc(const std::string& doc_id, DocVersion version,
                      const Paragraphs& paragraphs);
DocumentGraph MakeSectionedDoc(const std::string& doc_id, DocVersion version,
                               const std::vector<SectionSpec>& sections);

// "doc:version:p{p}.s{s}" and "doc:version:p{p}".
std::string SentenceId(const DocumentGraph& doc, int paragraph, int sentence);
std::string ParagraphId(const DocumentGraph& doc, int paragraph);

// Canonical sentence edit between the two documents.
Edit MakeEdit(EditAction action, std::vector<std::string> new_nodes,
              std::vector<std::string> old_nodes, const DocumentGraph& old_doc,
              const DocumentGraph& new_doc, std::set<EditIntent> intents = {});

// A fresh empty directory under the gtest temp dir.
std::string MakeTempDir(const std::string& name);

// Random sentence of `words` tokens drawn from a vocabulary of `vocabulary`
// pseudo-words.
std::string RandomSentence(std::mt19937_64& rng, int words, int vocabulary);

// Random old/new pair with at most `max_sentences` sentences per side. The
// new side keeps, lightly edits, rewrites, drops, duplicates and inserts
// sentences, so ties, identical content and near matches all occur.
std::pair<DocumentGraph, DocumentGraph> RandomPair(std::mt19937_64& rng, int max_sentences);

// Copy of `text` with character edits until its Levenshtein similarity to
// the original lies in [min_similarity, 100).
std::string Perturb(std::mt19937_64& rng, const std::string& text, double min_similarity);

}  // namespace revgraph::test_util

#endif  // REVGRAPH_TESTS_TEST_UTIL_H_
