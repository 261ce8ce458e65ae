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

#include "revgraph/segmentation.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "revgraph/status_macros.h"
#include "revgraph/text.h"

namespace revgraph {
namespace {

constexpr std::string_view kBuiltinAbbreviations =
#include "abbreviations.inc"
    ;

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Closing and opening punctuation that may surround a sentence boundary,
// as UTF-8 sequences.
constexpr std::string_view kClosers[] = {")", "]", "\"", "'", "\xE2\x80\x9D",
                                         "\xE2\x80\x99", "\xC2\xBB"};
constexpr std::string_view kOpeners[] = {"(", "[", "\"", "'", "\xE2\x80\x9C",
                                         "\xE2\x80\x98", "\xC2\xAB"};

size_t MatchAny(std::string_view text, size_t pos,
                std::span<const std::string_view> options) {
  for (std::string_view o : options) {
    if (text.substr(pos, o.size()) == o) return o.size();
  }
  return 0;
}

// Length of a whitespace run at `pos`, including multi-byte separators.
size_t WhitespaceRun(std::string_view text, size_t pos) {
  size_t start = pos;
  while (pos < text.size()) {
    if (IsAsciiSpace(text[pos])) {
      ++pos;
      continue;
    }
    if (static_cast<unsigned char>(text[pos]) < 0x80) break;
    size_t len = 1;
    while (pos + len < text.size() &&
           (static_cast<unsigned char>(text[pos + len]) & 0xC0) == 0x80) {
      ++len;
    }
    std::u32string cp = ToCodePoints(text.substr(pos, len));
    if (cp.size() != 1 || !IsWhitespace(cp[0])) break;
    pos += len;
  }
  return pos - start;
}

char32_t CodePointAt(std::string_view text, size_t pos) {
  if (pos >= text.size()) return 0;
  size_t len = 1;
  while (pos + len < text.size() &&
         (static_cast<unsigned char>(text[pos + len]) & 0xC0) == 0x80) {
    ++len;
  }
  std::u32string cp = ToCodePoints(text.substr(pos, len));
  return cp.empty() ? 0 : cp[0];
}

// Word ending right before `dot`, lowercased, with leading brackets and
// quotes removed.
std::string WordBefore(std::string_view text, size_t dot) {
  size_t begin = dot;
  while (begin > 0 && !IsAsciiSpace(text[begin - 1])) --begin;
  size_t skip = 0;
  while (begin + skip < dot) {
    size_t n = MatchAny(text, begin + skip, kOpeners);
    if (n == 0) break;
    skip += n;
  }
  return absl::AsciiStrToLower(std::string(text.substr(begin + skip, dot - begin - skip)));
}

// Converts boundary cut points into trimmed spans.
std::vector<Span> SpansFromCuts(std::string_view text, std::vector<size_t> cuts) {
  std::vector<Span> spans;
  cuts.push_back(text.size());
  size_t start = 0;
  for (size_t cut : cuts) {
    std::string_view piece = text.substr(start, cut - start);
    std::string_view trimmed = TrimWhitespace(piece);
    if (!trimmed.empty()) {
      size_t offset = static_cast<size_t>(trimmed.data() - text.data());
      spans.push_back({offset, offset + trimmed.size()});
    }
    start = cut;
  }
  return spans;
}

template <typename Accept>
std::vector<Span> SplitAtTerminals(std::string_view text, Accept accept) {
  std::vector<size_t> cuts;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    const size_t run_begin = i;
    while (i < text.size() && IsTerminal(text[i])) ++i;
    const size_t run_end = i;
    while (i < text.size()) {
      size_t n = MatchAny(text, i, kClosers);
      if (n == 0) break;
      i += n;
    }
    const size_t boundary = i;
    const size_t ws = WhitespaceRun(text, boundary);
    if (ws == 0) continue;
    size_t next = boundary + ws;
    while (next < text.size()) {
      size_t n = MatchAny(text, next, kOpeners);
      if (n == 0) break;
      next += n;
    }
    if (next >= text.size()) continue;
    if (accept(run_begin, run_end, next)) cuts.push_back(boundary);
  }
  return SpansFromCuts(text, std::move(cuts));
}

}  // namespace

const AbbreviationSet& AbbreviationSet::Default() {
  static const AbbreviationSet* kDefault = [] {
    auto* set = new AbbreviationSet();
    std::istringstream lines{std::string(kBuiltinAbbreviations)};
    std::string line;
    while (std::getline(lines, line)) {
      std::string entry(TrimWhitespace(line));
      if (entry.empty() || entry[0] == '#') continue;
      set->entries_.insert(absl::AsciiStrToLower(entry));
    }
    return set;
  }();
  return *kDefault;
}

absl::Status AbbreviationSet::MergeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::string line;
  while (std::getline(in, line)) {
    std::string entry(TrimWhitespace(line));
    if (entry.empty() || entry[0] == '#') continue;
    if (entry.back() == '.') entry.pop_back();
    entries_.insert(absl::AsciiStrToLower(entry));
  }
  return absl::OkStatus();
}

bool AbbreviationSet::Contains(std::string_view word) const {
  return entries_.find(word) != entries_.end();
}

absl::Status ValidateSpans(std::string_view text, std::span<const Span> spans) {
  size_t cursor = 0;
  for (size_t k = 0; k < spans.size(); ++k) {
    const Span& s = spans[k];
    if (s.begin >= s.end || s.end > text.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("span ", k, " [", s.begin, ",", s.end, ") is empty or out of range"));
    }
    if (s.begin < cursor) {
      return absl::InvalidArgumentError(
          absl::StrCat("span ", k, " overlaps or is out of order"));
    }
    if (!TrimWhitespace(text.substr(cursor, s.begin - cursor)).empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("text before span ", k, " is not covered"));
    }
    std::string_view body = text.substr(s.begin, s.end - s.begin);
    if (TrimWhitespace(body).size() != body.size()) {
      return absl::InvalidArgumentError(absl::StrCat("span ", k, " is not trimmed"));
    }
    cursor = s.end;
  }
  if (!TrimWhitespace(text.substr(cursor)).empty()) {
    return absl::InvalidArgumentError("trailing text is not covered");
  }
  return absl::OkStatus();
}

std::vector<Span> DefaultSplit(std::string_view text,
                               const AbbreviationSet& abbreviations) {
  return SplitAtTerminals(text, [&](size_t run_begin, size_t run_end, size_t next) {
    if (!IsUppercase(CodePointAt(text, next))) return false;
    if (run_end - run_begin == 1 && text[run_begin] == '.') {
      std::string word = WordBefore(text, run_begin);
      if (!word.empty() && abbreviations.Contains(word)) return false;
    }
    return true;
  });
}

std::vector<Span> NaiveSplit(std::string_view text) {
  return SplitAtTerminals(text, [](size_t, size_t, size_t) { return true; });
}

Segmenter MakeDefaultSegmenter(std::shared_ptr<const AbbreviationSet> abbreviations) {
  if (abbreviations == nullptr) {
    return {"default", [](std::string_view text) { return DefaultSplit(text); }};
  }
  return {"default", [abbreviations](std::string_view text) {
            return DefaultSplit(text, *abbreviations);
          }};
}

Segmenter MakeNaiveSegmenter() { return {"naive", NaiveSplit}; }

absl::StatusOr<std::vector<Segmenter>> SegmentersByName(
    std::span<const std::string> names,
    std::shared_ptr<const AbbreviationSet> abbreviations) {
  std::vector<Segmenter> out;
  for (const std::string& name : names) {
    if (name == "default") {
      out.push_back(MakeDefaultSegmenter(abbreviations));
    } else if (name == "naive") {
      out.push_back(MakeNaiveSegmenter());
    } else {
      return absl::InvalidArgumentError(absl::StrCat("unknown segmenter: ", name));
    }
  }
  if (out.empty()) return absl::InvalidArgumentError("no segmenters configured");
  return out;
}

absl::StatusOr<std::vector<Span>> SegmentParagraph(
    std::string_view text, std::span<const Segmenter> segmenters) {
  if (segmenters.empty()) {
    return absl::InvalidArgumentError("at least one segmenter is required");
  }
  std::optional<std::vector<Span>> best;
  for (const Segmenter& segmenter : segmenters) {
    std::vector<Span> spans = segmenter.split(text);
    absl::Status valid = ValidateSpans(text, spans);
    if (!valid.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "segmenter '", segmenter.name, "' produced invalid spans: ", valid.message()));
    }
    if (!best || spans.size() < best->size()) best = std::move(spans);
  }
  return *std::move(best);
}

std::vector<std::string> SpanTexts(std::string_view text, std::span<const Span> spans) {
  std::vector<std::string> out;
  out.reserve(spans.size());
  for (const Span& s : spans) out.emplace_back(text.substr(s.begin, s.end - s.begin));
  return out;
}

absl::StatusOr<DocumentInput> SegmentDocument(const DocumentInput& input,
                                              std::span<const Segmenter> segmenters,
                                              bool overwrite) {
  DocumentInput out = input;
  for (SectionInput& section : out.sections) {
    for (ParagraphInput& paragraph : section.paragraphs) {
      if (paragraph.is_protected) {
        paragraph.sentences.reset();
        continue;
      }
      if (paragraph.sentences && !overwrite) continue;
      const std::string text = NormalizeNfc(paragraph.text);
      ASSIGN_OR_RETURN(std::vector<Span> spans, SegmentParagraph(text, segmenters));
      paragraph.sentences = SpanTexts(text, spans);
    }
  }
  return out;
}

absl::StatusOr<DocumentGraph> SegmentGraph(const DocumentGraph& graph,
                                           std::span<const Segmenter> segmenters,
                                           bool overwrite) {
  ASSIGN_OR_RETURN(DocumentInput segmented,
                   SegmentDocument(ToDocumentInput(graph), segmenters, overwrite));
  return BuildDocument(segmented);
}

}  // namespace revgraph
