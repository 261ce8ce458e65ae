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

// Unicode helpers shared by ingestion, segmentation and the similarity
// measures. All strings are UTF-8 unless a function says otherwise.

#ifndef REVGRAPH_TEXT_H_
#define REVGRAPH_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace revgraph {

// Canonical composition (NFC). Invalid UTF-8 sequences are replaced by
// U+FFFD.
std::string NormalizeNfc(std::string_view text);

// Decodes UTF-8 into code points; invalid bytes become U+FFFD.
std::u32string ToCodePoints(std::string_view text);
std::string FromCodePoints(std::u32string_view text);

bool IsWhitespace(char32_t c);
bool IsUppercase(char32_t c);

// Trims leading and trailing whitespace and collapses internal runs of
// whitespace into a single ASCII space.
std::string CollapseWhitespace(std::string_view text);

std::string_view TrimWhitespace(std::string_view text);

// Splits on runs of whitespace, dropping empty tokens.
std::vector<std::string> SplitOnWhitespace(std::string_view text);

}  // namespace revgraph

#endif  // REVGRAPH_TEXT_H_
