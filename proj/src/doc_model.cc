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

#include "revgraph/doc_model.h"

#include <algorithm>
#include <array>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "revgraph/edit_graph.h"
#include "revgraph/text.h"

namespace revgraph {
namespace {

template <typename Enum, size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<Granularity, 4> kGranularityNames = {{
    {Granularity::kSection, "section"},
    {Granularity::kParagraph, "paragraph"},
    {Granularity::kSentence, "sentence"},
    {Granularity::kSubsentence, "subsentence"},
}};

constexpr NameTable<DocVersion, 4> kVersionNames = {{
    {DocVersion::kOld, "old"},
    {DocVersion::kNew, "new"},
    {DocVersion::kReview, "review"},
    {DocVersion::kResponse, "response"},
}};

constexpr NameTable<EditAction, 6> kActionNames = {{
    {EditAction::kAdd, "Add"},
    {EditAction::kDelete, "Delete"},
    {EditAction::kModify, "Modify"},
    {EditAction::kMerge, "Merge"},
    {EditAction::kSplit, "Split"},
    {EditAction::kFusion, "Fusion"},
}};

constexpr NameTable<ContentSublabel, 2> kSublabelNames = {{
    {ContentSublabel::kModify, "Modify"},
    {ContentSublabel::kIdentical, "Identical"},
}};

constexpr NameTable<EditIntent, 5> kIntentNames = {{
    {EditIntent::kGrammar, "Grammar"},
    {EditIntent::kClarity, "Clarity"},
    {EditIntent::kFactEvidence, "Fact/Evidence"},
    {EditIntent::kClaim, "Claim"},
    {EditIntent::kOther, "Other"},
}};

constexpr NameTable<Provenance, 3> kProvenanceNames = {{
    {Provenance::kAuto, "auto"},
    {Provenance::kHuman, "human"},
    {Provenance::kLlmAssisted, "llm_assisted"},
}};

constexpr NameTable<RequestKind, 4> kRequestKindNames = {{
    {RequestKind::kExplicitEdit, "explicit_edit"},
    {RequestKind::kImplicitEdit, "implicit_edit"},
    {RequestKind::kGeneralWeakness, "general_weakness"},
    {RequestKind::kNonRequest, "non_request"},
}};

constexpr NameTable<CrossLinkKind, 2> kCrossLinkKindNames = {{
    {CrossLinkKind::kReviewToEdit, "review_to_edit"},
    {CrossLinkKind::kResponseToEdit, "response_to_edit"},
}};

template <typename Enum, size_t N>
std::string NameOf(const NameTable<Enum, N>& table, Enum value) {
  for (const auto& [e, name] : table) {
    if (e == value) return std::string(name);
  }
  return "?";
}

template <typename Enum, size_t N>
std::optional<Enum> ParseName(const NameTable<Enum, N>& table,
                              std::string_view s) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  return std::nullopt;
}

bool ValidParent(Granularity child, std::optional<Granularity> parent) {
  switch (child) {
    case Granularity::kSection:
      return !parent || *parent == Granularity::kSection;
    case Granularity::kParagraph:
      return !parent || *parent == Granularity::kSection;
    case Granularity::kSentence:
      return parent && *parent == Granularity::kParagraph;
    case Granularity::kSubsentence:
      return parent && *parent == Granularity::kSentence;
  }
  return false;
}

}  // namespace

bool IsSemantic(EditIntent intent) {
  return intent == EditIntent::kFactEvidence || intent == EditIntent::kClaim;
}

std::string ToString(Granularity g) { return NameOf(kGranularityNames, g); }
std::string ToString(DocVersion v) { return NameOf(kVersionNames, v); }
std::string ToString(EditAction a) { return NameOf(kActionNames, a); }
std::string ToString(ContentSublabel s) { return NameOf(kSublabelNames, s); }
std::string ToString(EditIntent i) { return NameOf(kIntentNames, i); }
std::string ToString(Provenance p) { return NameOf(kProvenanceNames, p); }
std::string ToString(RequestKind k) { return NameOf(kRequestKindNames, k); }
std::string ToString(CrossLinkKind k) {
  return NameOf(kCrossLinkKindNames, k);
}

std::optional<Granularity> ParseGranularity(std::string_view s) {
  return ParseName(kGranularityNames, s);
}
std::optional<DocVersion> ParseDocVersion(std::string_view s) {
  return ParseName(kVersionNames, s);
}
std::optional<EditAction> ParseEditAction(std::string_view s) {
  return ParseName(kActionNames, s);
}
std::optional<ContentSublabel> ParseContentSublabel(std::string_view s) {
  return ParseName(kSublabelNames, s);
}
std::optional<EditIntent> ParseEditIntent(std::string_view s) {
  return ParseName(kIntentNames, s);
}
std::optional<Provenance> ParseProvenance(std::string_view s) {
  return ParseName(kProvenanceNames, s);
}
std::optional<RequestKind> ParseRequestKind(std::string_view s) {
  return ParseName(kRequestKindNames, s);
}
std::optional<CrossLinkKind> ParseCrossLinkKind(std::string_view s) {
  return ParseName(kCrossLinkKindNames, s);
}

absl::StatusOr<DocumentGraph> DocumentGraph::Create(
    std::string doc_id, DocVersion version, std::vector<TextNode> nodes) {
  if (doc_id.empty()) return absl::InvalidArgumentError("empty doc_id");
  DocumentGraph g;
  g.doc_id_ = std::move(doc_id);
  g.version_ = version;
  g.nodes_ = std::move(nodes);

  std::unordered_map<std::string, int> child_counts;  // parent id -> count
  const std::string kRootKey = "\x01root";
  std::vector<int> sentence_children(g.nodes_.size(), 0);

  g.paragraph_index_.assign(g.nodes_.size(), -1);
  g.sentence_index_.assign(g.nodes_.size(), -1);

  for (size_t i = 0; i < g.nodes_.size(); ++i) {
    const TextNode& node = g.nodes_[i];
    if (node.id.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("node #", i, " has empty id"));
    }
    if (!g.index_.emplace(node.id, static_cast<int>(i)).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate node id: ", node.id));
    }
    std::optional<Granularity> parent_granularity;
    int parent_index = -1;
    if (node.parent) {
      auto it = g.index_.find(*node.parent);
      // Parents must precede children, which rules out cycles.
      if (it == g.index_.end() || it->second == static_cast<int>(i)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "node ", node.id, " references unknown or later parent ", *node.parent));
      }
      parent_index = it->second;
      parent_granularity = g.nodes_[parent_index].granularity;
    }
    if (!ValidParent(node.granularity, parent_granularity)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "node ", node.id, " (", ToString(node.granularity),
          ") has invalid parent granularity ",
          parent_granularity ? ToString(*parent_granularity) : "root"));
    }
    int& expected_ordinal = child_counts[node.parent ? *node.parent : kRootKey];
    if (node.ordinal != expected_ordinal) {
      return absl::InvalidArgumentError(absl::StrCat(
          "node ", node.id, " has ordinal ", node.ordinal, ", expected ",
          expected_ordinal));
    }
    ++expected_ordinal;
    const bool container = node.granularity == Granularity::kSection;
    if (!container && TrimWhitespace(node.text).empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("node ", node.id, " has empty text"));
    }
    if (node.granularity == Granularity::kParagraph) {
      g.paragraph_index_[i] = g.paragraph_count_++;
    } else if (parent_index >= 0 && node.granularity < Granularity::kParagraph) {
      g.paragraph_index_[i] = g.paragraph_index_[parent_index];
    }
    if (node.granularity == Granularity::kSentence) {
      g.sentence_index_[i] = g.sentence_count_++;
      ++sentence_children[parent_index];
      if (g.nodes_[parent_index].is_protected) {
        return absl::InvalidArgumentError(absl::StrCat(
            "protected node ", g.nodes_[parent_index].id,
            " must not have sentence children"));
      }
    }
  }
  return g;
}

const TextNode* DocumentGraph::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

std::vector<const TextNode*> DocumentGraph::Children(
    const std::optional<std::string>& parent_id) const {
  std::vector<const TextNode*> out;
  for (const TextNode& node : nodes_) {
    if (node.parent == parent_id) out.push_back(&node);
  }
  return out;
}

std::vector<const TextNode*> DocumentGraph::NodesAt(Granularity g) const {
  std::vector<const TextNode*> out;
  for (const TextNode& node : nodes_) {
    if (node.granularity == g) out.push_back(&node);
  }
  return out;
}

std::optional<int> DocumentGraph::ParagraphIndex(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end() || paragraph_index_[it->second] < 0) return std::nullopt;
  return paragraph_index_[it->second];
}

std::optional<int> DocumentGraph::SentenceIndex(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end() || sentence_index_[it->second] < 0) return std::nullopt;
  return sentence_index_[it->second];
}

std::optional<int> DocumentGraph::PreorderIndex(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const TextNode* DocumentGraph::Ancestor(std::string_view id, Granularity g) const {
  const TextNode* node = Find(id);
  while (node != nullptr && node->granularity != g) {
    if (node->granularity > g || !node->parent) return nullptr;
    node = Find(*node->parent);
  }
  return node;
}

bool DocumentGraph::IsSegmented() const {
  std::unordered_map<std::string, int> sentence_children;
  for (const TextNode& node : nodes_) {
    if (node.granularity == Granularity::kSentence) ++sentence_children[*node.parent];
  }
  for (const TextNode& node : nodes_) {
    if (node.granularity == Granularity::kParagraph && !node.is_protected &&
        sentence_children[node.id] == 0) {
      return false;
    }
  }
  return true;
}

std::string_view DocumentGraph::LocalPath(std::string_view node_id) {
  size_t first = node_id.find(':');
  if (first == std::string_view::npos) return node_id;
  size_t second = node_id.find(':', first + 1);
  if (second == std::string_view::npos) return node_id.substr(first + 1);
  return node_id.substr(second + 1);
}

absl::StatusOr<DocumentGraph> BuildDocument(const DocumentInput& input) {
  if (input.doc_id.find(':') != std::string::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("doc_id must not contain ':': ", input.doc_id));
  }
  size_t paragraph_total = 0;
  for (const SectionInput& section : input.sections) {
    paragraph_total += section.paragraphs.size();
  }
  if (paragraph_total == 0) return absl::InvalidArgumentError("empty document");

  const std::string prefix =
      absl::StrCat(input.doc_id, ":", ToString(input.version), ":");
  std::vector<TextNode> nodes;
  int paragraph_index = 0;
  for (size_t s = 0; s < input.sections.size(); ++s) {
    const SectionInput& section = input.sections[s];
    TextNode section_node;
    section_node.id = absl::StrCat(prefix, "sec", s);
    section_node.granularity = Granularity::kSection;
    section_node.text = NormalizeNfc(section.title);
    section_node.ordinal = static_cast<int>(s);
    section_node.is_protected = true;
    nodes.push_back(section_node);
    for (size_t p = 0; p < section.paragraphs.size(); ++p) {
      const ParagraphInput& paragraph = section.paragraphs[p];
      TextNode paragraph_node;
      const std::string path = absl::StrCat("p", paragraph_index++);
      paragraph_node.id = prefix + path;
      paragraph_node.granularity = Granularity::kParagraph;
      paragraph_node.text = NormalizeNfc(paragraph.text);
      paragraph_node.parent = section_node.id;
      paragraph_node.ordinal = static_cast<int>(p);
      paragraph_node.is_protected = paragraph.is_protected;
      nodes.push_back(paragraph_node);
      if (!paragraph.sentences || paragraph.is_protected) continue;
      for (size_t k = 0; k < paragraph.sentences->size(); ++k) {
        TextNode sentence;
        sentence.id = absl::StrCat(prefix, path, ".s", k);
        sentence.granularity = Granularity::kSentence;
        sentence.text = NormalizeNfc((*paragraph.sentences)[k]);
        sentence.parent = paragraph_node.id;
        sentence.ordinal = static_cast<int>(k);
        nodes.push_back(std::move(sentence));
      }
    }
  }
  return DocumentGraph::Create(input.doc_id, input.version, std::move(nodes));
}

DocumentInput ToDocumentInput(const DocumentGraph& graph) {
  DocumentInput out;
  out.doc_id = graph.doc_id();
  out.version = graph.version();
  for (const TextNode* section : graph.NodesAt(Granularity::kSection)) {
    SectionInput s;
    s.title = section->text;
    for (const TextNode* paragraph : graph.Children(section->id)) {
      if (paragraph->granularity != Granularity::kParagraph) continue;
      ParagraphInput p;
      p.text = paragraph->text;
      p.is_protected = paragraph->is_protected;
      std::vector<std::string> sentences;
      for (const TextNode* sentence : graph.Children(paragraph->id)) {
        sentences.push_back(sentence->text);
      }
      if (!sentences.empty()) p.sentences = std::move(sentences);
      s.paragraphs.push_back(std::move(p));
    }
    out.sections.push_back(std::move(s));
  }
  return out;
}

std::vector<Link> EditLinks(const Edit& edit) {
  std::vector<Link> links;
  if (edit.new_nodes.size() == 1 && edit.old_nodes.size() == 1) {
    links.push_back({edit.new_nodes[0], edit.old_nodes[0]});
    return links;
  }
  for (const auto& [link, sublabel] : edit.sublabels) links.push_back(link);
  return links;
}

std::string MakeEditId(Granularity g, std::span<const std::string> new_nodes,
                       std::span<const std::string> old_nodes) {
  auto local = [](std::string* out, const std::string& id) {
    absl::StrAppend(out, std::string(DocumentGraph::LocalPath(id)));
  };
  const char prefix = "WSPC"[static_cast<int>(g)];
  return absl::StrCat(std::string(1, prefix), ":",
                      absl::StrJoin(new_nodes, "+", local), "|",
                      absl::StrJoin(old_nodes, "+", local));
}

void CanonicalizeEdit(Edit& edit, const DocumentGraph& old_doc,
                      const DocumentGraph& new_doc) {
  auto by_order = [](const DocumentGraph& doc) {
    return [&doc](const std::string& a, const std::string& b) {
      auto ia = doc.PreorderIndex(a), ib = doc.PreorderIndex(b);
      if (ia && ib && *ia != *ib) return *ia < *ib;
      if (ia.has_value() != ib.has_value()) return ia.has_value();
      return a < b;
    };
  };
  std::sort(edit.new_nodes.begin(), edit.new_nodes.end(), by_order(new_doc));
  edit.new_nodes.erase(std::unique(edit.new_nodes.begin(), edit.new_nodes.end()),
                       edit.new_nodes.end());
  std::sort(edit.old_nodes.begin(), edit.old_nodes.end(), by_order(old_doc));
  edit.old_nodes.erase(std::unique(edit.old_nodes.begin(), edit.old_nodes.end()),
                       edit.old_nodes.end());
  edit.id = MakeEditId(edit.granularity, edit.new_nodes, edit.old_nodes);
}

void SortEdits(std::vector<Edit>& edits, const DocumentGraph& old_doc,
               const DocumentGraph& new_doc) {
  auto key = [&](const Edit& e) {
    constexpr int kMissing = 1 << 30;
    int granularity = -static_cast<int>(e.granularity);
    if (!e.new_nodes.empty()) {
      return std::tuple(granularity, 0,
                        new_doc.PreorderIndex(e.new_nodes.front()).value_or(kMissing),
                        old_doc.PreorderIndex(e.old_nodes.empty() ? std::string()
                                                                  : e.old_nodes.front())
                            .value_or(-1),
                        e.id);
    }
    return std::tuple(granularity, 1,
                      old_doc.PreorderIndex(e.old_nodes.front()).value_or(kMissing), -1,
                      e.id);
  };
  std::stable_sort(edits.begin(), edits.end(), [&](const Edit& a, const Edit& b) {
    return key(a) < key(b);
  });
}

std::vector<std::string> ValidateEdit(const Edit& edit,
                                      const DocumentGraph& old_doc,
                                      const DocumentGraph& new_doc) {
  std::vector<std::string> violations;
  if (edit.new_nodes.empty() && edit.old_nodes.empty()) {
    violations.push_back("empty edit: no new or old nodes");
    return violations;
  }
  bool granularity_ok = true;
  auto check_nodes = [&](const std::vector<std::string>& ids,
                         const DocumentGraph& doc, const char* side) {
    std::set<std::string> seen;
    for (const std::string& id : ids) {
      if (!seen.insert(id).second) {
        violations.push_back(absl::StrCat("duplicate ", side, " node: ", id));
      }
      const TextNode* node = doc.Find(id);
      if (node == nullptr) {
        violations.push_back(absl::StrCat("dangling node: ", id));
      } else if (node->granularity != edit.granularity) {
        granularity_ok = false;
      }
    }
  };
  check_nodes(edit.new_nodes, new_doc, "new");
  check_nodes(edit.old_nodes, old_doc, "old");
  if (!granularity_ok) violations.push_back("granularity mismatch");

  auto expected = DeriveAction(static_cast<int>(edit.new_nodes.size()),
                               static_cast<int>(edit.old_nodes.size()));
  const bool partition = expected.ok() && IsPartitionAction(*expected);
  if (expected.ok() && *expected != edit.action) {
    violations.push_back(absl::StrCat("topology/action mismatch: expected ",
                                      ToString(*expected)));
  }

  if (!partition && !edit.sublabels.empty()) {
    violations.push_back("content sublabels on a non-partition edit");
  }
  if (partition) {
    std::set<std::string> new_set(edit.new_nodes.begin(), edit.new_nodes.end());
    std::set<std::string> old_set(edit.old_nodes.begin(), edit.old_nodes.end());
    std::set<std::string> covered;
    for (const auto& [link, sublabel] : edit.sublabels) {
      if (!new_set.count(link.new_id) || !old_set.count(link.old_id)) {
        violations.push_back(absl::StrCat("sublabel link outside edit: ",
                                          link.new_id, " -> ", link.old_id));
        continue;
      }
      covered.insert(link.new_id);
      covered.insert(link.old_id);
    }
    if (covered.size() != new_set.size() + old_set.size()) {
      violations.push_back("partition edit has nodes without a sublabeled link");
    } else if (ConnectedComponents(EditLinks(edit)).size() != 1) {
      violations.push_back("partition edit links are not connected");
    }
  }

  if (edit.granularity <= Granularity::kSentence && edit.intents.size() > 1) {
    violations.push_back(absl::StrCat("sentence edit carries ", edit.intents.size(),
                                      " intents, expected at most one"));
  }
  const std::string expected_id =
      MakeEditId(edit.granularity, edit.new_nodes, edit.old_nodes);
  if (!edit.id.empty() && edit.id != expected_id) {
    violations.push_back(absl::StrCat("edit id ", edit.id, " does not match nodes (",
                                      expected_id, ")"));
  }
  return violations;
}

std::vector<std::string> ValidateEditSet(std::span<const Edit> edits,
                                         const DocumentGraph& old_doc,
                                         const DocumentGraph& new_doc) {
  std::vector<std::string> violations;
  std::map<std::pair<Granularity, std::string>, std::string> owner;
  std::set<std::string> ids;
  for (const Edit& edit : edits) {
    for (std::string& v : ValidateEdit(edit, old_doc, new_doc)) {
      violations.push_back(absl::StrCat(edit.id, ": ", v));
    }
    if (!ids.insert(edit.id).second) {
      violations.push_back(absl::StrCat("duplicate edit id: ", edit.id));
    }
    for (const auto* side : {&edit.new_nodes, &edit.old_nodes}) {
      for (const std::string& node : *side) {
        auto [it, inserted] = owner.emplace(std::pair(edit.granularity, node), edit.id);
        if (!inserted && it->second != edit.id) {
          violations.push_back(absl::StrCat("node ", node, " occurs in edits ",
                                            it->second, " and ", edit.id));
        }
      }
    }
  }
  return violations;
}

std::vector<std::string> ValidateCrossLink(
    const CrossLink& link, std::span<const Edit> edits,
    std::span<const DocumentGraph> reviews, const DocumentGraph* response,
    std::span<const ReviewRequest> requests) {
  std::vector<std::string> violations;
  const bool edit_exists = std::any_of(edits.begin(), edits.end(), [&](const Edit& e) {
    return e.id == link.edit_id;
  });
  if (!edit_exists) {
    violations.push_back(absl::StrCat("dangling edit: ", link.edit_id));
  }
  const TextNode* sentence = nullptr;
  if (link.kind == CrossLinkKind::kReviewToEdit) {
    for (const DocumentGraph& review : reviews) {
      if ((sentence = review.Find(link.sentence_id)) != nullptr) break;
    }
    for (const ReviewRequest& request : requests) {
      if (request.sentence_id == link.sentence_id &&
          request.kind == RequestKind::kNonRequest) {
        violations.push_back(
            absl::StrCat("non-request sentence linked to edit: ", link.sentence_id));
      }
    }
  } else if (response != nullptr) {
    sentence = response->Find(link.sentence_id);
  }
  if (sentence == nullptr) {
    violations.push_back(absl::StrCat("dangling node: ", link.sentence_id));
  } else if (sentence->granularity != Granularity::kSentence) {
    violations.push_back(
        absl::StrCat("cross-link target is not a sentence: ", link.sentence_id));
  }
  return violations;
}

}  // namespace revgraph
