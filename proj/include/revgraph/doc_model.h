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

// Graph representation of document versions, reviews and responses, plus
// the edits and cross-document links between them.

#ifndef REVGRAPH_DOC_MODEL_H_
#define REVGRAPH_DOC_MODEL_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"

namespace revgraph {

// Ordered by scope: kSection > kParagraph > kSentence > kSubsentence.
enum class Granularity { kSubsentence = 0, kSentence = 1, kParagraph = 2, kSection = 3 };

enum class DocVersion { kOld, kNew, kReview, kResponse };

enum class EditAction { kAdd, kDelete, kModify, kMerge, kSplit, kFusion };

// Attached to each one-to-one link inside a Merge, Split or Fusion edit.
enum class ContentSublabel { kModify, kIdentical };

enum class EditIntent { kGrammar, kClarity, kFactEvidence, kClaim, kOther };

enum class Provenance { kAuto, kHuman, kLlmAssisted };

enum class RequestKind { kExplicitEdit, kImplicitEdit, kGeneralWeakness, kNonRequest };

enum class CrossLinkKind { kReviewToEdit, kResponseToEdit };

inline constexpr EditAction kAllActions[] = {
    EditAction::kAdd,   EditAction::kDelete, EditAction::kModify,
    EditAction::kMerge, EditAction::kSplit,  EditAction::kFusion};
inline constexpr EditIntent kAllIntents[] = {
    EditIntent::kGrammar, EditIntent::kClarity, EditIntent::kFactEvidence,
    EditIntent::kClaim, EditIntent::kOther};
inline constexpr RequestKind kAllRequestKinds[] = {
    RequestKind::kExplicitEdit, RequestKind::kImplicitEdit,
    RequestKind::kGeneralWeakness, RequestKind::kNonRequest};

// Fact/Evidence and Claim change meaning; the rest are surface edits.
bool IsSemantic(EditIntent intent);

std::string ToString(Granularity g);
std::string ToString(DocVersion v);
std::string ToString(EditAction a);
std::string ToString(ContentSublabel s);
std::string ToString(EditIntent i);
std::string ToString(Provenance p);
std::string ToString(RequestKind k);
std::string ToString(CrossLinkKind k);

std::optional<Granularity> ParseGranularity(std::string_view s);
std::optional<DocVersion> ParseDocVersion(std::string_view s);
std::optional<EditAction> ParseEditAction(std::string_view s);
std::optional<ContentSublabel> ParseContentSublabel(std::string_view s);
std::optional<EditIntent> ParseEditIntent(std::string_view s);
std::optional<Provenance> ParseProvenance(std::string_view s);
std::optional<RequestKind> ParseRequestKind(std::string_view s);
std::optional<CrossLinkKind> ParseCrossLinkKind(std::string_view s);

struct TextNode {
  std::string id;
  Granularity granularity = Granularity::kParagraph;
  std::string text;
  // Unset for top-level nodes, whose parent is the document root.
  std::optional<std::string> parent;
  int ordinal = 0;
  bool is_protected = false;

  bool operator==(const TextNode&) const = default;
};

// Structured input accepted by BuildDocument. When `sentences` is present
// the paragraph is already segmented.
struct ParagraphInput {
  std::string text;
  bool is_protected = false;
  std::optional<std::vector<std::string>> sentences;

  bool operator==(const ParagraphInput&) const = default;
};

struct SectionInput {
  std::string title;
  std::vector<ParagraphInput> paragraphs;

  bool operator==(const SectionInput&) const = default;
};

struct DocumentInput {
  std::string doc_id;
  DocVersion version = DocVersion::kOld;
  std::vector<SectionInput> sections;

  bool operator==(const DocumentInput&) const = default;
};

// An immutable ordered tree of text nodes for one document version. Nodes
// are stored in preorder; the root is implicit.
class DocumentGraph {
 public:
  // An empty graph with no nodes.
  DocumentGraph() = default;

  // Validates every structural invariant and indexes the nodes.
  static absl::StatusOr<DocumentGraph> Create(std::string doc_id,
                                              DocVersion version,
                                              std::vector<TextNode> nodes);

  const std::string& doc_id() const { return doc_id_; }
  DocVersion version() const { return version_; }
  std::span<const TextNode> nodes() const { return nodes_; }

  const TextNode* Find(std::string_view id) const;
  bool Contains(std::string_view id) const { return Find(id) != nullptr; }

  // Children of `parent_id`, or the top-level nodes when unset.
  std::vector<const TextNode*> Children(
      const std::optional<std::string>& parent_id) const;

  std::vector<const TextNode*> NodesAt(Granularity g) const;
  std::vector<const TextNode*> Sentences() const {
    return NodesAt(Granularity::kSentence);
  }
  std::vector<const TextNode*> Paragraphs() const {
    return NodesAt(Granularity::kParagraph);
  }

  int paragraph_count() const { return paragraph_count_; }
  int sentence_count() const { return sentence_count_; }

  // Linear index of the paragraph containing (or equal to) the node.
  std::optional<int> ParagraphIndex(std::string_view id) const;
  // Position of a sentence among all sentences of the document.
  std::optional<int> SentenceIndex(std::string_view id) const;
  // Position in preorder; used to sort node ids into document order.
  std::optional<int> PreorderIndex(std::string_view id) const;

  // The node itself or its nearest ancestor with granularity `g`.
  const TextNode* Ancestor(std::string_view id, Granularity g) const;

  // True when every unprotected paragraph has sentence children.
  bool IsSegmented() const;

  // Local part of a node id (after "doc:version:").
  static std::string_view LocalPath(std::string_view node_id);

  bool operator==(const DocumentGraph& other) const {
    return doc_id_ == other.doc_id_ && version_ == other.version_ &&
           nodes_ == other.nodes_;
  }

 private:

  std::string doc_id_;
  DocVersion version_ = DocVersion::kOld;
  std::vector<TextNode> nodes_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> paragraph_index_;
  std::vector<int> sentence_index_;
  int paragraph_count_ = 0;
  int sentence_count_ = 0;
};

// Builds the graph for a structured document. Texts are NFC-normalized.
// Node ids are "{doc_id}:{version}:{path}" with paths "sec{i}", "p{k}"
// (k is the document-wide paragraph index) and "p{k}.s{m}".
absl::StatusOr<DocumentGraph> BuildDocument(const DocumentInput& input);

// Inverse of BuildDocument; sentences are exported when present.
DocumentInput ToDocumentInput(const DocumentGraph& graph);

struct Link {
  std::string new_id;
  std::string old_id;

  auto operator<=>(const Link&) const = default;
};

struct Edit {
  std::string id;
  std::vector<std::string> new_nodes;  // document order
  std::vector<std::string> old_nodes;  // document order
  Granularity granularity = Granularity::kSentence;
  EditAction action = EditAction::kModify;
  std::map<Link, ContentSublabel> sublabels;
  std::set<EditIntent> intents;
  Provenance provenance = Provenance::kAuto;

  bool operator==(const Edit&) const = default;
};

// The links an edit asserts: the single pair of a Modify, the sublabel keys
// of a partition edit, nothing for Add and Delete.
std::vector<Link> EditLinks(const Edit& edit);

// Stable id derived from granularity and node paths, e.g. "S:p3.s2|p3.s1".
std::string MakeEditId(Granularity g, std::span<const std::string> new_nodes,
                       std::span<const std::string> old_nodes);

// Sorts node lists into document order and recomputes the id.
void CanonicalizeEdit(Edit& edit, const DocumentGraph& old_doc,
                      const DocumentGraph& new_doc);

// Sorts edits: those touching the new document by first new node, then
// deletions by first old node.
void SortEdits(std::vector<Edit>& edits, const DocumentGraph& old_doc,
               const DocumentGraph& new_doc);

// Returns every violated edit invariant by name; empty means valid.
std::vector<std::string> ValidateEdit(const Edit& edit,
                                      const DocumentGraph& old_doc,
                                      const DocumentGraph& new_doc);

// ValidateEdit over each edit plus the partition property: no node occurs
// in more than one edit of the same granularity.
std::vector<std::string> ValidateEditSet(std::span<const Edit> edits,
                                         const DocumentGraph& old_doc,
                                         const DocumentGraph& new_doc);

struct ReviewRequest {
  std::string sentence_id;
  RequestKind kind = RequestKind::kNonRequest;

  bool operator==(const ReviewRequest&) const = default;
};

struct CrossLink {
  CrossLinkKind kind = CrossLinkKind::kReviewToEdit;
  std::string edit_id;
  std::string sentence_id;

  bool operator==(const CrossLink&) const = default;
};

// Checks that the link references an existing edit and a sentence of a
// graph with the matching version (review or response), and that review
// links never start at a NonRequest sentence.
std::vector<std::string> ValidateCrossLink(
    const CrossLink& link, std::span<const Edit> edits,
    std::span<const DocumentGraph> reviews, const DocumentGraph* response,
    std::span<const ReviewRequest> requests);

}  // namespace revgraph

#endif  // REVGRAPH_DOC_MODEL_H_
