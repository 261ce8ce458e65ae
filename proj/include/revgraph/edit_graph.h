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

// Edit actions from link topology, human corrections over the link graph,
// and lifting of sentence edits to paragraph and section granularity.

#ifndef REVGRAPH_EDIT_GRAPH_H_
#define REVGRAPH_EDIT_GRAPH_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "revgraph/doc_model.h"

namespace revgraph {

// Action for an edit linking `new_count` new elements to `old_count` old
// ones: (1,0) Add, (0,1) Delete, (1,1) Modify, (1,n) Merge, (n,1) Split,
// (m,n) Fusion. (0,0) is an error, as is any count above one on a side
// whose other side is empty.
absl::StatusOr<EditAction> DeriveAction(int new_count, int old_count);

bool IsPartitionAction(EditAction action);

// A connected component of a bipartite new/old link graph.
struct LinkComponent {
  std::vector<std::string> new_nodes;
  std::vector<std::string> old_nodes;
  std::vector<Link> links;
};

// Components in order of first appearance of their links.
std::vector<LinkComponent> ConnectedComponents(std::span<const Link> links);

// Builds a canonical edit for a component. Partition edits get one content
// sublabel per link: Identical when both texts match exactly, else Modify.
absl::StatusOr<Edit> MakeComponentEdit(const LinkComponent& component,
                                       Granularity granularity,
                                       Provenance provenance,
                                       const DocumentGraph& old_doc,
                                       const DocumentGraph& new_doc);

// One annotator correction. Link operations name a new and an old node;
// label operations address an edit by id or by any of its nodes.
struct Correction {
  enum class Op { kAddLink, kRemoveLink, kSetIntent, kSetActionSublabel };

  Op op = Op::kAddLink;
  std::string new_id;
  std::string old_id;
  std::string edit_id;
  std::string node_id;
  std::optional<EditIntent> intent;
  std::optional<ContentSublabel> sublabel;

  bool operator==(const Correction&) const = default;
};

std::string ToString(Correction::Op op);
std::optional<Correction::Op> ParseCorrectionOp(std::string_view s);

// Applies link corrections, re-partitions the link graph into connected
// components and re-derives every action. Edits whose component is
// unchanged are returned as-is; new or relabeled edits get provenance
// Human. Label operations run after the link operations and address the
// re-partitioned edits. Errors name the offending correction by position.
absl::StatusOr<std::vector<Edit>> ApplyCorrections(
    std::span<const Edit> edits, std::span<const Correction> corrections,
    const DocumentGraph& old_doc, const DocumentGraph& new_doc);

// Groups sentence edits by the containers (paragraphs or sections) they
// touch. Containers are joined through edit links and through unchanged
// identical sentences; each group becomes one edit at `target`, labeled
// Add when it has only new containers, Delete when only old ones, and
// otherwise by topology (Modify for a single container pair). Intents are
// the union of member intents.
absl::StatusOr<std::vector<Edit>> LiftEdits(std::span<const Edit> sentence_edits,
                                            Granularity target,
                                            const DocumentGraph& old_doc,
                                            const DocumentGraph& new_doc);

// Maps each sentence edit id to the id of the lifted edit containing it.
absl::StatusOr<std::vector<std::pair<std::string, std::string>>> LiftMembership(
    std::span<const Edit> sentence_edits, Granularity target,
    const DocumentGraph& old_doc, const DocumentGraph& new_doc);

}  // namespace revgraph

#endif  // REVGRAPH_EDIT_GRAPH_H_
