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

#include "revgraph/edit_graph.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "absl/strings/str_cat.h"
#include "revgraph/alignment.h"
#include "revgraph/status_macros.h"
#include "revgraph/text.h"

namespace revgraph {
namespace {

// Node keys carry their side so identical ids on both sides stay apart.
std::string NewKey(const std::string& id) { return absl::StrCat("n|", id); }
std::string OldKey(const std::string& id) { return absl::StrCat("o|", id); }

class DisjointSets {
 public:
  int Add(const std::string& key) {
    auto [it, inserted] = index_.emplace(key, static_cast<int>(parent_.size()));
    if (inserted) parent_.push_back(it->second);
    return it->second;
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  int Find(const std::string& key) { return Find(index_.at(key)); }

 private:
  std::map<std::string, int> index_;
  std::vector<int> parent_;
};

int ProvenanceRank(Provenance p) {
  switch (p) {
    case Provenance::kAuto:
      return 0;
    case Provenance::kLlmAssisted:
      return 1;
    case Provenance::kHuman:
      return 2;
  }
  return 0;
}

ContentSublabel SublabelFor(const TextNode* n, const TextNode* o) {
  return CollapseWhitespace(n->text) == CollapseWhitespace(o->text)
             ? ContentSublabel::kIdentical
             : ContentSublabel::kModify;
}

std::string CorrectionError(size_t index, const std::string& what) {
  return absl::StrCat("correction #", index, ": ", what);
}

}  // namespace

absl::StatusOr<EditAction> DeriveAction(int new_count, int old_count) {
  if (new_count < 0 || old_count < 0 || (new_count == 0 && old_count == 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("no action for ", new_count, " new and ", old_count, " old nodes"));
  }
  if (old_count == 0) {
    if (new_count == 1) return EditAction::kAdd;
    return absl::InvalidArgumentError(
        absl::StrCat("an addition covers one node, got ", new_count));
  }
  if (new_count == 0) {
    if (old_count == 1) return EditAction::kDelete;
    return absl::InvalidArgumentError(
        absl::StrCat("a deletion covers one node, got ", old_count));
  }
  if (new_count == 1 && old_count == 1) return EditAction::kModify;
  if (new_count == 1) return EditAction::kMerge;
  if (old_count == 1) return EditAction::kSplit;
  return EditAction::kFusion;
}

bool IsPartitionAction(EditAction action) {
  return action == EditAction::kMerge || action == EditAction::kSplit ||
         action == EditAction::kFusion;
}

std::vector<LinkComponent> ConnectedComponents(std::span<const Link> links) {
  std::vector<Link> sorted(links.begin(), links.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  DisjointSets sets;
  for (const Link& link : sorted) {
    sets.Union(sets.Add(NewKey(link.new_id)), sets.Add(OldKey(link.old_id)));
  }
  std::map<int, size_t> slot;
  std::vector<LinkComponent> components;
  for (const Link& link : sorted) {
    const int root = sets.Find(NewKey(link.new_id));
    auto [it, inserted] = slot.emplace(root, components.size());
    if (inserted) components.emplace_back();
    LinkComponent& c = components[it->second];
    c.links.push_back(link);
    c.new_nodes.push_back(link.new_id);
    c.old_nodes.push_back(link.old_id);
  }
  for (LinkComponent& c : components) {
    for (auto* side : {&c.new_nodes, &c.old_nodes}) {
      std::sort(side->begin(), side->end());
      side->erase(std::unique(side->begin(), side->end()), side->end());
    }
  }
  return components;
}

absl::StatusOr<Edit> MakeComponentEdit(const LinkComponent& component,
                                       Granularity granularity,
                                       Provenance provenance,
                                       const DocumentGraph& old_doc,
                                       const DocumentGraph& new_doc) {
  Edit edit;
  edit.new_nodes = component.new_nodes;
  edit.old_nodes = component.old_nodes;
  edit.granularity = granularity;
  edit.provenance = provenance;
  ASSIGN_OR_RETURN(edit.action, DeriveAction(static_cast<int>(edit.new_nodes.size()),
                                             static_cast<int>(edit.old_nodes.size())));
  if (IsPartitionAction(edit.action)) {
    for (const Link& link : component.links) {
      const TextNode* n = new_doc.Find(link.new_id);
      const TextNode* o = old_doc.Find(link.old_id);
      if (n == nullptr || o == nullptr) {
        return absl::InvalidArgumentError(absl::StrCat(
            "dangling node: ", n == nullptr ? link.new_id : link.old_id));
      }
      edit.sublabels[link] = SublabelFor(n, o);
    }
  }
  CanonicalizeEdit(edit, old_doc, new_doc);
  return edit;
}

std::string ToString(Correction::Op op) {
  switch (op) {
    case Correction::Op::kAddLink:
      return "add_link";
    case Correction::Op::kRemoveLink:
      return "remove_link";
    case Correction::Op::kSetIntent:
      return "set_intent";
    case Correction::Op::kSetActionSublabel:
      return "set_action_sublabel";
  }
  return "";
}

std::optional<Correction::Op> ParseCorrectionOp(std::string_view s) {
  for (Correction::Op op : {Correction::Op::kAddLink, Correction::Op::kRemoveLink,
                            Correction::Op::kSetIntent,
                            Correction::Op::kSetActionSublabel}) {
    if (ToString(op) == s) return op;
  }
  return std::nullopt;
}

absl::StatusOr<std::vector<Edit>> ApplyCorrections(
    std::span<const Edit> edits, std::span<const Correction> corrections,
    const DocumentGraph& old_doc, const DocumentGraph& new_doc) {
  std::optional<Granularity> granularity;
  for (const Edit& e : edits) {
    if (granularity && *granularity != e.granularity) {
      return absl::InvalidArgumentError("corrections need edits of a single granularity");
    }
    granularity = e.granularity;
  }
  const Granularity g = granularity.value_or(Granularity::kSentence);

  std::set<Link> links;
  std::set<std::string> universe_new, universe_old;
  std::map<Link, ContentSublabel> known_sublabels;
  for (const Edit& e : edits) {
    for (const Link& link : EditLinks(e)) links.insert(link);
    universe_new.insert(e.new_nodes.begin(), e.new_nodes.end());
    universe_old.insert(e.old_nodes.begin(), e.old_nodes.end());
    known_sublabels.insert(e.sublabels.begin(), e.sublabels.end());
  }

  auto check_node = [&](size_t k, const DocumentGraph& doc,
                        const std::string& id) -> absl::Status {
    const TextNode* node = doc.Find(id);
    if (node == nullptr) {
      return absl::InvalidArgumentError(
          CorrectionError(k, absl::StrCat("unknown node ", id)));
    }
    if (node->granularity != g) {
      return absl::InvalidArgumentError(CorrectionError(
          k, absl::StrCat("node ", id, " is a ", ToString(node->granularity),
                          ", expected ", ToString(g))));
    }
    return absl::OkStatus();
  };

  for (size_t k = 0; k < corrections.size(); ++k) {
    const Correction& c = corrections[k];
    if (c.op != Correction::Op::kAddLink && c.op != Correction::Op::kRemoveLink) continue;
    RETURN_IF_ERROR(check_node(k, new_doc, c.new_id));
    RETURN_IF_ERROR(check_node(k, old_doc, c.old_id));
    const Link link{c.new_id, c.old_id};
    // Nodes outside every edit only join one while they stay linked.
    if (c.op == Correction::Op::kAddLink) {
      links.insert(link);
    } else {
      links.erase(link);
    }
  }

  // Re-partition the touched nodes by link connectivity.
  const std::vector<Link> link_list(links.begin(), links.end());
  std::vector<LinkComponent> components = ConnectedComponents(link_list);
  std::set<std::string> linked_new, linked_old;
  for (const Link& link : link_list) {
    linked_new.insert(link.new_id);
    linked_old.insert(link.old_id);
  }
  for (const std::string& id : universe_new) {
    if (!linked_new.count(id)) components.push_back({{id}, {}, {}});
  }
  for (const std::string& id : universe_old) {
    if (!linked_old.count(id)) components.push_back({{}, {id}, {}});
  }

  std::map<std::string, const Edit*> edit_of_node;
  for (const Edit& e : edits) {
    for (const std::string& id : e.new_nodes) edit_of_node[NewKey(id)] = &e;
    for (const std::string& id : e.old_nodes) edit_of_node[OldKey(id)] = &e;
  }

  std::vector<Edit> result;
  for (const LinkComponent& component : components) {
    std::set<const Edit*> touched;
    for (const std::string& id : component.new_nodes) {
      if (auto it = edit_of_node.find(NewKey(id)); it != edit_of_node.end()) {
        touched.insert(it->second);
      }
    }
    for (const std::string& id : component.old_nodes) {
      if (auto it = edit_of_node.find(OldKey(id)); it != edit_of_node.end()) {
        touched.insert(it->second);
      }
    }
    if (touched.size() == 1) {
      const Edit& original = **touched.begin();
      std::set<std::string> n(component.new_nodes.begin(), component.new_nodes.end());
      std::set<std::string> o(component.old_nodes.begin(), component.old_nodes.end());
      std::vector<Link> original_links = EditLinks(original);
      std::sort(original_links.begin(), original_links.end());
      if (n == std::set<std::string>(original.new_nodes.begin(), original.new_nodes.end()) &&
          o == std::set<std::string>(original.old_nodes.begin(), original.old_nodes.end()) &&
          original_links == component.links) {
        result.push_back(original);
        continue;
      }
    }
    ASSIGN_OR_RETURN(Edit edit,
                     MakeComponentEdit(component, g, Provenance::kHuman, old_doc, new_doc));
    for (auto& [link, sublabel] : edit.sublabels) {
      if (auto it = known_sublabels.find(link); it != known_sublabels.end()) {
        sublabel = it->second;
      }
    }
    std::set<EditIntent> intents;
    for (const Edit* e : touched) intents.insert(e->intents.begin(), e->intents.end());
    if (g > Granularity::kSentence || intents.size() <= 1) edit.intents = intents;
    result.push_back(std::move(edit));
  }

  // Label operations address the re-partitioned edits.
  auto find_edit = [&](const Correction& c) -> Edit* {
    for (Edit& e : result) {
      if (!c.edit_id.empty()) {
        if (e.id == c.edit_id) return &e;
        continue;
      }
      if (std::find(e.new_nodes.begin(), e.new_nodes.end(), c.node_id) != e.new_nodes.end() ||
          std::find(e.old_nodes.begin(), e.old_nodes.end(), c.node_id) != e.old_nodes.end()) {
        return &e;
      }
    }
    return nullptr;
  };
  for (size_t k = 0; k < corrections.size(); ++k) {
    const Correction& c = corrections[k];
    if (c.op == Correction::Op::kSetIntent) {
      if (c.edit_id.empty() && c.node_id.empty()) {
        return absl::InvalidArgumentError(CorrectionError(k, "set_intent needs an edit or node"));
      }
      Edit* edit = find_edit(c);
      if (edit == nullptr) {
        return absl::InvalidArgumentError(CorrectionError(
            k, absl::StrCat("unknown ", c.edit_id.empty() ? "node " : "edit ",
                            c.edit_id.empty() ? c.node_id : c.edit_id)));
      }
      edit->intents.clear();
      if (c.intent) edit->intents.insert(*c.intent);
      edit->provenance = Provenance::kHuman;
    } else if (c.op == Correction::Op::kSetActionSublabel) {
      if (!c.sublabel) {
        return absl::InvalidArgumentError(CorrectionError(k, "set_action_sublabel needs a sublabel"));
      }
      const Link link{c.new_id, c.old_id};
      Edit* target = nullptr;
      for (Edit& e : result) {
        if (e.sublabels.count(link)) target = &e;
      }
      if (target == nullptr) {
        return absl::InvalidArgumentError(CorrectionError(
            k, absl::StrCat("no Merge, Split or Fusion edit links ", c.new_id, " -> ",
                            c.old_id)));
      }
      target->sublabels[link] = *c.sublabel;
      target->provenance = Provenance::kHuman;
    }
  }

  SortEdits(result, old_doc, new_doc);
  return result;
}

namespace {

struct LiftedGroup {
  Edit edit;
  std::vector<const Edit*> members;
};

absl::StatusOr<std::vector<LiftedGroup>> LiftGroups(std::span<const Edit> sentence_edits,
                                                    Granularity target,
                                                    const DocumentGraph& old_doc,
                                                    const DocumentGraph& new_doc) {
  if (target != Granularity::kParagraph && target != Granularity::kSection) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot lift to ", ToString(target)));
  }
  auto container = [&](const DocumentGraph& doc,
                       const std::string& id) -> absl::StatusOr<const TextNode*> {
    const TextNode* node = doc.Ancestor(id, target);
    if (node == nullptr) {
      return absl::InvalidArgumentError(
          absl::StrCat("node ", id, " has no ", ToString(target), " ancestor"));
    }
    return node;
  };

  DisjointSets sets;
  std::set<Link> container_links;
  std::vector<std::string> edit_roots;  // one representative key per edit
  for (const Edit& e : sentence_edits) {
    if (e.granularity != Granularity::kSentence) {
      return absl::InvalidArgumentError(
          absl::StrCat("edit ", e.id, " is not at sentence granularity"));
    }
    std::vector<std::string> keys;
    for (const std::string& id : e.new_nodes) {
      ASSIGN_OR_RETURN(const TextNode* c, container(new_doc, id));
      keys.push_back(NewKey(c->id));
    }
    for (const std::string& id : e.old_nodes) {
      ASSIGN_OR_RETURN(const TextNode* c, container(old_doc, id));
      keys.push_back(OldKey(c->id));
    }
    int first = sets.Add(keys.front());
    for (const std::string& key : keys) sets.Union(first, sets.Add(key));
    edit_roots.push_back(keys.front());
    for (const Link& link : EditLinks(e)) {
      ASSIGN_OR_RETURN(const TextNode* n, container(new_doc, link.new_id));
      ASSIGN_OR_RETURN(const TextNode* o, container(old_doc, link.old_id));
      container_links.insert({n->id, o->id});
    }
  }
  // Unchanged sentences tie their containers together as well.
  for (const Link& link : MatchIdenticalSentences(old_doc, new_doc)) {
    ASSIGN_OR_RETURN(const TextNode* n, container(new_doc, link.new_id));
    ASSIGN_OR_RETURN(const TextNode* o, container(old_doc, link.old_id));
    sets.Union(sets.Add(NewKey(n->id)), sets.Add(OldKey(o->id)));
    container_links.insert({n->id, o->id});
  }

  std::map<int, size_t> slot;
  std::vector<LiftedGroup> groups;
  for (size_t i = 0; i < sentence_edits.size(); ++i) {
    const int root = sets.Find(edit_roots[i]);
    auto [it, inserted] = slot.emplace(root, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].members.push_back(&sentence_edits[i]);
  }
  for (auto& [root, index] : slot) {
    LiftedGroup& group = groups[index];
    Edit& edit = group.edit;
    edit.granularity = target;
    std::set<std::string> new_containers, old_containers;
    for (const TextNode* node : new_doc.NodesAt(target)) {
      const std::string key = NewKey(node->id);
      if (sets.Find(sets.Add(key)) == root) new_containers.insert(node->id);
    }
    for (const TextNode* node : old_doc.NodesAt(target)) {
      const std::string key = OldKey(node->id);
      if (sets.Find(sets.Add(key)) == root) old_containers.insert(node->id);
    }
    edit.new_nodes.assign(new_containers.begin(), new_containers.end());
    edit.old_nodes.assign(old_containers.begin(), old_containers.end());
    ASSIGN_OR_RETURN(edit.action, DeriveAction(static_cast<int>(edit.new_nodes.size()),
                                               static_cast<int>(edit.old_nodes.size())));
    if (IsPartitionAction(edit.action)) {
      for (const Link& link : container_links) {
        if (new_containers.count(link.new_id) && old_containers.count(link.old_id)) {
          edit.sublabels[link] =
              SublabelFor(new_doc.Find(link.new_id), old_doc.Find(link.old_id));
        }
      }
    }
    for (const Edit* member : group.members) {
      edit.intents.insert(member->intents.begin(), member->intents.end());
      if (ProvenanceRank(member->provenance) > ProvenanceRank(edit.provenance)) {
        edit.provenance = member->provenance;
      }
    }
    CanonicalizeEdit(edit, old_doc, new_doc);
  }
  return groups;
}

}  // namespace

absl::StatusOr<std::vector<Edit>> LiftEdits(std::span<const Edit> sentence_edits,
                                            Granularity target,
                                            const DocumentGraph& old_doc,
                                            const DocumentGraph& new_doc) {
  ASSIGN_OR_RETURN(std::vector<LiftedGroup> groups,
                   LiftGroups(sentence_edits, target, old_doc, new_doc));
  std::vector<Edit> lifted;
  lifted.reserve(groups.size());
  for (LiftedGroup& group : groups) lifted.push_back(std::move(group.edit));
  SortEdits(lifted, old_doc, new_doc);
  return lifted;
}

absl::StatusOr<std::vector<std::pair<std::string, std::string>>> LiftMembership(
    std::span<const Edit> sentence_edits, Granularity target,
    const DocumentGraph& old_doc, const DocumentGraph& new_doc) {
  ASSIGN_OR_RETURN(std::vector<LiftedGroup> groups,
                   LiftGroups(sentence_edits, target, old_doc, new_doc));
  std::vector<std::pair<std::string, std::string>> membership;
  for (const LiftedGroup& group : groups) {
    for (const Edit* member : group.members) membership.emplace_back(member->id, group.edit.id);
  }
  std::sort(membership.begin(), membership.end());
  return membership;
}

}  // namespace revgraph
