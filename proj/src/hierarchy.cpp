#include "aoi/hierarchy.hpp"

#include <algorithm>

#include "aoi/csv.hpp"
#include "aoi/error.hpp"

namespace aoi {

ConceptTree::ConceptTree(std::string attribute, Kind kind, std::vector<std::string> levels)
    : attribute_(std::move(attribute)), kind_(kind), levels_(std::move(levels)) {
  table_name_ = "hierarchy_" + fold(attribute_);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].empty()) throw HierarchyError(attribute_ + ": empty level name in header");
    if (iequals(levels_[i], kAny)) throw HierarchyError(attribute_ + ": level name ANY is reserved for the root");
    for (std::size_t j = 0; j < i; ++j) {
      if (iequals(levels_[i], levels_[j])) throw HierarchyError(attribute_ + ": duplicate level name " + levels_[i]);
    }
  }
  levels_.emplace_back(kAny);
  nodes_.push_back(Node{std::string(kAny), levels_.size() - 1, std::nullopt, {}});
  index_.emplace(fold(kAny), 0);
}

std::size_t ConceptTree::level_index(std::string_view level) const {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (iequals(levels_[i], level)) return i;
  }
  throw LevelError(attribute_ + ": unknown level '" + std::string(level) + "'");
}

std::size_t ConceptTree::default_level() const {
  if (identity_ || kind_ == Kind::numeric_range) return 0;
  return std::min<std::size_t>(1, any_level());
}

std::size_t ConceptTree::node_index(std::string_view concept_name) const {
  auto it = index_.find(fold(concept_name));
  if (it == index_.end()) {
    throw HierarchyError(attribute_ + ": unknown concept '" + std::string(concept_name) + "'");
  }
  return it->second;
}

bool ConceptTree::contains(std::string_view concept_name) const { return index_.count(fold(concept_name)) != 0; }

const std::string &ConceptTree::canonical(std::string_view concept_name) const {
  return nodes_[node_index(concept_name)].name;
}

std::size_t ConceptTree::level_of(std::string_view concept_name) const { return nodes_[node_index(concept_name)].level; }

std::optional<std::string> ConceptTree::parent_of(std::string_view concept_name) const {
  const Node &n = nodes_[node_index(concept_name)];
  if (!n.parent) return std::nullopt;
  return nodes_[*n.parent].name;
}

std::vector<std::string> ConceptTree::children_of(std::string_view concept_name) const {
  std::vector<std::string> out;
  for (auto c : nodes_[node_index(concept_name)].children) out.push_back(nodes_[c].name);
  return out;
}

std::vector<std::string> ConceptTree::concepts_at(std::size_t level) const {
  std::vector<std::string> out;
  for (const auto &n : nodes_) {
    if (n.level == level) out.push_back(n.name);
  }
  return out;
}

std::vector<std::string> ConceptTree::descendants_at(std::string_view concept_name, std::size_t level) const {
  std::size_t start = node_index(concept_name);
  if (nodes_[start].level < level) {
    throw LevelError(attribute_ + ": level " + levels_.at(level) + " is above concept '" + nodes_[start].name + "'");
  }
  std::vector<std::string> out;
  std::vector<std::size_t> frontier{start};
  // Breadth-first keeps file order among siblings.
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto i : frontier) {
      if (nodes_[i].level == level) {
        out.push_back(nodes_[i].name);
      } else {
        next.insert(next.end(), nodes_[i].children.begin(), nodes_[i].children.end());
      }
    }
    frontier = std::move(next);
  }
  return out;
}

const std::string &ConceptTree::ancestor(std::string_view concept_name, std::size_t level) const {
  if (level >= levels_.size()) throw LevelError(attribute_ + ": level index out of range");
  std::size_t i = node_index(concept_name);
  if (nodes_[i].level > level) {
    throw LevelError(attribute_ + ": cannot descend from '" + nodes_[i].name + "' to level " + levels_[level]);
  }
  while (nodes_[i].level < level) i = *nodes_[i].parent;
  return nodes_[i].name;
}

const std::string &ConceptTree::leaf_concept(const Value &value) const {
  if (kind_ == Kind::numeric_range) {
    std::optional<Decimal> number;
    if (value.is_number()) {
      number = value.number();
    } else if (value.is_text()) {
      number = Decimal::parse(trim(value.text()));
    }
    if (number) {
      for (const auto &r : ranges_) {
        if (r.lo <= *number && *number <= r.hi) return canonical(r.concept_name);
      }
    }
    throw UnknownLeafError(attribute_ + ": value '" + value.to_string() + "' falls in no range");
  }
  if (value.is_set()) throw UnknownLeafError(attribute_ + ": concept set is not a leaf value");
  auto it = index_.find(fold(value.to_string()));
  if (it == index_.end() || nodes_[it->second].level != 0) {
    throw UnknownLeafError(attribute_ + ": value '" + value.to_string() + "' is not a leaf of the hierarchy");
  }
  return nodes_[it->second].name;
}

std::string ConceptTree::generalize(const Value &value, std::size_t level) const {
  if (level >= levels_.size()) throw LevelError(attribute_ + ": level index out of range");
  return ancestor(leaf_concept(value), level);
}

std::size_t ConceptTree::add_path(const std::vector<std::string> &path, std::size_t row) {
  std::size_t parent = 0;  // ANY
  std::size_t node = 0;
  for (std::size_t k = path.size(); k-- > 0;) {
    const std::string name = trim(path[k]);
    if (name.empty()) throw HierarchyError(attribute_ + ": empty concept at row " + std::to_string(row));
    if (iequals(name, kAny)) throw HierarchyError(attribute_ + ": concept name ANY is reserved (row " + std::to_string(row) + ")");
    auto key = fold(name);
    auto it = index_.find(key);
    if (it == index_.end()) {
      node = nodes_.size();
      nodes_.push_back(Node{name, k, parent, {}});
      nodes_[parent].children.push_back(node);
      index_.emplace(std::move(key), node);
    } else {
      node = it->second;
      const Node &existing = nodes_[node];
      if (existing.level != k) {
        throw HierarchyError(attribute_ + ": concept '" + existing.name + "' appears at levels " +
                             levels_[existing.level] + " and " + levels_[k] + " (row " + std::to_string(row) + ")");
      }
      if (*existing.parent != parent) {
        throw HierarchyError(attribute_ + ": conflicting parentage for concept '" + existing.name + "': '" +
                             nodes_[*existing.parent].name + "' and '" + nodes_[parent].name + "' (row " +
                             std::to_string(row) + ")");
      }
    }
    parent = node;
  }
  return node;
}

ConceptTree load_categorical_tree(std::string_view source, std::string_view attribute) {
  auto records = csv::parse(source);
  if (records.empty()) throw HierarchyError(std::string(attribute) + ": hierarchy file is empty");
  std::vector<std::string> levels;
  for (const auto &h : records.front()) levels.push_back(trim(h));
  ConceptTree tree(std::string(attribute), ConceptTree::Kind::categorical, levels);
  if (records.size() < 2) throw HierarchyError(std::string(attribute) + ": hierarchy file has no concept rows");
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != levels.size()) {
      throw LoadError(std::string(attribute) + ": hierarchy row " + std::to_string(r) + " has " +
                      std::to_string(records[r].size()) + " columns, header has " + std::to_string(levels.size()));
    }
    tree.add_path(records[r], r);
  }
  return tree;
}

namespace {

bool has_suffix(std::string_view text, std::string_view suffix) {
  return text.size() >= suffix.size() && iequals(text.substr(text.size() - suffix.size()), suffix);
}

}  // namespace

ConceptTree load_numeric_tree(std::string_view source, std::string_view attribute) {
  auto records = csv::parse(source);
  std::string attr(attribute);
  if (records.empty()) throw HierarchyError(attr + ": hierarchy file is empty");
  const auto &header = records.front();
  if (header.size() < 3 || !has_suffix(trim(header[0]), "_start") || !has_suffix(trim(header[1]), "_fin")) {
    throw HierarchyError(attr + ": numeric hierarchy header must be <attr>_start,<attr>_fin,<level>[,...]");
  }
  std::vector<std::string> levels;
  for (std::size_t i = 2; i < header.size(); ++i) levels.push_back(trim(header[i]));
  ConceptTree tree(attr, ConceptTree::Kind::numeric_range, levels);
  tree.start_column_ = trim(header[0]);
  tree.fin_column_ = trim(header[1]);
  if (records.size() < 2) throw HierarchyError(attr + ": hierarchy file has no range rows");

  std::vector<std::size_t> range_rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto &rec = records[r];
    if (rec.size() != header.size()) {
      throw LoadError(attr + ": hierarchy row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                      " columns, header has " + std::to_string(header.size()));
    }
    auto lo = Decimal::parse(trim(rec[0]));
    auto hi = Decimal::parse(trim(rec[1]));
    if (!lo || !hi) throw RangeError(attr + ": row " + std::to_string(r) + " has a non-numeric bound");
    if (*lo > *hi) {
      throw RangeError(attr + ": row " + std::to_string(r) + " has lower bound " + lo->to_string() +
                       " above upper bound " + hi->to_string());
    }
    std::vector<std::string> path(rec.begin() + 2, rec.end());
    std::size_t leaf = tree.add_path(path, r);
    for (std::size_t k = 0; k < tree.ranges_.size(); ++k) {
      const auto &other = tree.ranges_[k];
      if (*lo <= other.hi && other.lo <= *hi) {
        throw RangeError(attr + ": range on row " + std::to_string(r) + " [" + lo->to_string() + ", " + hi->to_string() +
                         "] overlaps row " + std::to_string(range_rows[k]) + " [" + other.lo.to_string() + ", " +
                         other.hi.to_string() + "]");
      }
    }
    tree.ranges_.push_back(NumericRange{*lo, *hi, tree.nodes_[leaf].name});
    range_rows.push_back(r);
  }
  return tree;
}

ConceptTree make_identity_tree(std::string_view attribute, const std::vector<Value> &values) {
  ConceptTree tree(std::string(attribute), ConceptTree::Kind::categorical, {fold(attribute)});
  tree.identity_ = true;
  tree.table_name_.clear();
  for (const auto &v : values) {
    auto text = v.to_string();
    if (!tree.contains(text)) tree.add_path({text}, 0);
  }
  return tree;
}

void HierarchySet::add(ConceptTree tree) {
  if (trees_.count(tree.attribute()) != 0) {
    throw HierarchyError("duplicate hierarchy for attribute '" + tree.attribute() + "'");
  }
  std::string key = tree.attribute();
  trees_.emplace(std::move(key), std::move(tree));
}

void HierarchySet::replace(ConceptTree tree) {
  trees_.erase(tree.attribute());
  add(std::move(tree));
}

const ConceptTree *HierarchySet::find(std::string_view attribute) const {
  auto it = trees_.find(attribute);
  return it == trees_.end() ? nullptr : &it->second;
}

const ConceptTree &HierarchySet::at(std::string_view attribute) const {
  if (const auto *t = find(attribute)) return *t;
  throw HierarchyError("no hierarchy for attribute '" + std::string(attribute) + "'");
}

std::vector<const ConceptTree *> HierarchySet::trees() const {
  std::vector<const ConceptTree *> out;
  for (const auto &[k, t] : trees_) out.push_back(&t);
  return out;
}

}  // namespace aoi
