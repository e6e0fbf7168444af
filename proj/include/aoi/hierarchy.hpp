#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aoi/decimal.hpp"
#include "aoi/value.hpp"

namespace aoi {

inline constexpr std::string_view kAny = "ANY";

/// Leaf of a numeric tree: a closed interval mapped to a leaf-level concept.
struct NumericRange {
  Decimal lo;
  Decimal hi;
  std::string concept_name;
};

/// Balanced concept tree over one attribute. Level 0 is the leaf level, the last
/// level is always the implicit root level holding the single concept ANY.
///
/// Categorical trees have the attribute's own values as level-0 concepts. Numeric
/// trees have range concepts (Poor, Good, ...) at level 0; the raw numbers sit
/// below the tree and are classified through ranges().
class ConceptTree {
 public:
  enum class Kind { categorical, numeric_range };

  const std::string &attribute() const { return attribute_; }
  Kind kind() const { return kind_; }
  /// True for the single-level tree synthesized for a retained attribute that has
  /// no hierarchy of its own.
  bool identity() const { return identity_; }

  /// SQL table this tree is stored in; defaults to `hierarchy_<attribute>`.
  const std::string &table_name() const { return table_name_; }
  void set_table_name(std::string name) { table_name_ = std::move(name); }

  /// Level names from leaf upward; the last entry is "ANY".
  const std::vector<std::string> &levels() const { return levels_; }
  std::size_t any_level() const { return levels_.size() - 1; }
  /// Throws LevelError for an unknown name. "ANY" always resolves to any_level().
  std::size_t level_index(std::string_view level) const;
  /// First level above the raw attribute values: one above the leaves for
  /// categorical trees, the range level for numeric trees, the leaf level for
  /// identity trees.
  std::size_t default_level() const;

  bool contains(std::string_view concept_name) const;
  /// Canonical spelling of a concept; lookup is case-folded. Throws HierarchyError.
  const std::string &canonical(std::string_view concept_name) const;
  std::size_t level_of(std::string_view concept_name) const;
  /// Position of the concept in file order; used to order concept sets for display.
  std::size_t order_of(std::string_view concept_name) const { return node_index(concept_name); }
  std::optional<std::string> parent_of(std::string_view concept_name) const;
  /// Immediate children in file order; empty for leaves.
  std::vector<std::string> children_of(std::string_view concept_name) const;
  /// All concepts at `level`, in file order.
  std::vector<std::string> concepts_at(std::size_t level) const;
  /// Concepts at `level` under `concept_name` (the concept itself when it sits at `level`).
  std::vector<std::string> descendants_at(std::string_view concept_name, std::size_t level) const;
  /// Ancestor of `concept_name` at `level`. Throws LevelError when `level` is below the concept.
  const std::string &ancestor(std::string_view concept_name, std::size_t level) const;

  /// Leaf concept for a raw attribute value: case-folded leaf lookup for categorical
  /// trees, range classification for numeric trees. Throws UnknownLeafError.
  const std::string &leaf_concept(const Value &value) const;

  std::string generalize(const Value &value, std::size_t level) const;
  std::string generalize(const Value &value, std::string_view level) const {
    return generalize(value, level_index(level));
  }

  const std::vector<NumericRange> &ranges() const { return ranges_; }
  /// Header names of the bound columns of a numeric tree (`gpa_start`, `gpa_fin`).
  const std::string &start_column() const { return start_column_; }
  const std::string &fin_column() const { return fin_column_; }

 private:
  friend ConceptTree load_categorical_tree(std::string_view, std::string_view);
  friend ConceptTree load_numeric_tree(std::string_view, std::string_view);
  friend ConceptTree make_identity_tree(std::string_view, const std::vector<Value> &);

  struct Node {
    std::string name;
    std::size_t level = 0;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
  };

  ConceptTree(std::string attribute, Kind kind, std::vector<std::string> levels);
  std::size_t node_index(std::string_view concept_name) const;
  /// Adds a root-to-leaf path given leaf-first. Returns the leaf node.
  std::size_t add_path(const std::vector<std::string> &path_leaf_first, std::size_t row);

  std::string attribute_;
  Kind kind_;
  bool identity_ = false;
  std::string table_name_;
  std::vector<std::string> levels_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;  // folded name -> node
  std::vector<NumericRange> ranges_;
  std::string start_column_;
  std::string fin_column_;
};

/// Header lists level names leaf first (`birthplace,city,country`); each row is one
/// leaf's ancestor path.
ConceptTree load_categorical_tree(std::string_view source, std::string_view attribute);

/// Header `<attr>_start,<attr>_fin,<level>[,higher levels...]`; each row is one range.
ConceptTree load_numeric_tree(std::string_view source, std::string_view attribute);

/// Two-level tree: the distinct values themselves under ANY.
ConceptTree make_identity_tree(std::string_view attribute, const std::vector<Value> &values);

/// Trees keyed by attribute name (case-insensitive).
class HierarchySet {
 public:
  void add(ConceptTree tree);
  void replace(ConceptTree tree);
  const ConceptTree *find(std::string_view attribute) const;
  /// Throws HierarchyError naming the attribute.
  const ConceptTree &at(std::string_view attribute) const;
  bool contains(std::string_view attribute) const { return find(attribute) != nullptr; }
  std::vector<const ConceptTree *> trees() const;

 private:
  std::map<std::string, ConceptTree, CaseInsensitiveLess> trees_;
};

}  // namespace aoi
