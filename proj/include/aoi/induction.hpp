#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/hierarchy.hpp"
#include "aoi/relation.hpp"
#include "aoi/task.hpp"

namespace aoi {

struct GeneralizedAttribute {
  std::string name;
  std::string level;

  friend bool operator==(const GeneralizedAttribute &, const GeneralizedAttribute &) = default;
};

struct GeneralizedTuple {
  Row cells;
  std::uint64_t vote = 0;

  friend bool operator==(const GeneralizedTuple &, const GeneralizedTuple &) = default;
};

/// Deduplicated generalized tuples with votes, kept in canonical order (cell-wise
/// lexicographic by display text).
class GeneralizedRelation {
 public:
  GeneralizedRelation() = default;
  /// Throws Error when a vote is zero, a tuple has the wrong width, two tuples share a
  /// cell vector, or the votes do not sum to `source_count`.
  GeneralizedRelation(std::vector<GeneralizedAttribute> attributes, std::vector<GeneralizedTuple> tuples,
                      std::uint64_t source_count);

  const std::vector<GeneralizedAttribute> &attributes() const { return attributes_; }
  const std::vector<GeneralizedTuple> &tuples() const { return tuples_; }
  std::uint64_t source_count() const { return source_count_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }

  std::size_t index_of(std::string_view attribute) const;
  const std::string &level_of(std::string_view attribute) const { return attributes_[index_of(attribute)].level; }
  std::size_t distinct_count(std::size_t attribute) const;
  const GeneralizedTuple *find(const Row &cells) const;

  friend bool operator==(const GeneralizedRelation &, const GeneralizedRelation &) = default;

 private:
  std::vector<GeneralizedAttribute> attributes_;
  std::vector<GeneralizedTuple> tuples_;
  std::uint64_t source_count_ = 0;
};

enum class ColumnNaming { attribute, level };

/// Flattens to a Relation. Columns are named after attributes or after their current
/// level (the SQL naming; columns at ANY keep the attribute name); `with_votes`
/// appends a numeric "Vote" column.
Relation to_relation(const GeneralizedRelation &grel, ColumnNaming naming, bool with_votes);

struct ClassEntry {
  std::string concept_name;
  GeneralizedRelation relation;
  /// overlap[i] is set when relation.tuples()[i] also appears in another class.
  std::vector<bool> overlap;
};

/// Per-class generalized relations sharing one generalized schema.
struct ClassifiedRelation {
  /// Level of the target hierarchy the classes live at (e.g. "study").
  std::string class_attribute;
  std::string target_concept;
  std::vector<ClassEntry> classes;

  const std::vector<GeneralizedAttribute> &attributes() const { return classes.front().relation.attributes(); }
  /// Throws TaskError for an unknown class.
  const ClassEntry &at(std::string_view concept_name) const;
};

/// Flattens every class into one relation with the class column first, ordered
/// canonically; mirrors the GROUP BY output of the classification statement.
Relation to_relation(const ClassifiedRelation &classified, ColumnNaming naming, bool with_votes);

/// Checks the target attribute and concept against the database and hierarchies.
void validate_task(const Database &db, const HierarchySet &trees, const LearningTask &task);

/// Fact tuples whose target attribute generalizes to `concept_name` at that concept's level.
Relation extract_target(const Database &db, const HierarchySet &trees, const LearningTask &task,
                        std::string_view concept_name);

/// Keeps in-scope attributes, dropping the target attribute and every attribute that
/// has no hierarchy and more than attr_threshold distinct values.
Relation remove_attributes(const Relation &relation, const LearningTask &task, const HierarchySet &trees);

/// `trees` plus an identity tree for every attribute of `relation` that has none.
HierarchySet with_identity_trees(const Relation &relation, const HierarchySet &trees);

/// Starting level per attribute: the task's override, else the tree's default level.
LevelMap initial_levels(const Relation &relation, const HierarchySet &trees, const LearningTask &task);

/// Concept tree ascension plus vote propagation.
GeneralizedRelation ascend(const Relation &relation, const HierarchySet &trees, const LevelMap &levels);

/// Lifts one attribute a single level and re-merges. No-op at ANY.
GeneralizedRelation ascend_attribute(const GeneralizedRelation &grel, const HierarchySet &trees, std::size_t attribute);

GeneralizedRelation enforce_attribute_thresholds(const GeneralizedRelation &grel, const HierarchySet &trees,
                                                 std::size_t attr_threshold);

/// Greedy: while over the threshold, lift the attribute with the most distinct values
/// (leftmost on ties). `rel_threshold` unset means unlimited.
GeneralizedRelation enforce_relation_threshold(const GeneralizedRelation &grel, const HierarchySet &trees,
                                               std::optional<std::size_t> rel_threshold);

struct SimplifyOptions {
  /// Treat a cell whose concepts are contained in the other tuple's cell as equal when
  /// deciding whether two tuples merge. Off, tuples merge only when every other cell
  /// covers exactly the same concepts, which keeps the covered tuple set unchanged.
  bool absorb_contained = true;
};

/// Rule transformation: MERGE tuples differing in one attribute into concept-set
/// cells, then PROMOTE complete child groups to their parent, to a fixpoint.
GeneralizedRelation simplify(const GeneralizedRelation &grel, const HierarchySet &trees, SimplifyOptions options = {});

/// Concepts at the attribute's current level that a cell stands for, sorted.
std::vector<std::string> cover(const ConceptTree &tree, const Value &cell, std::size_t level);

/// Every stage of the characteristic pipeline for one class concept.
struct CharacteristicTrace {
  Relation target;
  Relation removed;
  HierarchySet trees;
  LevelMap levels;
  GeneralizedRelation ascended;
  GeneralizedRelation after_attribute_threshold;
  GeneralizedRelation after_relation_threshold;
  std::optional<GeneralizedRelation> simplified;

  const GeneralizedRelation &result() const { return simplified ? *simplified : after_relation_threshold; }
};

CharacteristicTrace trace_characteristic(const Database &db, const HierarchySet &trees, const LearningTask &task,
                                         std::string_view concept_name, bool with_simplify);

GeneralizedRelation learn_characteristic(const Database &db, const HierarchySet &trees, const LearningTask &task);

/// One unsimplified pipeline per concept at the target concept's level; all classes
/// end at the per-attribute maximum level any class reached. Overlapping tuples are
/// kept and flagged.
ClassifiedRelation learn_classification(const Database &db, const HierarchySet &trees, const LearningTask &task);

}  // namespace aoi
