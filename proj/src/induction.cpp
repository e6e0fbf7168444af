#include "aoi/induction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aoi/error.hpp"

namespace aoi {

namespace {

bool cells_less(const GeneralizedTuple &a, const GeneralizedTuple &b) { return row_less(a.cells, b.cells); }

bool same_cells(const Row &a, const Row &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (compare_values(a[i], b[i]) != 0) return false;
  }
  return true;
}

/// Groups identical cell vectors, summing votes.
std::vector<GeneralizedTuple> merge_identical(std::vector<GeneralizedTuple> tuples) {
  std::sort(tuples.begin(), tuples.end(), cells_less);
  std::vector<GeneralizedTuple> out;
  for (auto &t : tuples) {
    if (!out.empty() && same_cells(out.back().cells, t.cells)) {
      out.back().vote += t.vote;
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

GeneralizedRelation::GeneralizedRelation(std::vector<GeneralizedAttribute> attributes,
                                         std::vector<GeneralizedTuple> tuples, std::uint64_t source_count)
    : attributes_(std::move(attributes)), tuples_(std::move(tuples)), source_count_(source_count) {
  std::uint64_t total = 0;
  for (const auto &t : tuples_) {
    if (t.cells.size() != attributes_.size()) throw Error("generalized tuple width does not match its schema");
    if (t.vote == 0) throw Error("generalized tuple with zero vote");
    total += t.vote;
  }
  if (total != source_count_) {
    throw Error("votes sum to " + std::to_string(total) + " but source count is " + std::to_string(source_count_));
  }
  std::sort(tuples_.begin(), tuples_.end(), cells_less);
  for (std::size_t i = 1; i < tuples_.size(); ++i) {
    if (same_cells(tuples_[i - 1].cells, tuples_[i].cells)) throw Error("duplicate generalized tuple");
  }
}

std::size_t GeneralizedRelation::index_of(std::string_view attribute) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (iequals(attributes_[i].name, attribute)) return i;
  }
  throw SchemaError("unknown generalized attribute '" + std::string(attribute) + "'");
}

std::size_t GeneralizedRelation::distinct_count(std::size_t attribute) const {
  std::vector<Value> seen;
  for (const auto &t : tuples_) seen.push_back(t.cells.at(attribute));
  std::sort(seen.begin(), seen.end(), value_less);
  return static_cast<std::size_t>(
      std::unique(seen.begin(), seen.end(), [](const Value &a, const Value &b) { return compare_values(a, b) == 0; }) -
      seen.begin());
}

const GeneralizedTuple *GeneralizedRelation::find(const Row &cells) const {
  for (const auto &t : tuples_) {
    if (same_cells(t.cells, cells)) return &t;
  }
  return nullptr;
}

namespace {

// Several attributes can sit at ANY at once, so those columns keep the attribute name.
std::string column_name(const GeneralizedAttribute &a, ColumnNaming naming) {
  return naming == ColumnNaming::level && !iequals(a.level, kAny) ? a.level : a.name;
}

}  // namespace

Relation to_relation(const GeneralizedRelation &grel, ColumnNaming naming, bool with_votes) {
  std::vector<AttributeSpec> specs;
  for (const auto &a : grel.attributes()) specs.push_back({column_name(a, naming), AttributeKind::categorical});
  if (with_votes) specs.push_back({"Vote", AttributeKind::numeric});
  std::vector<Row> rows;
  for (const auto &t : grel.tuples()) {
    Row row = t.cells;
    if (with_votes) row.emplace_back(Decimal::from_int(static_cast<std::int64_t>(t.vote)));
    rows.push_back(std::move(row));
  }
  return Relation(Schema(std::move(specs)), std::move(rows));
}

const ClassEntry &ClassifiedRelation::at(std::string_view concept_name) const {
  for (const auto &c : classes) {
    if (iequals(c.concept_name, concept_name)) return c;
  }
  throw TaskError("unknown class '" + std::string(concept_name) + "'");
}

Relation to_relation(const ClassifiedRelation &classified, ColumnNaming naming, bool with_votes) {
  std::vector<AttributeSpec> specs{{classified.class_attribute, AttributeKind::categorical}};
  for (const auto &a : classified.attributes()) specs.push_back({column_name(a, naming), AttributeKind::categorical});
  if (with_votes) specs.push_back({"Vote", AttributeKind::numeric});
  std::vector<Row> rows;
  for (const auto &c : classified.classes) {
    for (const auto &t : c.relation.tuples()) {
      Row row{Value(c.concept_name)};
      row.insert(row.end(), t.cells.begin(), t.cells.end());
      if (with_votes) row.emplace_back(Decimal::from_int(static_cast<std::int64_t>(t.vote)));
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), row_less);
  return Relation(Schema(std::move(specs)), std::move(rows));
}

void validate_task(const Database &db, const HierarchySet &trees, const LearningTask &task) {
  const Relation *fact = db.find(task.fact);
  if (fact == nullptr) throw TaskError("fact relation '" + task.fact + "' is not loaded");
  if (!fact->schema().find(task.target.attribute)) {
    throw TaskError("target attribute '" + task.target.attribute + "' is not a column of " + task.fact);
  }
  const ConceptTree *tree = trees.find(task.target.attribute);
  if (tree == nullptr) throw TaskError("target attribute '" + task.target.attribute + "' has no hierarchy");
  if (!tree->contains(task.target.concept_name) || iequals(task.target.concept_name, kAny)) {
    throw TaskError("target concept '" + task.target.concept_name + "' is not in the " + task.target.attribute +
                    " hierarchy");
  }
  if (task.in_scope) {
    for (const auto &a : *task.in_scope) {
      if (!fact->schema().find(a)) throw TaskError("in_scope attribute '" + a + "' is not a column of " + task.fact);
    }
  }
  for (const auto &[attr, level] : task.levels) {
    if (!fact->schema().find(attr)) throw TaskError("levels: '" + attr + "' is not a column of " + task.fact);
    if (const ConceptTree *t = trees.find(attr)) t->level_index(level);
  }
  if (task.attr_threshold == 0) throw TaskError("attr_threshold must be positive");
  if (task.rel_threshold && *task.rel_threshold == 0) throw TaskError("rel_threshold must be positive");
}

Relation extract_target(const Database &db, const HierarchySet &trees, const LearningTask &task,
                        std::string_view concept_name) {
  const Relation &fact = db.at(task.fact);
  const ConceptTree &tree = trees.at(task.target.attribute);
  if (!tree.contains(concept_name)) {
    throw TaskError("concept '" + std::string(concept_name) + "' is not in the " + tree.attribute() + " hierarchy");
  }
  const std::string &wanted = tree.canonical(concept_name);
  std::size_t level = tree.level_of(wanted);
  std::size_t col = fact.schema().index_of(task.target.attribute);
  std::vector<Row> rows;
  for (const auto &t : fact.tuples()) {
    if (tree.generalize(t[col], level) == wanted) rows.push_back(t);
  }
  return Relation(fact.schema(), std::move(rows));
}

Relation remove_attributes(const Relation &relation, const LearningTask &task, const HierarchySet &trees) {
  std::vector<std::string> scope = task.in_scope ? *task.in_scope : relation.schema().names();
  std::vector<std::string> keep;
  for (const auto &name : scope) {
    if (iequals(name, task.target.attribute)) continue;
    if (!trees.contains(name) && distinct_count(relation, name) > task.attr_threshold) continue;
    keep.push_back(relation.schema()[relation.schema().index_of(name)].name);
  }
  return project(relation, keep);
}

HierarchySet with_identity_trees(const Relation &relation, const HierarchySet &trees) {
  HierarchySet out;
  for (const auto *t : trees.trees()) out.add(*t);
  for (std::size_t c = 0; c < relation.schema().size(); ++c) {
    const auto &name = relation.schema()[c].name;
    if (trees.contains(name)) continue;
    std::vector<Value> values;
    for (const auto &t : relation.tuples()) values.push_back(t[c]);
    out.add(make_identity_tree(name, values));
  }
  return out;
}

LevelMap initial_levels(const Relation &relation, const HierarchySet &trees, const LearningTask &task) {
  LevelMap levels;
  for (const auto &spec : relation.schema().attributes()) {
    const ConceptTree &tree = trees.at(spec.name);
    auto it = task.levels.find(spec.name);
    std::size_t level = it != task.levels.end() ? tree.level_index(it->second) : tree.default_level();
    levels[spec.name] = tree.levels()[level];
  }
  return levels;
}

GeneralizedRelation ascend(const Relation &relation, const HierarchySet &trees, const LevelMap &levels) {
  const Schema &schema = relation.schema();
  std::vector<GeneralizedAttribute> attrs;
  std::vector<const ConceptTree *> tree_of;
  std::vector<std::size_t> level_of;
  for (const auto &spec : schema.attributes()) {
    const ConceptTree &tree = trees.at(spec.name);
    auto it = levels.find(spec.name);
    if (it == levels.end()) throw TaskError("no level requested for attribute '" + spec.name + "'");
    std::size_t level = tree.level_index(it->second);
    attrs.push_back({spec.name, tree.levels()[level]});
    tree_of.push_back(&tree);
    level_of.push_back(level);
  }
  std::map<std::vector<std::string>, std::uint64_t> groups;
  for (const auto &t : relation.tuples()) {
    std::vector<std::string> key;
    key.reserve(t.size());
    for (std::size_t c = 0; c < t.size(); ++c) key.push_back(tree_of[c]->generalize(t[c], level_of[c]));
    ++groups[key];
  }
  std::vector<GeneralizedTuple> tuples;
  for (auto &[key, vote] : groups) {
    tuples.push_back({Row(key.begin(), key.end()), vote});
  }
  return GeneralizedRelation(std::move(attrs), std::move(tuples), relation.size());
}

GeneralizedRelation ascend_attribute(const GeneralizedRelation &grel, const HierarchySet &trees, std::size_t attribute) {
  auto attrs = grel.attributes();
  const ConceptTree &tree = trees.at(attrs.at(attribute).name);
  std::size_t level = tree.level_index(attrs[attribute].level);
  if (level == tree.any_level()) return grel;
  std::size_t next = level + 1;
  attrs[attribute].level = tree.levels()[next];
  std::vector<GeneralizedTuple> tuples;
  for (const auto &t : grel.tuples()) {
    GeneralizedTuple g = t;
    if (!g.cells[attribute].is_text()) throw Error("cannot ascend a simplified relation");
    g.cells[attribute] = Value(tree.ancestor(g.cells[attribute].text(), next));
    tuples.push_back(std::move(g));
  }
  return GeneralizedRelation(std::move(attrs), merge_identical(std::move(tuples)), grel.source_count());
}

namespace {

bool below_any(const GeneralizedRelation &grel, const HierarchySet &trees, std::size_t attribute) {
  const auto &a = grel.attributes()[attribute];
  const ConceptTree &tree = trees.at(a.name);
  return tree.level_index(a.level) < tree.any_level();
}

}  // namespace

GeneralizedRelation enforce_attribute_thresholds(const GeneralizedRelation &grel, const HierarchySet &trees,
                                                 std::size_t attr_threshold) {
  GeneralizedRelation current = grel;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < current.attributes().size(); ++a) {
      if (current.distinct_count(a) > attr_threshold && below_any(current, trees, a)) {
        current = ascend_attribute(current, trees, a);
        changed = true;
      }
    }
  }
  return current;
}

GeneralizedRelation enforce_relation_threshold(const GeneralizedRelation &grel, const HierarchySet &trees,
                                               std::optional<std::size_t> rel_threshold) {
  if (!rel_threshold) return grel;
  GeneralizedRelation current = grel;
  while (current.size() > *rel_threshold) {
    std::optional<std::size_t> pick;
    std::size_t best = 0;
    for (std::size_t a = 0; a < current.attributes().size(); ++a) {
      if (!below_any(current, trees, a)) continue;
      std::size_t d = current.distinct_count(a);
      if (!pick || d > best) {
        pick = a;
        best = d;
      }
    }
    if (!pick) break;
    current = ascend_attribute(current, trees, *pick);
  }
  return current;
}

std::vector<std::string> cover(const ConceptTree &tree, const Value &cell, std::size_t level) {
  std::vector<std::string> out;
  if (cell.is_set()) {
    for (const auto &m : cell.set().members()) {
      auto d = tree.descendants_at(m, level);
      out.insert(out.end(), d.begin(), d.end());
    }
  } else {
    out = tree.descendants_at(cell.to_string(), level);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct AttributeContext {
  const ConceptTree *tree;
  std::size_t level;
};

/// Cell holding exactly `concepts` (sorted, non-empty), in file order.
Value make_cell(const ConceptTree &tree, std::vector<std::string> concepts) {
  if (concepts.size() == 1) return Value(concepts.front());
  std::sort(concepts.begin(), concepts.end(),
            [&](const std::string &a, const std::string &b) { return tree.order_of(a) < tree.order_of(b); });
  return Value(ConceptSet(std::move(concepts)));
}

/// Replaces every complete child group of a parent by the parent, repeatedly.
Value promote(const ConceptTree &tree, const Value &cell) {
  if (!cell.is_set()) return cell;
  std::vector<std::string> members = cell.set().members();
  bool changed = true;
  while (changed && members.size() > 1) {
    changed = false;
    for (const auto &m : members) {
      auto parent = tree.parent_of(m);
      if (!parent) continue;
      auto siblings = tree.children_of(*parent);
      bool complete = std::all_of(siblings.begin(), siblings.end(), [&](const std::string &s) {
        return std::find(members.begin(), members.end(), s) != members.end();
      });
      if (!complete) continue;
      std::vector<std::string> next;
      for (const auto &x : members) {
        if (std::find(siblings.begin(), siblings.end(), x) == siblings.end()) next.push_back(x);
      }
      next.push_back(*parent);
      members = std::move(next);
      changed = true;
      break;
    }
  }
  return make_cell(tree, std::move(members));
}

bool includes(const std::vector<std::string> &outer, const std::vector<std::string> &inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

std::optional<GeneralizedTuple> try_merge(const GeneralizedTuple &a, const GeneralizedTuple &b,
                                          const std::vector<AttributeContext> &ctx, bool absorb) {
  std::size_t differing = 0;
  std::vector<std::vector<std::string>> unions(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    auto ca = cover(*ctx[i].tree, a.cells[i], ctx[i].level);
    auto cb = cover(*ctx[i].tree, b.cells[i], ctx[i].level);
    bool equal = ca == cb;
    bool contained = absorb && (includes(ca, cb) || includes(cb, ca));
    if (!equal && !contained && ++differing > 1) return std::nullopt;
    std::set_union(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(unions[i]));
  }
  GeneralizedTuple merged;
  merged.vote = a.vote + b.vote;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    // Cells that were identical keep their form (a promoted parent stays a parent).
    if (compare_values(a.cells[i], b.cells[i]) == 0) {
      merged.cells.push_back(a.cells[i]);
    } else {
      merged.cells.push_back(make_cell(*ctx[i].tree, std::move(unions[i])));
    }
  }
  return merged;
}

}  // namespace

GeneralizedRelation simplify(const GeneralizedRelation &grel, const HierarchySet &trees, SimplifyOptions options) {
  std::vector<AttributeContext> ctx;
  for (const auto &a : grel.attributes()) {
    const ConceptTree &tree = trees.at(a.name);
    ctx.push_back({&tree, tree.level_index(a.level)});
  }
  std::vector<GeneralizedTuple> tuples = grel.tuples();
  bool changed = true;
  while (changed) {
    changed = false;
    // MERGE to a fixpoint, always taking the first mergeable pair in canonical order.
    bool merged = true;
    while (merged) {
      merged = false;
      std::sort(tuples.begin(), tuples.end(), cells_less);
      for (std::size_t i = 0; i < tuples.size() && !merged; ++i) {
        for (std::size_t j = i + 1; j < tuples.size() && !merged; ++j) {
          if (auto m = try_merge(tuples[i], tuples[j], ctx, options.absorb_contained)) {
            tuples[i] = std::move(*m);
            tuples.erase(tuples.begin() + static_cast<std::ptrdiff_t>(j));
            merged = true;
            changed = true;
          }
        }
      }
    }
    // PROMOTE
    for (auto &t : tuples) {
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        Value p = promote(*ctx[i].tree, t.cells[i]);
        if (!(p == t.cells[i])) {
          t.cells[i] = std::move(p);
          changed = true;
        }
      }
    }
  }
  return GeneralizedRelation(grel.attributes(), std::move(tuples), grel.source_count());
}

CharacteristicTrace trace_characteristic(const Database &db, const HierarchySet &trees, const LearningTask &task,
                                         std::string_view concept_name, bool with_simplify) {
  validate_task(db, trees, task);
  CharacteristicTrace trace;
  trace.target = extract_target(db, trees, task, concept_name);
  trace.removed = remove_attributes(trace.target, task, trees);
  trace.trees = with_identity_trees(trace.removed, trees);
  trace.levels = initial_levels(trace.removed, trace.trees, task);
  trace.ascended = ascend(trace.removed, trace.trees, trace.levels);
  trace.after_attribute_threshold = enforce_attribute_thresholds(trace.ascended, trace.trees, task.attr_threshold);
  trace.after_relation_threshold =
      enforce_relation_threshold(trace.after_attribute_threshold, trace.trees, task.rel_threshold);
  if (with_simplify) trace.simplified = simplify(trace.after_relation_threshold, trace.trees);
  return trace;
}

GeneralizedRelation learn_characteristic(const Database &db, const HierarchySet &trees, const LearningTask &task) {
  if (task.mode != LearningMode::characteristic) throw TaskError("learn_characteristic needs a characteristic task");
  return trace_characteristic(db, trees, task, task.target.concept_name, task.simplify_enabled()).result();
}

ClassifiedRelation learn_classification(const Database &db, const HierarchySet &trees, const LearningTask &task) {
  if (task.mode != LearningMode::classification) throw TaskError("learn_classification needs a classification task");
  validate_task(db, trees, task);
  const ConceptTree &target_tree = trees.at(task.target.attribute);
  const std::string &target = target_tree.canonical(task.target.concept_name);
  std::size_t class_level = target_tree.level_of(target);
  std::vector<std::string> concepts = target_tree.concepts_at(class_level);
  if (concepts.size() < 2) {
    throw TaskError("target concept '" + target + "' has no contrasting class at level " +
                    target_tree.levels()[class_level]);
  }

  std::vector<Relation> extracted;
  for (const auto &c : concepts) {
    extracted.push_back(extract_target(db, trees, task, c));
    if (extracted.back().empty()) throw TaskError("class '" + c + "' has no tuples in " + task.fact);
  }

  // An attribute survives only if every class keeps it.
  std::vector<std::string> keep;
  {
    Relation first = remove_attributes(extracted.front(), task, trees);
    for (const auto &name : first.schema().names()) {
      bool everywhere = std::all_of(extracted.begin() + 1, extracted.end(), [&](const Relation &r) {
        return remove_attributes(r, task, trees).schema().find(name).has_value();
      });
      if (everywhere) keep.push_back(name);
    }
  }
  std::vector<Relation> projected;
  std::vector<Row> all_rows;
  for (const auto &r : extracted) {
    projected.push_back(project(r, keep));
    all_rows.insert(all_rows.end(), projected.back().tuples().begin(), projected.back().tuples().end());
  }
  Relation combined(projected.front().schema(), all_rows);
  HierarchySet work = with_identity_trees(combined, trees);
  LevelMap start = initial_levels(combined, work, task);

  LevelMap joint = start;
  for (const auto &r : projected) {
    auto g = ascend(r, work, start);
    g = enforce_attribute_thresholds(g, work, task.attr_threshold);
    g = enforce_relation_threshold(g, work, task.rel_threshold);
    for (const auto &a : g.attributes()) {
      const ConceptTree &tree = work.at(a.name);
      if (tree.level_index(a.level) > tree.level_index(joint[a.name])) joint[a.name] = a.level;
    }
  }

  ClassifiedRelation out;
  out.class_attribute = target_tree.levels()[class_level];
  out.target_concept = target;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    out.classes.push_back({concepts[i], ascend(projected[i], work, joint), {}});
  }
  for (auto &c : out.classes) {
    for (const auto &t : c.relation.tuples()) {
      bool shared = std::any_of(out.classes.begin(), out.classes.end(), [&](const ClassEntry &other) {
        return &other != &c && other.relation.find(t.cells) != nullptr;
      });
      c.overlap.push_back(shared);
    }
  }
  return out;
}

}  // namespace aoi
