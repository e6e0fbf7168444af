#include "aoi/sql_bridge.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "aoi/error.hpp"

namespace aoi::sql {

namespace {

constexpr std::array<std::pair<Stage, std::string_view>, 7> kStageNames{{
    {Stage::select_class, "select-class"},
    {Stage::attribute_removal, "attribute-removal"},
    {Stage::ascend_distinct, "ascend-distinct"},
    {Stage::ascend_group, "ascend-group"},
    {Stage::vote, "vote"},
    {Stage::further, "further"},
    {Stage::classification, "classification"},
}};

std::string ident(std::string_view name) { return fold(name); }

std::string quote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::string varchar(const std::vector<std::string> &values) {
  std::size_t longest = 1;
  for (const auto &v : values) longest = std::max(longest, v.size());
  for (std::size_t n : {10, 20, 50, 100, 255}) {
    if (longest <= n) return "varchar(" + std::to_string(n) + ")";
  }
  return "varchar(" + std::to_string(longest) + ")";
}

std::string decimal_type(const std::vector<Decimal> &values) {
  int scale = 2;
  std::size_t int_digits = 2;
  for (const auto &d : values) {
    scale = std::max(scale, d.scale());
    std::string text = d.to_string();
    if (!text.empty() && text[0] == '-') text.erase(0, 1);
    int_digits = std::max(int_digits, text.find('.') == std::string::npos ? text.size() : text.find('.'));
  }
  return "decimal(" + std::to_string(int_digits + static_cast<std::size_t>(scale)) + "," + std::to_string(scale) + ")";
}

std::string create(std::string_view table, const std::vector<std::pair<std::string, std::string>> &columns) {
  std::string out = "create table " + ident(table) + " (\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += "  " + ident(columns[i].first) + " " + columns[i].second + (i + 1 < columns.size() ? ",\n" : "\n");
  }
  return out + ");\n";
}

bool is_identity(const HierarchySet &trees, std::string_view attr) {
  const ConceptTree *t = trees.find(attr);
  return t == nullptr || t->identity();
}

/// A retained attribute resolved to the SQL it contributes.
struct Part {
  std::string select;          // `c.studyprog`
  std::string from;            // `hierarchy_major c`, empty for fact-only columns
  std::vector<std::string> on;  // join predicates
};

}  // namespace

std::string_view to_string(Stage stage) {
  for (const auto &[s, name] : kStageNames) {
    if (s == stage) return name;
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (const auto &[s, n] : kStageNames) {
    if (iequals(n, name)) return s;
  }
  return std::nullopt;
}

const std::vector<Stage> &all_stages() {
  static const std::vector<Stage> stages = [] {
    std::vector<Stage> out;
    for (const auto &entry : kStageNames) out.push_back(entry.first);
    return out;
  }();
  return stages;
}

std::vector<SqlScript> gen_schema(const Database &db, const HierarchySet &trees) {
  std::vector<SqlScript> out;
  auto is_tree_table = [&](const std::string &name) {
    for (const ConceptTree *t : trees.trees()) {
      if (!t->identity() && iequals(t->table_name(), name)) return true;
    }
    return false;
  };
  for (const auto &name : db.names()) {
    if (is_tree_table(name)) continue;
    const Relation &rel = db.at(name);
    std::vector<std::pair<std::string, std::string>> cols;
    for (std::size_t c = 0; c < rel.schema().size(); ++c) {
      const auto &spec = rel.schema()[c];
      if (spec.kind == AttributeKind::numeric) {
        std::vector<Decimal> values;
        for (const auto &row : rel.tuples()) values.push_back(row[c].number());
        cols.emplace_back(spec.name, decimal_type(values));
      } else {
        std::vector<std::string> values;
        for (const auto &row : rel.tuples()) values.push_back(row[c].to_string());
        cols.emplace_back(spec.name, varchar(values));
      }
    }
    out.push_back({name, create(name, cols)});
  }
  for (const ConceptTree *t : trees.trees()) {
    if (t->identity()) continue;
    std::vector<std::pair<std::string, std::string>> cols;
    if (t->kind() == ConceptTree::Kind::numeric_range) {
      std::vector<Decimal> bounds;
      for (const auto &r : t->ranges()) {
        bounds.push_back(r.lo);
        bounds.push_back(r.hi);
      }
      std::string type = decimal_type(bounds);
      cols.emplace_back(t->start_column(), type);
      cols.emplace_back(t->fin_column(), type);
    }
    for (std::size_t level = 0; level < t->any_level(); ++level) {
      cols.emplace_back(t->levels()[level], varchar(t->concepts_at(level)));
    }
    out.push_back({t->table_name(), create(t->table_name(), cols)});
  }
  return out;
}

SqlScript gen_select(const LearningTask &task, const Schema &fact, const HierarchySet &trees,
                     const std::vector<GeneralizedAttribute> &columns, Stage stage) {
  const bool classification = stage == Stage::classification;
  if (classification != (task.mode == LearningMode::classification)) {
    throw GenerationError("stage " + std::string(to_string(stage)) + " does not apply to a " +
                          std::string(to_string(task.mode)) + " task");
  }
  const ConceptTree *target_tree = trees.find(task.target.attribute);
  if (target_tree == nullptr || target_tree->identity()) {
    throw GenerationError("target attribute " + task.target.attribute + " has no hierarchy table");
  }
  const std::string &concept_name = target_tree->canonical(task.target.concept_name);
  const std::string class_level = target_tree->levels()[target_tree->level_of(concept_name)];
  const std::string target_attr = fact[fact.index_of(task.target.attribute)].name;

  // Stable aliases: c, d, e, ... over every hierarchical attribute in schema order.
  std::map<std::string, std::string, CaseInsensitiveLess> alias;
  char next = 'c';
  for (const auto &spec : fact.attributes()) {
    if (iequals(spec.name, target_attr) || is_identity(trees, spec.name)) continue;
    alias[spec.name] = std::string(1, next);
    next = next == 'z' ? 'z' : static_cast<char>(next + 1);
  }

  const std::string from_head = ident(task.fact) + " a, " + ident(target_tree->table_name()) + " b";
  std::string class_where = "a." + ident(target_attr) + "=b." + ident(target_tree->levels().front());
  if (!classification) class_where += " and b." + ident(class_level) + "=" + quote(concept_name);

  if (stage == Stage::select_class) {
    return {std::string(to_string(stage)), "select a.* from " + from_head + "\nwhere " + class_where + ";\n"};
  }
  if (stage == Stage::attribute_removal) {
    std::string items;
    for (const auto &col : columns) {
      items += (items.empty() ? "" : ", ") + std::string("a.") + ident(fact[fact.index_of(col.name)].name);
    }
    if (items.empty()) items = "count(*) as Vote";
    return {std::string(to_string(stage)), "select " + items + " from " + from_head + "\nwhere " + class_where + ";\n"};
  }

  // Ascension stages: one part per retained attribute not at ANY, in schema order.
  std::vector<const GeneralizedAttribute *> ordered;
  for (const auto &spec : fact.attributes()) {
    for (const auto &col : columns) {
      if (iequals(col.name, spec.name)) ordered.push_back(&col);
    }
  }
  if (ordered.size() != columns.size()) throw GenerationError("stage columns must be attributes of " + task.fact);

  std::vector<Part> parts;
  for (const GeneralizedAttribute *col : ordered) {
    if (iequals(col->level, kAny)) continue;
    const std::string attr = ident(fact[fact.index_of(col->name)].name);
    if (is_identity(trees, col->name)) {
      if (!iequals(col->level, attr)) {
        throw GenerationError("attribute " + col->name + " has no hierarchy, cannot generalize it to level " +
                              col->level);
      }
      parts.push_back({"a." + attr, "", {}});
      continue;
    }
    const ConceptTree &tree = trees.at(col->name);
    const std::string level = ident(tree.levels()[tree.level_index(col->level)]);
    const std::string &x = alias.at(col->name);
    Part part{x + "." + level, ident(tree.table_name()) + " " + x, {}};
    if (tree.kind() == ConceptTree::Kind::numeric_range) {
      part.on.push_back("a." + attr + ">=" + x + "." + ident(tree.start_column()) + " and a." + attr + "<=" + x + "." +
                        ident(tree.fin_column()));
    } else {
      part.on.push_back("a." + attr + "=" + x + "." + ident(tree.levels().front()));
    }
    parts.push_back(std::move(part));
  }

  std::vector<std::string> keys;
  if (classification) keys.push_back("b." + ident(class_level));
  for (const auto &p : parts) keys.push_back(p.select);

  auto join = [](const std::vector<std::string> &items, const char *sep) {
    std::string out;
    for (const auto &i : items) out += (out.empty() ? "" : sep) + i;
    return out;
  };

  std::vector<std::string> items = keys;
  const bool counted = stage == Stage::vote || stage == Stage::further || classification;
  if (counted || items.empty()) {
    // With every attribute at ANY the statement degenerates to counting the class.
    const bool star = classification || parts.empty();
    items.push_back(star ? "count(*) as Vote" : "count(" + parts.front().select + ") as Vote");
  }
  std::string select = "select " + join(items, ", ");
  if (stage == Stage::ascend_distinct && !keys.empty()) {
    // The DISTINCT form as it is usually written: `select distinct(c.studyprog), ...`.
    items.front() = "(" + items.front() + ")";
    select = "select distinct" + join(items, ", ");
  }

  std::vector<std::string> from{from_head};
  for (const auto &p : parts) {
    if (!p.from.empty()) from.push_back(p.from);
  }
  std::string text = select + "\nfrom " + join(from, ", ") + "\nwhere " + class_where;
  for (const auto &p : parts) {
    for (const auto &on : p.on) text += " and\n      " + on;
  }
  if (stage != Stage::ascend_distinct && !keys.empty()) text += "\ngroup by " + join(keys, ", ");
  return {std::string(to_string(stage)), text + ";\n"};
}

}  // namespace aoi::sql
