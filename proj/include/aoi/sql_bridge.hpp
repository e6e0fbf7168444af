#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/hierarchy.hpp"
#include "aoi/induction.hpp"
#include "aoi/relation.hpp"
#include "aoi/task.hpp"

namespace aoi::sql {

enum class Stage { select_class, attribute_removal, ascend_distinct, ascend_group, vote, further, classification };

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);
const std::vector<Stage> &all_stages();

struct SqlScript {
  /// Stage name for SELECT scripts, table name for CREATE TABLE scripts.
  std::string name;
  std::string text;
};

/// CREATE TABLE for every non-hierarchy relation in `db`, then one per hierarchy
/// table. Numeric trees get their `<attr>_start`/`<attr>_fin` bound columns.
std::vector<SqlScript> gen_schema(const Database &db, const HierarchySet &trees);

/// SELECT statement for one pipeline stage.
///
/// `fact` is the fact table's schema (it fixes alias order: `a` for the fact table,
/// `b` for the target hierarchy, then `c`, `d`, ... for the other hierarchical
/// attributes in schema order). `columns` lists the retained attributes with the
/// level each one sits at; columns at ANY are left out. select-class ignores
/// `columns` and attribute-removal ignores their levels.
///
/// Throws GenerationError when the stage does not fit the task mode or an attribute
/// without a hierarchy is requested above its leaf level.
SqlScript gen_select(const LearningTask &task, const Schema &fact, const HierarchySet &trees,
                     const std::vector<GeneralizedAttribute> &columns, Stage stage);

}  // namespace aoi::sql
