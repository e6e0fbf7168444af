#pragma once

#include "aoi/relation.hpp"
#include "aoi/sql_ast.hpp"

namespace aoi::sql {

/// Evaluates a SELECT by nested loops over the FROM items, applying each WHERE
/// conjunct as soon as every alias it mentions is bound.
///
/// Text equality is case-insensitive and ignores surrounding blanks; `>=` and `<=`
/// need numbers on both sides (TypeError otherwise). Grouped and DISTINCT results
/// come back sorted; other results keep nested-loop order.
Relation execute(const SelectQuery &query, const Database &db);

/// Runs a statement against `db`. CREATE TABLE adds an empty relation and returns it.
Relation execute(const Statement &statement, Database &db);

}  // namespace aoi::sql
