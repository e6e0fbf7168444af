#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aoi/sql_ast.hpp"

namespace aoi::sql {

/// Parses one statement; a trailing `;` is optional. Keywords are case-insensitive and
/// `--` starts a line comment. `distinct(x)` in the select list is read as
/// statement-level DISTINCT.
///
/// Throws SqlSyntaxError (byte offset, expected tokens) for malformed input and
/// UnsupportedFeatureError for SQL outside the subset (OR, NOT, JOIN, subqueries,
/// ORDER BY, ...).
Statement parse_statement(std::string_view text);

/// parse_statement restricted to SELECT.
SelectQuery parse_query(std::string_view text);

/// Statements separated by `;`.
std::vector<Statement> parse_script(std::string_view text);

std::string to_sql(const SelectQuery &query);
std::string to_sql(const CreateTable &create);
std::string to_sql(const Statement &statement);

}  // namespace aoi::sql
