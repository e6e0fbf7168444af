#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aoi/decimal.hpp"

namespace aoi::sql {

/// `alias.column`, or a bare `column` when `qualifier` is empty.
struct ColumnRef {
  std::string qualifier;
  std::string column;

  friend bool operator==(const ColumnRef &, const ColumnRef &) = default;
};

struct SelectItem {
  enum class Kind { column, star, count_star, count_column };

  Kind kind = Kind::column;
  /// Set for column and count_column.
  ColumnRef column;
  /// For star: the alias in `a.*`, empty for a bare `*`.
  std::string star_qualifier;
  std::optional<std::string> alias;

  friend bool operator==(const SelectItem &, const SelectItem &) = default;
};

struct TableRef {
  std::string table;
  /// Empty when the query names the table without an alias.
  std::string alias;

  const std::string &effective_alias() const { return alias.empty() ? table : alias; }

  friend bool operator==(const TableRef &, const TableRef &) = default;
};

struct StringLiteral {
  std::string text;

  friend bool operator==(const StringLiteral &, const StringLiteral &) = default;
};

using Operand = std::variant<ColumnRef, StringLiteral, Decimal>;

enum class CompareOp { eq, ge, le };

struct Predicate {
  Operand lhs;
  CompareOp op = CompareOp::eq;
  Operand rhs;

  friend bool operator==(const Predicate &, const Predicate &) = default;
};

/// `SELECT [DISTINCT] items FROM t a {, t a} [WHERE p {AND p}] [GROUP BY cols]`
struct SelectQuery {
  bool distinct = false;
  std::vector<SelectItem> items;
  std::vector<TableRef> from;
  std::vector<Predicate> where;
  std::vector<ColumnRef> group_by;

  friend bool operator==(const SelectQuery &, const SelectQuery &) = default;
};

struct ColumnDef {
  std::string name;
  /// Type as written, lower-cased, with any size arguments (`varchar(64)`).
  std::string type;

  friend bool operator==(const ColumnDef &, const ColumnDef &) = default;
};

struct CreateTable {
  std::string table;
  std::vector<ColumnDef> columns;

  friend bool operator==(const CreateTable &, const CreateTable &) = default;
};

using Statement = std::variant<SelectQuery, CreateTable>;

}  // namespace aoi::sql
