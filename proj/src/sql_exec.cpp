#include "aoi/sql_exec.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "aoi/error.hpp"

namespace aoi::sql {

namespace {

struct Bound {
  std::size_t table;
  std::size_t column;

  friend bool operator==(const Bound &, const Bound &) = default;
};

struct Source {
  std::string alias;
  const Relation *relation;
};

std::string ref_text(const ColumnRef &r) { return r.qualifier.empty() ? r.column : r.qualifier + "." + r.column; }

Bound resolve(const std::vector<Source> &sources, const ColumnRef &ref) {
  if (!ref.qualifier.empty()) {
    for (std::size_t t = 0; t < sources.size(); ++t) {
      if (!iequals(sources[t].alias, ref.qualifier)) continue;
      auto c = sources[t].relation->schema().find(ref.column);
      if (!c) throw ResolutionError("unknown column '" + ref_text(ref) + "'");
      return {t, *c};
    }
    throw ResolutionError("unknown table alias '" + ref.qualifier + "'");
  }
  std::optional<Bound> hit;
  for (std::size_t t = 0; t < sources.size(); ++t) {
    if (auto c = sources[t].relation->schema().find(ref.column)) {
      if (hit) throw ResolutionError("ambiguous column '" + ref.column + "'");
      hit = Bound{t, *c};
    }
  }
  if (!hit) throw ResolutionError("unknown column '" + ref.column + "'");
  return *hit;
}

struct BoundOperand {
  std::optional<Bound> column;
  Value literal;
};

struct BoundPredicate {
  BoundOperand lhs;
  CompareOp op;
  BoundOperand rhs;
  std::size_t ready_at;  // deepest FROM position the predicate reads
  std::string text;
};

BoundOperand bind_operand(const std::vector<Source> &sources, const Operand &o) {
  if (const auto *r = std::get_if<ColumnRef>(&o)) return {resolve(sources, *r), Value(std::string())};
  if (const auto *s = std::get_if<StringLiteral>(&o)) return {std::nullopt, Value(s->text)};
  return {std::nullopt, Value(std::get<Decimal>(o))};
}

using Binding = std::vector<const Row *>;

const Value &read(const BoundOperand &o, const Binding &b) {
  return o.column ? (*b[o.column->table])[o.column->column] : o.literal;
}

bool holds(const BoundPredicate &p, const Binding &b) {
  const Value &l = read(p.lhs, b);
  const Value &r = read(p.rhs, b);
  if (p.op == CompareOp::eq) {
    if (l.is_number() && r.is_number()) return l.number() == r.number();
    if (l.is_text() && r.is_text()) return fold(l.text()) == fold(r.text());
    throw TypeError("cannot compare " + l.to_string() + " with " + r.to_string() + " in '" + p.text + "'");
  }
  if (!l.is_number() || !r.is_number()) {
    throw TypeError("range comparison needs numbers in '" + p.text + "': " + l.to_string() + ", " + r.to_string());
  }
  return p.op == CompareOp::ge ? l.number() >= r.number() : l.number() <= r.number();
}

std::string predicate_text(const Predicate &p) {
  auto side = [](const Operand &o) -> std::string {
    if (const auto *r = std::get_if<ColumnRef>(&o)) return ref_text(*r);
    if (const auto *s = std::get_if<StringLiteral>(&o)) return "'" + s->text + "'";
    return std::get<Decimal>(o).to_string();
  };
  const char *op = p.op == CompareOp::eq ? "=" : (p.op == CompareOp::ge ? ">=" : "<=");
  return side(p.lhs) + op + side(p.rhs);
}

/// One output column: either a bound source column or a count.
struct OutputColumn {
  std::optional<Bound> source;
  std::string name;
  AttributeKind kind;
};

void enumerate(const std::vector<Source> &sources, const std::vector<std::vector<const BoundPredicate *>> &by_depth,
               std::size_t depth, Binding &binding, const std::function<void(const Binding &)> &emit) {
  if (depth == sources.size()) {
    emit(binding);
    return;
  }
  for (const Row &row : sources[depth].relation->tuples()) {
    binding[depth] = &row;
    bool ok = true;
    for (const auto *p : by_depth[depth]) {
      if (!holds(*p, binding)) {
        ok = false;
        break;
      }
    }
    if (ok) enumerate(sources, by_depth, depth + 1, binding, emit);
  }
}

std::string unique_name(std::set<std::string> &used, const std::string &preferred, const std::string &qualified) {
  std::string name = preferred;
  if (used.count(fold(name))) name = qualified;
  std::string base = name;
  for (int n = 2; used.count(fold(name)); ++n) name = base + "_" + std::to_string(n);
  used.insert(fold(name));
  return name;
}

}  // namespace

Relation execute(const SelectQuery &query, const Database &db) {
  std::vector<Source> sources;
  for (const auto &t : query.from) {
    for (const auto &s : sources) {
      if (iequals(s.alias, t.effective_alias())) throw ResolutionError("duplicate table alias '" + s.alias + "'");
    }
    sources.push_back({t.effective_alias(), &db.at(t.table)});
  }

  std::vector<BoundPredicate> predicates;
  for (const auto &p : query.where) {
    BoundPredicate bp{bind_operand(sources, p.lhs), p.op, bind_operand(sources, p.rhs), 0, predicate_text(p)};
    if (bp.lhs.column) bp.ready_at = std::max(bp.ready_at, bp.lhs.column->table);
    if (bp.rhs.column) bp.ready_at = std::max(bp.ready_at, bp.rhs.column->table);
    predicates.push_back(std::move(bp));
  }
  std::vector<std::vector<const BoundPredicate *>> by_depth(sources.size());
  for (const auto &p : predicates) by_depth[p.ready_at].push_back(&p);

  std::vector<Bound> group_keys;
  for (const auto &g : query.group_by) group_keys.push_back(resolve(sources, g));
  const bool grouped = !group_keys.empty();

  std::vector<OutputColumn> columns;
  std::set<std::string> used;
  bool has_count = false;
  bool has_plain = false;
  for (const auto &item : query.items) {
    switch (item.kind) {
      case SelectItem::Kind::star: {
        if (grouped) throw ResolutionError("'*' cannot be used with GROUP BY");
        has_plain = true;
        for (std::size_t t = 0; t < sources.size(); ++t) {
          if (!item.star_qualifier.empty() && !iequals(sources[t].alias, item.star_qualifier)) continue;
          const auto &attrs = sources[t].relation->schema().attributes();
          for (std::size_t c = 0; c < attrs.size(); ++c) {
            columns.push_back({Bound{t, c}, unique_name(used, attrs[c].name, sources[t].alias + "." + attrs[c].name),
                               attrs[c].kind});
          }
        }
        break;
      }
      case SelectItem::Kind::column: {
        has_plain = true;
        Bound b = resolve(sources, item.column);
        if (grouped && std::find(group_keys.begin(), group_keys.end(), b) == group_keys.end()) {
          throw ResolutionError("column '" + ref_text(item.column) + "' must appear in GROUP BY");
        }
        const auto &spec = sources[b.table].relation->schema()[b.column];
        std::string preferred = item.alias ? *item.alias : spec.name;
        columns.push_back({b, unique_name(used, preferred, sources[b.table].alias + "." + spec.name), spec.kind});
        break;
      }
      case SelectItem::Kind::count_column:
        resolve(sources, item.column);
        [[fallthrough]];
      case SelectItem::Kind::count_star:
        has_count = true;
        columns.push_back({std::nullopt, unique_name(used, item.alias ? *item.alias : "count", "count"),
                           AttributeKind::numeric});
        break;
    }
  }
  if (has_count && has_plain && !grouped) throw ResolutionError("COUNT mixed with plain columns requires GROUP BY");

  std::vector<AttributeSpec> specs;
  for (const auto &c : columns) specs.push_back({c.name, c.kind});
  Schema schema(std::move(specs));

  auto project_row = [&](const Binding &b, std::int64_t count) {
    Row row;
    row.reserve(columns.size());
    for (const auto &c : columns) {
      row.push_back(c.source ? (*b[c.source->table])[c.source->column] : Value(Decimal::from_int(count)));
    }
    return row;
  };

  Binding binding(sources.size(), nullptr);
  std::vector<Row> rows;

  if (grouped) {
    std::map<Row, std::pair<Binding, std::int64_t>, decltype(&row_less)> groups(&row_less);
    enumerate(sources, by_depth, 0, binding, [&](const Binding &b) {
      Row key;
      for (const auto &k : group_keys) key.push_back((*b[k.table])[k.column]);
      auto [it, fresh] = groups.try_emplace(std::move(key), b, 0);
      ++it->second.second;
    });
    for (const auto &[key, entry] : groups) rows.push_back(project_row(entry.first, entry.second));
  } else if (has_count) {
    std::int64_t count = 0;
    enumerate(sources, by_depth, 0, binding, [&](const Binding &) { ++count; });
    rows.push_back(project_row(binding, count));
  } else {
    enumerate(sources, by_depth, 0, binding, [&](const Binding &b) { rows.push_back(project_row(b, 0)); });
  }

  if (query.distinct) {
    std::sort(rows.begin(), rows.end(), row_less);
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const Row &a, const Row &b) { return !row_less(a, b) && !row_less(b, a); }),
               rows.end());
  }
  return Relation(std::move(schema), std::move(rows));
}

Relation execute(const Statement &statement, Database &db) {
  if (const auto *q = std::get_if<SelectQuery>(&statement)) return execute(*q, static_cast<const Database &>(db));
  const auto &create = std::get<CreateTable>(statement);
  static const std::set<std::string> numeric_types{"decimal", "numeric", "int",  "integer", "smallint",
                                                   "bigint",  "float",   "real", "double",  "number"};
  std::vector<AttributeSpec> specs;
  for (const auto &col : create.columns) {
    std::string base = col.type.substr(0, col.type.find('('));
    specs.push_back({col.name, numeric_types.count(base) ? AttributeKind::numeric : AttributeKind::categorical});
  }
  Relation empty(Schema(std::move(specs)), {});
  db.add(create.table, empty);
  return empty;
}

}  // namespace aoi::sql
