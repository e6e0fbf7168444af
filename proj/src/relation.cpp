#include "aoi/relation.hpp"

#include <algorithm>

#include "aoi/csv.hpp"
#include "aoi/error.hpp"

namespace aoi {

std::string_view to_string(AttributeKind kind) { return kind == AttributeKind::numeric ? "numeric" : "categorical"; }

Schema::Schema(std::vector<AttributeSpec> attributes) : attributes_(std::move(attributes)) {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name.empty()) throw SchemaError("attribute " + std::to_string(i + 1) + " has an empty name");
    for (std::size_t j = 0; j < i; ++j) {
      if (iequals(attributes_[i].name, attributes_[j].name)) {
        throw SchemaError("duplicate attribute name '" + attributes_[i].name + "'");
      }
    }
  }
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (iequals(attributes_[i].name, name)) return i;
  }
  return std::nullopt;
}

std::size_t Schema::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw SchemaError("unknown attribute '" + std::string(name) + "'");
}

std::vector<std::string> Schema::names() const {
  std::vector<std::string> out;
  out.reserve(attributes_.size());
  for (const auto &a : attributes_) out.push_back(a.name);
  return out;
}

Relation::Relation(Schema schema, std::vector<Row> tuples) : schema_(std::move(schema)), tuples_(std::move(tuples)) {
  for (std::size_t r = 0; r < tuples_.size(); ++r) {
    const Row &row = tuples_[r];
    if (row.size() != schema_.size()) {
      throw SchemaError("tuple " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " values, schema has " +
                        std::to_string(schema_.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      bool numeric = schema_[c].kind == AttributeKind::numeric;
      if (numeric != row[c].is_number()) {
        throw TypeError("tuple " + std::to_string(r + 1) + " attribute " + schema_[c].name + ": expected " +
                        std::string(to_string(schema_[c].kind)) + " value, got '" + row[c].to_string() + "'");
      }
    }
  }
}

Relation load_relation(std::string_view source, std::string_view name, const KindOverrides &kinds) {
  auto records = csv::parse(source);
  if (records.empty()) throw LoadError(std::string(name) + ": missing header row");

  const auto &header = records.front();
  std::vector<AttributeSpec> specs;
  for (const auto &h : header) specs.push_back({trim(h), AttributeKind::categorical});
  Schema probe(specs);  // validates names
  for (const auto &[column, kind] : kinds) {
    if (!probe.find(column)) throw SchemaError(std::string(name) + ": kind override for unknown column '" + column + "'");
  }

  const std::size_t width = header.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw LoadError(std::string(name) + ": row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                      " columns, header has " + std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (fold(records[r][c]).empty()) {
        throw LoadError(std::string(name) + ": empty cell at row " + std::to_string(r) + ", column " + specs[c].name);
      }
    }
  }

  for (std::size_t c = 0; c < width; ++c) {
    auto it = kinds.find(specs[c].name);
    if (it != kinds.end()) {
      specs[c].kind = it->second;
      continue;
    }
    bool all_numeric = records.size() > 1;
    for (std::size_t r = 1; r < records.size() && all_numeric; ++r) {
      all_numeric = Decimal::parse(records[r][c]).has_value();
    }
    specs[c].kind = all_numeric ? AttributeKind::numeric : AttributeKind::categorical;
  }

  std::vector<Row> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    Row row;
    row.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
      const std::string &cell = records[r][c];
      if (specs[c].kind == AttributeKind::numeric) {
        auto d = Decimal::parse(cell);
        if (!d) {
          throw TypeError(std::string(name) + ": row " + std::to_string(r) + ", column " + specs[c].name + ": '" + cell +
                          "' is not a number");
        }
        row.emplace_back(*d);
      } else {
        row.emplace_back(cell);
      }
    }
    rows.push_back(std::move(row));
  }
  return Relation(Schema(std::move(specs)), std::move(rows));
}

Relation project(const Relation &relation, const std::vector<std::string> &keep) {
  std::vector<std::size_t> idx;
  std::vector<AttributeSpec> specs;
  for (const auto &k : keep) {
    std::size_t i = relation.schema().index_of(k);
    idx.push_back(i);
    specs.push_back(relation.schema()[i]);
  }
  std::vector<Row> rows;
  rows.reserve(relation.size());
  for (const auto &t : relation.tuples()) {
    Row row;
    row.reserve(idx.size());
    for (auto i : idx) row.push_back(t[i]);
    rows.push_back(std::move(row));
  }
  return Relation(Schema(std::move(specs)), std::move(rows));
}

std::size_t distinct_count(const Relation &relation, std::string_view attribute) {
  std::size_t col = relation.schema().index_of(attribute);
  std::vector<Value> seen;
  for (const auto &t : relation.tuples()) seen.push_back(t[col]);
  std::sort(seen.begin(), seen.end(), value_less);
  return static_cast<std::size_t>(
      std::unique(seen.begin(), seen.end(), [](const Value &a, const Value &b) { return compare_values(a, b) == 0; }) -
      seen.begin());
}

void Database::add(std::string name, Relation relation) {
  if (relations_.count(name) != 0) throw SchemaError("relation '" + name + "' already exists");
  std::string key = name;
  relations_.emplace(std::move(key), std::make_pair(std::move(name), std::move(relation)));
}

void Database::replace(std::string name, Relation relation) {
  relations_.erase(name);
  add(std::move(name), std::move(relation));
}

const Relation *Database::find(std::string_view name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second.second;
}

const Relation &Database::at(std::string_view name) const {
  if (const auto *r = find(name)) return *r;
  throw ResolutionError("unknown relation '" + std::string(name) + "'");
}

std::vector<std::string> Database::names() const {
  std::vector<std::string> out;
  for (const auto &[k, v] : relations_) out.push_back(v.first);
  return out;
}

}  // namespace aoi
