#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/value.hpp"

namespace aoi {

enum class AttributeKind { categorical, numeric };

std::string_view to_string(AttributeKind kind);

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::categorical;

  friend bool operator==(const AttributeSpec &, const AttributeSpec &) = default;
};

/// Ordered attribute list. Names are unique and looked up case-insensitively.
class Schema {
 public:
  Schema() = default;
  /// Throws SchemaError on an empty or duplicate name.
  explicit Schema(std::vector<AttributeSpec> attributes);

  const std::vector<AttributeSpec> &attributes() const { return attributes_; }
  std::size_t size() const { return attributes_.size(); }
  const AttributeSpec &operator[](std::size_t i) const { return attributes_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws SchemaError naming the attribute when it is absent.
  std::size_t index_of(std::string_view name) const;
  std::vector<std::string> names() const;

  friend bool operator==(const Schema &, const Schema &) = default;

 private:
  std::vector<AttributeSpec> attributes_;
};

/// Immutable relation: schema plus ordered tuples.
class Relation {
 public:
  Relation() = default;
  /// Validates row width and cell kinds; numeric columns hold numbers only,
  /// categorical columns hold text (or concept sets produced by simplification).
  Relation(Schema schema, std::vector<Row> tuples);

  const Schema &schema() const { return schema_; }
  const std::vector<Row> &tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }

  friend bool operator==(const Relation &, const Relation &) = default;

 private:
  Schema schema_;
  std::vector<Row> tuples_;
};

using KindOverrides = std::map<std::string, AttributeKind, CaseInsensitiveLess>;

/// Reads a CSV document whose first record is the header. A column is numeric when
/// every cell parses as a decimal, unless `kinds` says otherwise.
Relation load_relation(std::string_view source, std::string_view name, const KindOverrides &kinds = {});

/// Restricts to `keep` in the given order. Duplicates are kept, row order preserved.
Relation project(const Relation &relation, const std::vector<std::string> &keep);

std::size_t distinct_count(const Relation &relation, std::string_view attribute);

/// Named relations with case-insensitive lookup.
class Database {
 public:
  /// Throws SchemaError if a relation with the same (case-folded) name exists.
  void add(std::string name, Relation relation);
  void replace(std::string name, Relation relation);

  const Relation *find(std::string_view name) const;
  /// Throws ResolutionError when absent.
  const Relation &at(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, std::pair<std::string, Relation>, CaseInsensitiveLess> relations_;
};

}  // namespace aoi
