#pragma once

#include <string>
#include <variant>
#include <vector>

#include "aoi/decimal.hpp"

namespace aoi {

/// Non-empty set of concept names. Element order is kept for display only;
/// equality and ordering are set-based.
class ConceptSet {
 public:
  /// Throws TypeError when `members` is empty or contains duplicates.
  explicit ConceptSet(std::vector<std::string> members);

  const std::vector<std::string> &members() const { return members_; }
  bool contains(const std::string &concept_name) const;
  std::vector<std::string> sorted() const;

  friend bool operator==(const ConceptSet &a, const ConceptSet &b) { return a.sorted() == b.sorted(); }

 private:
  std::vector<std::string> members_;
};

/// A relation cell: text, exact number, or (after rule simplification) a concept set.
class Value {
 public:
  Value() : data_(std::string{}) {}
  Value(std::string text) : data_(std::move(text)) {}  // NOLINT(google-explicit-constructor)
  Value(const char *text) : data_(std::string(text)) {}  // NOLINT(google-explicit-constructor)
  Value(Decimal number) : data_(number) {}  // NOLINT(google-explicit-constructor)
  Value(ConceptSet set) : data_(std::move(set)) {}  // NOLINT(google-explicit-constructor)

  bool is_text() const { return std::holds_alternative<std::string>(data_); }
  bool is_number() const { return std::holds_alternative<Decimal>(data_); }
  bool is_set() const { return std::holds_alternative<ConceptSet>(data_); }

  const std::string &text() const { return std::get<std::string>(data_); }
  const Decimal &number() const { return std::get<Decimal>(data_); }
  const ConceptSet &set() const { return std::get<ConceptSet>(data_); }

  /// Display form: text as-is, numbers in their own scale, sets as `{a, b}`.
  std::string to_string() const;

  friend bool operator==(const Value &a, const Value &b) { return a.data_ == b.data_; }

 private:
  std::variant<std::string, Decimal, ConceptSet> data_;
};

/// Total order used for canonical sorting: numbers numerically, everything else by
/// display text (byte order), numbers before text before sets.
int compare_values(const Value &a, const Value &b);

inline bool value_less(const Value &a, const Value &b) { return compare_values(a, b) < 0; }

using Row = std::vector<Value>;

/// Lexicographic row comparison using compare_values.
bool row_less(const Row &a, const Row &b);

std::string trim(std::string_view text);

/// Lower-cases ASCII letters and trims surrounding whitespace.
std::string fold(std::string_view text);

bool iequals(std::string_view a, std::string_view b);

}  // namespace aoi

namespace aoi {

/// Ordering for maps keyed by attribute or relation names.
struct CaseInsensitiveLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const;
};

}  // namespace aoi
