#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/decimal.hpp"
#include "aoi/value.hpp"

namespace aoi {

enum class LearningMode { characteristic, classification };

std::string_view to_string(LearningMode mode);

/// Learning target: the class is every fact tuple whose `attribute` value generalizes
/// to `concept_name` in that attribute's hierarchy (e.g. Category in graduate).
struct TargetClass {
  std::string attribute;
  std::string concept_name;
};

using LevelMap = std::map<std::string, std::string, CaseInsensitiveLess>;

struct LearningTask {
  std::string fact;
  TargetClass target;
  LearningMode mode = LearningMode::characteristic;
  /// Attributes to learn over; unset means every non-target attribute in fact order.
  std::optional<std::vector<std::string>> in_scope;
  std::size_t attr_threshold = 3;
  /// Unset means unlimited.
  std::optional<std::size_t> rel_threshold;
  LevelMap levels;
  std::optional<bool> simplify;
  /// Minimum d-weight (percent) an overlapping classification tuple needs to be reported.
  std::optional<Decimal> drop_overlaps;

  /// Simplification defaults to on and is never applied in classification mode.
  bool simplify_enabled() const { return mode == LearningMode::characteristic && simplify.value_or(true); }
};

/// Parses the JSON task document. Unknown fields, wrong types and non-positive
/// thresholds raise TaskError naming the field.
LearningTask parse_task(std::string_view json_text);
std::string task_to_json(const LearningTask &task);

}  // namespace aoi
