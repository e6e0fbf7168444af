#pragma once

#include <string>
#include <vector>

#include "aoi/dataset.hpp"
#include "aoi/relation.hpp"
#include "aoi/sql_bridge.hpp"

namespace aoi {

/// The generated statement for a stage, with the levels the engine reaches.
/// Characteristic stages use the task's target class; the classification stage
/// runs the same target in classification mode, whatever the task's own mode.
sql::SqlScript generate_stage(const Dataset &data, const LearningTask &task, sql::Stage stage);

/// Engine output for a stage, shaped like the SQL result: columns named after levels,
/// attributes at ANY dropped.
Relation engine_stage(const Dataset &data, const LearningTask &task, sql::Stage stage);

/// Column names case-folded and sorted, every cell as display text, rows sorted. Two relations with equal
/// canonical forms hold the same multiset of tuples.
Relation canonicalize(const Relation &relation);

struct StageCheck {
  sql::Stage stage;
  std::string sql;
  Relation engine;
  Relation executed;
  bool match = false;
  /// Human-readable difference when the stage does not match.
  std::string diff;
};

/// Runs every stage through the engine and through generated SQL executed by the
/// SQL subset executor, comparing canonical forms.
std::vector<StageCheck> validate_stages(const Dataset &data, const LearningTask &task);

}  // namespace aoi
