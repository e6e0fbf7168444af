#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "aoi/hierarchy.hpp"
#include "aoi/relation.hpp"
#include "aoi/task.hpp"

namespace aoi {

/// A data directory loaded into memory: the fact relation, one concept tree per
/// attribute that has a hierarchy file, and every hierarchy file again as a plain
/// relation under its SQL table name (so the generated SQL can run against `db`).
struct Dataset {
  std::filesystem::path dir;
  std::string fact;
  Database db;
  HierarchySet trees;
  /// Hierarchy file the loader looked for, per fact attribute.
  std::map<std::string, std::filesystem::path, CaseInsensitiveLess> hierarchy_files;
};

struct DatasetOptions {
  /// Fact table name; used when the manifest does not name one.
  std::optional<std::string> fact;
  /// Manifest to use instead of `<dir>/manifest.json`.
  std::optional<std::filesystem::path> manifest;
};

/// Loads `<fact>.csv` and `hierarchy_<attribute>.csv` files (names lower-cased), or
/// the files a manifest maps attributes to:
///
///     {"fact": "student",
///      "hierarchies": {"Category": {"file": "hierarchy_category.csv", "table": "hierarchy_cat"}}}
///
/// A hierarchy whose header starts with `<x>_start,<x>_fin` is numeric. Attributes
/// without a file simply have no tree.
Dataset load_dataset(const std::filesystem::path &dir, const DatasetOptions &options = {});

/// Every table a data directory offers to SQL: the dataset (when a fact table is
/// known from the manifest or `options`) plus any other `.csv` file under its stem.
Database load_tables(const std::filesystem::path &dir, const DatasetOptions &options = {});

/// Throws LoadError naming the expected file when the task's target attribute, or an
/// attribute the task sets a non-leaf level for, has no hierarchy.
void require_hierarchies(const Dataset &data, const LearningTask &task);

}  // namespace aoi
