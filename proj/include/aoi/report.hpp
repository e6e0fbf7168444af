#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/rules.hpp"
#include "aoi/task.hpp"

namespace aoi {

struct ReportClass {
  std::string concept_name;
  std::uint64_t source_count = 0;
  std::vector<WeightedTuple> tuples;
  std::string rule;

  friend bool operator==(const ReportClass &, const ReportClass &) = default;
};

/// Everything `induce` emits: generalized schema with levels, weighted tuples and the
/// rendered rule per class.
struct RuleReport {
  LearningMode mode = LearningMode::characteristic;
  /// Set in classification mode (e.g. "study").
  std::optional<std::string> class_attribute;
  std::vector<GeneralizedAttribute> attributes;
  std::vector<ReportClass> classes;

  friend bool operator==(const RuleReport &, const RuleReport &) = default;
};

RuleReport make_report(const GeneralizedRelation &grel, std::string_view head, RenderOptions options = {});

/// One class entry per class concept. With `drop_overlaps`, overlapping tuples whose
/// d-weight is below that percentage are left out (weights are not recomputed).
RuleReport make_report(const ClassifiedRelation &classified, RenderOptions options = {},
                       std::optional<Decimal> drop_overlaps = std::nullopt);

/// Aligned text table: attribute columns, Vote, t-weight and (classification) d-weight.
std::string export_table(const RuleReport &report);

inline constexpr int kReportFormatVersion = 1;

std::string export_json(const RuleReport &report);
/// Inverse of export_json. Throws EmitError on a malformed document.
RuleReport import_json(std::string_view text);

/// Rule text for every class, one per line.
std::string export_rules(const RuleReport &report);

}  // namespace aoi
