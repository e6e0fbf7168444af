#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/induction.hpp"
#include "aoi/rational.hpp"

namespace aoi {

struct WeightedTuple {
  Row cells;
  std::uint64_t vote = 0;
  /// Share of the class's votes, as a fraction of 1.
  Rational t_weight;
  /// Share of this cell vector's votes across all classes (classification only).
  std::optional<Rational> d_weight;
  bool overlap = false;

  friend bool operator==(const WeightedTuple &, const WeightedTuple &) = default;
};

/// t-weight of each tuple: vote / total votes. Throws EmitError on an empty relation.
std::vector<WeightedTuple> t_weights(const GeneralizedRelation &grel);

/// Target-class tuples with t-weights and d-weights; d = vote in target / votes of the
/// same cell vector summed over all classes.
std::vector<WeightedTuple> d_weights(const ClassifiedRelation &classified, std::string_view target);

enum class RuleForm { qualitative, quantitative };

struct RenderOptions {
  RuleForm form = RuleForm::qualitative;
  bool unicode = false;
};

/// Percent text for rules: 50, 16.67, 100.
std::string format_weight_compact(const Rational &weight);
/// Percent text for tables: 50.00, 16.67, 100.00.
std::string format_weight_fixed(const Rational &weight);

/// `forall(x) head(x) -> (A(x) in c AND ...) OR ...`. ANY predicates are dropped;
/// quantitative form appends `[w%]` per disjunct using d-weights when present,
/// t-weights otherwise.
std::string render_rule(std::string_view head, const std::vector<GeneralizedAttribute> &attributes,
                        const std::vector<WeightedTuple> &tuples, RenderOptions options = {});

std::string render(const GeneralizedRelation &grel, std::string_view head, RenderOptions options = {});
std::string render(const ClassifiedRelation &classified, std::string_view head, RenderOptions options = {});

struct ParsedPredicate {
  std::string attribute;
  std::vector<std::string> concepts;

  friend bool operator==(const ParsedPredicate &, const ParsedPredicate &) = default;
};

struct ParsedDisjunct {
  std::vector<ParsedPredicate> predicates;
  std::optional<Decimal> weight;
};

struct ParsedRule {
  std::string head;
  std::vector<ParsedDisjunct> disjuncts;
};

/// Reads rule text in either the ASCII or the Unicode rendering. Throws EmitError on
/// malformed text.
ParsedRule parse_rule(std::string_view text);

/// Rebuilds a cell vector from a parsed disjunct; attributes without a predicate get ANY.
Row cells_of(const ParsedDisjunct &disjunct, const std::vector<GeneralizedAttribute> &attributes);

}  // namespace aoi
