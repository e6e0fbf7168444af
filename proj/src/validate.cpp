#include "aoi/validate.hpp"

#include <algorithm>
#include <numeric>

#include "aoi/error.hpp"
#include "aoi/induction.hpp"
#include "aoi/sql_exec.hpp"
#include "aoi/sql_parser.hpp"

namespace aoi {

namespace {

LearningTask with_mode(const LearningTask &task, LearningMode mode) {
  LearningTask t = task;
  t.mode = mode;
  if (mode == LearningMode::classification) {
    t.simplify.reset();
    t.drop_overlaps.reset();
  }
  return t;
}

struct StageData {
  std::vector<GeneralizedAttribute> columns;
  Relation engine;
};

Relation drop_any(const Relation &rel, const std::vector<GeneralizedAttribute> &attrs, std::size_t offset) {
  std::vector<std::string> keep;
  for (std::size_t c = 0; c < rel.schema().size(); ++c) {
    const bool attribute_column = c >= offset && c - offset < attrs.size();
    if (attribute_column && iequals(attrs[c - offset].level, kAny)) continue;
    keep.push_back(rel.schema()[c].name);
  }
  return project(rel, keep);
}

StageData run_stage(const Dataset &data, const LearningTask &task, sql::Stage stage) {
  if (stage == sql::Stage::classification) {
    ClassifiedRelation classified =
        learn_classification(data.db, data.trees, with_mode(task, LearningMode::classification));
    Relation rel = to_relation(classified, ColumnNaming::level, true);
    return {classified.attributes(), drop_any(rel, classified.attributes(), 1)};
  }
  LearningTask ct = with_mode(task, LearningMode::characteristic);
  CharacteristicTrace trace = trace_characteristic(data.db, data.trees, ct, ct.target.concept_name, false);
  switch (stage) {
    case sql::Stage::select_class:
      return {{}, trace.target};
    case sql::Stage::attribute_removal: {
      std::vector<GeneralizedAttribute> cols;
      for (const auto &name : trace.removed.schema().names()) cols.push_back({name, ""});
      return {cols, trace.removed};
    }
    case sql::Stage::ascend_distinct:
    case sql::Stage::ascend_group: {
      const auto &attrs = trace.ascended.attributes();
      return {attrs, drop_any(to_relation(trace.ascended, ColumnNaming::level, false), attrs, 0)};
    }
    case sql::Stage::vote: {
      const auto &attrs = trace.ascended.attributes();
      return {attrs, drop_any(to_relation(trace.ascended, ColumnNaming::level, true), attrs, 0)};
    }
    case sql::Stage::further: {
      const auto &attrs = trace.after_relation_threshold.attributes();
      return {attrs, drop_any(to_relation(trace.after_relation_threshold, ColumnNaming::level, true), attrs, 0)};
    }
    case sql::Stage::classification:
      break;
  }
  throw Error("unhandled stage");
}

sql::SqlScript script_for(const Dataset &data, const LearningTask &task, sql::Stage stage,
                          const std::vector<GeneralizedAttribute> &columns) {
  LearningTask t = with_mode(
      task, stage == sql::Stage::classification ? LearningMode::classification : LearningMode::characteristic);
  return sql::gen_select(t, data.db.at(t.fact).schema(), data.trees, columns, stage);
}

std::string row_text(const Row &row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.size(); ++i) out += (i ? ", " : "") + row[i].to_string();
  return out + ")";
}

std::string describe(const Relation &engine, const Relation &executed) {
  std::string out;
  if (engine.schema().names() != executed.schema().names()) {
    auto names = [](const Relation &r) {
      std::string s;
      for (const auto &n : r.schema().names()) s += (s.empty() ? "" : ", ") + n;
      return s;
    };
    return "  columns differ: engine [" + names(engine) + "], sql [" + names(executed) + "]\n";
  }
  const auto &a = engine.tuples();
  const auto &b = executed.tuples();
  std::vector<Row> only_engine;
  std::vector<Row> only_sql;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_engine), row_less);
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_sql), row_less);
  for (const auto &r : only_engine) out += "  - engine only: " + row_text(r) + "\n";
  for (const auto &r : only_sql) out += "  + sql only:    " + row_text(r) + "\n";
  return out;
}

}  // namespace

sql::SqlScript generate_stage(const Dataset &data, const LearningTask &task, sql::Stage stage) {
  return script_for(data, task, stage, run_stage(data, task, stage).columns);
}

Relation engine_stage(const Dataset &data, const LearningTask &task, sql::Stage stage) {
  return run_stage(data, task, stage).engine;
}

Relation canonicalize(const Relation &relation) {
  const auto &attrs = relation.schema().attributes();
  std::vector<std::size_t> order(attrs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return fold(attrs[x].name) < fold(attrs[y].name); });
  std::vector<AttributeSpec> specs;
  for (std::size_t c : order) specs.push_back({fold(attrs[c].name), AttributeKind::categorical});
  std::vector<Row> rows;
  for (const auto &t : relation.tuples()) {
    Row row;
    for (std::size_t c : order) row.emplace_back(t[c].to_string());
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), row_less);
  return Relation(Schema(std::move(specs)), std::move(rows));
}

std::vector<StageCheck> validate_stages(const Dataset &data, const LearningTask &task) {
  std::vector<StageCheck> out;
  for (sql::Stage stage : sql::all_stages()) {
    StageData sd = run_stage(data, task, stage);
    StageCheck check;
    check.stage = stage;
    check.sql = script_for(data, task, stage, sd.columns).text;
    check.engine = canonicalize(sd.engine);
    check.executed = canonicalize(sql::execute(sql::parse_query(check.sql), data.db));
    check.match = check.engine == check.executed;
    if (!check.match) check.diff = describe(check.engine, check.executed);
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace aoi
