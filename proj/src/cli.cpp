#include "aoi/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aoi/csv.hpp"
#include "aoi/dataset.hpp"
#include "aoi/error.hpp"
#include "aoi/induction.hpp"
#include "aoi/report.hpp"
#include "aoi/sql_bridge.hpp"
#include "aoi/sql_exec.hpp"
#include "aoi/sql_parser.hpp"
#include "aoi/validate.hpp"

namespace aoi {

namespace {

namespace fs = std::filesystem;

/// Flags shared by the commands that run a learning task.
struct TaskFlags {
  std::string data;
  std::string task;
  std::string manifest;
  std::vector<std::string> levels;
  std::size_t attr_threshold = 0;
  std::string rel_threshold;
  bool no_simplify = false;
  std::string drop_overlaps;
};

void add_data_flags(CLI::App *cmd, TaskFlags &f) {
  cmd->add_option("--data", f.data, "Data directory (default: $AOI_DATA_DIR)");
  cmd->add_option("--manifest", f.manifest, "Manifest mapping attributes to hierarchy files and tables");
}

void add_task_flags(CLI::App *cmd, TaskFlags &f) {
  add_data_flags(cmd, f);
  cmd->add_option("--task", f.task, "Learning task JSON")->required();
  cmd->add_option("--level", f.levels, "Starting level, <attribute>=<level> (repeatable)");
  cmd->add_option("--attr-threshold", f.attr_threshold, "Maximum distinct values per attribute")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rel-threshold", f.rel_threshold, "Maximum tuples, or 'unlimited'");
  cmd->add_flag("--no-simplify", f.no_simplify, "Skip the rule transformation step");
  cmd->add_option("--drop-overlaps", f.drop_overlaps, "Hide overlapping tuples with d-weight below this percent");
}

fs::path data_dir(const TaskFlags &f) {
  if (!f.data.empty()) return f.data;
  if (const char *env = std::getenv("AOI_DATA_DIR"); env != nullptr && *env != '\0') return env;
  throw LoadError("no data directory: pass --data or set AOI_DATA_DIR");
}

DatasetOptions dataset_options(const TaskFlags &f, std::optional<std::string> fact) {
  DatasetOptions o;
  o.fact = std::move(fact);
  if (!f.manifest.empty()) o.manifest = f.manifest;
  return o;
}

LearningTask load_task(const CLI::App *cmd, const TaskFlags &f) {
  LearningTask task = parse_task(csv::read_file(f.task));
  for (const auto &spec : f.levels) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw TaskError("--level expects <attribute>=<level>, got '" + spec + "'");
    }
    task.levels[trim(spec.substr(0, eq))] = trim(spec.substr(eq + 1));
  }
  if (cmd->count("--attr-threshold")) task.attr_threshold = f.attr_threshold;
  if (cmd->count("--rel-threshold")) {
    if (iequals(f.rel_threshold, "unlimited")) {
      task.rel_threshold.reset();
    } else {
      char *end = nullptr;
      long n = std::strtol(f.rel_threshold.c_str(), &end, 10);
      if (end == f.rel_threshold.c_str() || *end != '\0' || n <= 0) {
        throw TaskError("--rel-threshold expects a positive integer or 'unlimited', got '" + f.rel_threshold + "'");
      }
      task.rel_threshold = static_cast<std::size_t>(n);
    }
  }
  if (f.no_simplify) task.simplify = false;
  if (cmd->count("--drop-overlaps")) {
    auto pct = Decimal::parse(f.drop_overlaps);
    if (!pct || *pct < Decimal::from_int(0) || *pct > Decimal::from_int(100)) {
      throw TaskError("--drop-overlaps expects a percentage between 0 and 100, got '" + f.drop_overlaps + "'");
    }
    task.drop_overlaps = *pct;
  }
  return task;
}

Dataset load_for_task(const TaskFlags &f, const LearningTask &task) {
  Dataset data = load_dataset(data_dir(f), dataset_options(f, task.fact));
  require_hierarchies(data, task);
  return data;
}

std::string format_relation(const Relation &rel) {
  const auto names = rel.schema().names();
  std::vector<std::size_t> width;
  for (const auto &n : names) width.push_back(n.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto &t : rel.tuples()) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < t.size(); ++c) {
      row.push_back(t[c].to_string());
      width[c] = std::max(width[c], row.back().size());
    }
    cells.push_back(std::move(row));
  }
  auto line = [&](const std::vector<std::string> &row) {
    std::string out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += row[c];
      if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
    }
    return out + "\n";
  };
  std::string out = line(names);
  std::size_t total = 0;
  for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
  out += std::string(total, '-') + "\n";
  for (const auto &row : cells) out += line(row);
  out += "(" + std::to_string(rel.size()) + (rel.size() == 1 ? " row)\n" : " rows)\n");
  return out;
}

nlohmann::json relation_json(const Relation &rel) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto &a : rel.schema().attributes()) cols.push_back({{"name", a.name}, {"kind", to_string(a.kind)}});
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &t : rel.tuples()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto &v : t) row.push_back(v.to_string());
    rows.push_back(std::move(row));
  }
  return {{"columns", cols}, {"rows", rows}};
}

int cmd_induce(const CLI::App *cmd, const TaskFlags &f, const std::string &output, const std::string &form,
               bool unicode, std::ostream &out) {
  LearningTask task = load_task(cmd, f);
  Dataset data = load_for_task(f, task);
  RenderOptions opts{form == "qualitative" ? RuleForm::qualitative : RuleForm::quantitative, unicode};
  RuleReport report;
  if (task.mode == LearningMode::characteristic) {
    const std::string &head = data.trees.at(task.target.attribute).canonical(task.target.concept_name);
    report = make_report(learn_characteristic(data.db, data.trees, task), head, opts);
  } else {
    report = make_report(learn_classification(data.db, data.trees, task), opts, task.drop_overlaps);
  }
  if (output == "json") {
    out << export_json(report);
  } else if (output == "rules") {
    out << export_rules(report);
  } else {
    out << export_table(report);
  }
  return kExitOk;
}

int cmd_gensql(const CLI::App *cmd, const TaskFlags &f, const std::string &stage_name, bool schema,
               const std::string &out_dir, std::ostream &out) {
  LearningTask task = load_task(cmd, f);
  Dataset data = load_for_task(f, task);

  std::vector<sql::Stage> stages;
  if (stage_name.empty() || iequals(stage_name, "all")) {
    stages = sql::all_stages();
  } else if (auto s = sql::parse_stage(stage_name)) {
    stages.push_back(*s);
  } else {
    std::string known;
    for (auto s : sql::all_stages()) known += (known.empty() ? "" : ", ") + std::string(sql::to_string(s));
    throw GenerationError("unknown stage '" + stage_name + "' (expected all, " + known + ")");
  }

  std::vector<sql::SqlScript> scripts;
  if (schema) {
    std::string ddl;
    for (const auto &s : sql::gen_schema(data.db, data.trees)) ddl += s.text;
    scripts.push_back({"schema", ddl});
  }
  for (auto s : stages) scripts.push_back(generate_stage(data, task, s));

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    for (const auto &s : scripts) {
      fs::path file = fs::path(out_dir) / (s.name + ".sql");
      std::ofstream os(file, std::ios::binary);
      if (!os) throw LoadError("cannot write " + file.string());
      os << s.text;
      out << file.string() << "\n";
    }
    return kExitOk;
  }
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    if (scripts.size() > 1) out << (i ? "\n" : "") << "-- " << scripts[i].name << "\n";
    out << scripts[i].text;
  }
  return kExitOk;
}

int cmd_runsql(const TaskFlags &f, const std::string &fact, const std::string &file, const std::string &output,
               std::istream &in, std::ostream &out) {
  std::string text;
  if (file.empty() || file == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    text = csv::read_file(file);
  }
  Database db = load_tables(data_dir(f), dataset_options(f, fact.empty() ? std::nullopt : std::optional(fact)));
  auto statements = sql::parse_script(text);
  if (statements.empty()) throw SqlSyntaxError(text.size(), {"SELECT", "CREATE"}, "end of input");

  nlohmann::json results = nlohmann::json::array();
  bool first = true;
  for (const auto &st : statements) {
    Relation rel = sql::execute(st, db);
    if (!std::holds_alternative<sql::SelectQuery>(st)) continue;
    if (output == "json") {
      results.push_back(relation_json(rel));
    } else {
      out << (first ? "" : "\n") << format_relation(rel);
    }
    first = false;
  }
  if (output == "json") out << (results.size() == 1 ? results.front() : results).dump(2) << "\n";
  return kExitOk;
}

int cmd_validate(const CLI::App *cmd, const TaskFlags &f, std::ostream &out) {
  LearningTask task = load_task(cmd, f);
  Dataset data = load_for_task(f, task);
  auto checks = validate_stages(data, task);
  const StageCheck *first_failure = nullptr;
  for (const auto &c : checks) {
    out << (c.match ? "PASS " : "FAIL ") << sql::to_string(c.stage) << " (" << c.engine.size() << " engine rows, "
        << c.executed.size() << " sql rows)\n";
    if (!c.match && first_failure == nullptr) first_failure = &c;
  }
  if (first_failure == nullptr) return kExitOk;
  out << "\nfirst mismatch: " << sql::to_string(first_failure->stage) << "\n"
      << first_failure->diff << "statement:\n"
      << first_failure->sql;
  return kExitMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
  CLI::App app{"Attribute-oriented induction over CSV data with concept hierarchies"};
  app.name("aoi");
  app.require_subcommand(1, 1);

  TaskFlags f;
  std::string output = "table";
  std::string form = "quantitative";
  bool unicode = false;
  std::string stage;
  bool schema = false;
  std::string out_dir;
  std::string sql_file;
  std::string fact;

  CLI::App *induce = app.add_subcommand("induce", "Learn characteristic or classification rules");
  add_task_flags(induce, f);
  induce->add_option("--output", output, "table, json or rules")->check(CLI::IsMember({"table", "json", "rules"}));
  induce->add_option("--form", form, "qualitative or quantitative rules")
      ->check(CLI::IsMember({"qualitative", "quantitative"}));
  induce->add_flag("--unicode", unicode, "Use logical symbols in rules");

  CLI::App *gensql = app.add_subcommand("gensql", "Print the SQL statement for each pipeline stage");
  add_task_flags(gensql, f);
  gensql->add_option("--stage", stage, "Stage name or 'all'");
  gensql->add_flag("--schema", schema, "Also emit CREATE TABLE statements");
  gensql->add_option("--out-dir", out_dir, "Write one .sql file per stage into this directory");

  CLI::App *runsql = app.add_subcommand("runsql", "Run SQL statements against the CSV tables");
  add_data_flags(runsql, f);
  runsql->add_option("file", sql_file, "SQL file ('-' or absent: standard input)");
  runsql->add_option("--fact", fact, "Fact table name when there is no manifest");
  runsql->add_option("--output", output, "table or json")->check(CLI::IsMember({"table", "json"}));

  CLI::App *validate = app.add_subcommand("validate", "Compare every stage against its generated SQL");
  add_task_flags(validate, f);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "aoi: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (induce->parsed()) return cmd_induce(induce, f, output, form, unicode, out);
    if (gensql->parsed()) return cmd_gensql(gensql, f, stage, schema, out_dir, out);
    if (runsql->parsed()) return cmd_runsql(f, fact, sql_file, output, in, out);
    if (validate->parsed()) return cmd_validate(validate, f, out);
  } catch (const Error &e) {
    err << "aoi: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error &e) {
    err << "aoi: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception &e) {
    err << "aoi: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace aoi
