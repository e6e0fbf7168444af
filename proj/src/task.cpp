#include "aoi/task.hpp"

#include <json.hpp>

#include "aoi/error.hpp"

namespace aoi {

using nlohmann::json;

std::string_view to_string(LearningMode mode) {
  return mode == LearningMode::classification ? "classification" : "characteristic";
}

namespace {

std::size_t positive(const json &v, const char *field) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw TaskError(std::string("task field '") + field + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::string text(const json &v, const std::string &field) {
  if (!v.is_string()) throw TaskError("task field '" + field + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

LearningTask parse_task(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw TaskError(std::string("task document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw TaskError("task document must be a JSON object");

  LearningTask task;
  bool has_fact = false;
  bool has_target = false;
  for (const auto &[key, v] : doc.items()) {
    if (key == "fact") {
      task.fact = text(v, key);
      has_fact = true;
    } else if (key == "target") {
      if (!v.is_object()) throw TaskError("task field 'target' must be an object");
      for (const auto &[tk, tv] : v.items()) {
        if (tk == "attribute") {
          task.target.attribute = text(tv, "target.attribute");
        } else if (tk == "concept") {
          task.target.concept_name = text(tv, "target.concept");
        } else {
          throw TaskError("unknown task field 'target." + tk + "'");
        }
      }
      if (task.target.attribute.empty() || task.target.concept_name.empty()) {
        throw TaskError("task field 'target' needs non-empty 'attribute' and 'concept'");
      }
      has_target = true;
    } else if (key == "mode") {
      auto m = text(v, key);
      if (m == "characteristic") {
        task.mode = LearningMode::characteristic;
      } else if (m == "classification") {
        task.mode = LearningMode::classification;
      } else {
        throw TaskError("task field 'mode' must be 'characteristic' or 'classification', got '" + m + "'");
      }
    } else if (key == "in_scope") {
      if (!v.is_array()) throw TaskError("task field 'in_scope' must be an array of attribute names");
      std::vector<std::string> names;
      for (const auto &n : v) names.push_back(text(n, "in_scope"));
      task.in_scope = std::move(names);
    } else if (key == "attr_threshold") {
      task.attr_threshold = positive(v, "attr_threshold");
    } else if (key == "rel_threshold") {
      if (v.is_null() || (v.is_string() && v.get<std::string>() == "unlimited")) {
        task.rel_threshold.reset();
      } else {
        task.rel_threshold = positive(v, "rel_threshold");
      }
    } else if (key == "levels") {
      if (!v.is_object()) throw TaskError("task field 'levels' must be an object of attribute -> level");
      for (const auto &[attr, level] : v.items()) task.levels[attr] = text(level, "levels." + attr);
    } else if (key == "simplify") {
      if (!v.is_boolean()) throw TaskError("task field 'simplify' must be a boolean");
      task.simplify = v.get<bool>();
    } else if (key == "drop_overlaps") {
      if (v.is_null()) continue;
      if (!v.is_number()) throw TaskError("task field 'drop_overlaps' must be a number (percent)");
      auto d = Decimal::parse(v.dump());
      if (!d || *d < Decimal(0, 0) || *d > Decimal(100, 0)) {
        throw TaskError("task field 'drop_overlaps' must be a percentage between 0 and 100");
      }
      task.drop_overlaps = *d;
    } else {
      throw TaskError("unknown task field '" + key + "'");
    }
  }
  if (!has_fact) throw TaskError("task field 'fact' is required");
  if (!has_target) throw TaskError("task field 'target' is required");
  return task;
}

std::string task_to_json(const LearningTask &task) {
  json doc;
  doc["fact"] = task.fact;
  doc["target"] = {{"attribute", task.target.attribute}, {"concept", task.target.concept_name}};
  doc["mode"] = std::string(to_string(task.mode));
  if (task.in_scope) doc["in_scope"] = *task.in_scope;
  doc["attr_threshold"] = task.attr_threshold;
  doc["rel_threshold"] = task.rel_threshold ? json(*task.rel_threshold) : json(nullptr);
  json levels = json::object();
  for (const auto &[a, l] : task.levels) levels[a] = l;
  doc["levels"] = levels;
  if (task.simplify) doc["simplify"] = *task.simplify;
  if (task.drop_overlaps) doc["drop_overlaps"] = task.drop_overlaps->to_double();
  return doc.dump(2);
}

}  // namespace aoi
