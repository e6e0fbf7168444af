#include "aoi/report.hpp"

#include <algorithm>
#include <json.hpp>

#include "aoi/error.hpp"

namespace aoi {

using nlohmann::json;

RuleReport make_report(const GeneralizedRelation &grel, std::string_view head, RenderOptions options) {
  RuleReport report;
  report.mode = LearningMode::characteristic;
  report.attributes = grel.attributes();
  ReportClass c;
  c.concept_name = std::string(head);
  c.source_count = grel.source_count();
  if (!grel.empty()) {
    c.tuples = t_weights(grel);
    c.rule = render_rule(head, grel.attributes(), c.tuples, options);
  }
  report.classes.push_back(std::move(c));
  return report;
}

RuleReport make_report(const ClassifiedRelation &classified, RenderOptions options,
                       std::optional<Decimal> drop_overlaps) {
  RuleReport report;
  report.mode = LearningMode::classification;
  report.class_attribute = classified.class_attribute;
  report.attributes = classified.attributes();
  for (const auto &entry : classified.classes) {
    ReportClass c;
    c.concept_name = entry.concept_name;
    c.source_count = entry.relation.source_count();
    for (auto &t : d_weights(classified, entry.concept_name)) {
      if (drop_overlaps && t.overlap && !t.d_weight->percent_at_least(*drop_overlaps)) continue;
      c.tuples.push_back(std::move(t));
    }
    c.rule = render_rule(entry.concept_name, classified.attributes(), c.tuples, options);
    report.classes.push_back(std::move(c));
  }
  return report;
}

std::string export_table(const RuleReport &report) {
  bool classification = report.class_attribute.has_value();
  std::vector<std::string> header;
  if (classification) header.push_back(*report.class_attribute);
  for (const auto &a : report.attributes) header.push_back(a.name);
  header.emplace_back("Vote");
  header.emplace_back("t-weight");
  if (classification) header.emplace_back("d-weight");

  std::vector<std::vector<std::string>> rows;
  for (const auto &c : report.classes) {
    for (const auto &t : c.tuples) {
      std::vector<std::string> row;
      if (classification) row.push_back(c.concept_name);
      for (const auto &cell : t.cells) row.push_back(cell.to_string());
      row.push_back(std::to_string(t.vote));
      row.push_back(format_weight_fixed(t.t_weight) + "%");
      if (classification) row.push_back(t.d_weight ? format_weight_fixed(*t.d_weight) + "%" : "");
      rows.push_back(std::move(row));
    }
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto &r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string> &cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += "  ";
      out += cells[i];
      if (i + 1 < cells.size()) out += std::string(width[i] - cells[i].size(), ' ');
    }
    return out + "\n";
  };
  std::string out = line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  out += line(rule);
  for (const auto &r : rows) out += line(r);
  return out;
}

namespace {

json weight_json(const Rational &r) {
  return {{"percent", r.percent().to_double()}, {"num", r.num()}, {"den", r.den()}};
}

Rational weight_from(const json &j) { return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()); }

json cell_json(const Value &v) {
  if (v.is_set()) return v.set().members();
  return v.to_string();
}

Value cell_from(const json &j) {
  if (j.is_array()) return Value(ConceptSet(j.get<std::vector<std::string>>()));
  return Value(j.get<std::string>());
}

}  // namespace

std::string export_json(const RuleReport &report) {
  json doc;
  doc["format"] = "aoi-rules";
  doc["version"] = kReportFormatVersion;
  doc["mode"] = std::string(to_string(report.mode));
  doc["class_attribute"] = report.class_attribute ? json(*report.class_attribute) : json(nullptr);
  doc["attributes"] = json::array();
  for (const auto &a : report.attributes) doc["attributes"].push_back({{"name", a.name}, {"level", a.level}});
  doc["classes"] = json::array();
  for (const auto &c : report.classes) {
    json jc;
    jc["concept"] = c.concept_name;
    jc["source_count"] = c.source_count;
    jc["rule"] = c.rule;
    jc["tuples"] = json::array();
    for (const auto &t : c.tuples) {
      json jt;
      jt["cells"] = json::array();
      for (const auto &cell : t.cells) jt["cells"].push_back(cell_json(cell));
      jt["vote"] = t.vote;
      jt["t_weight"] = weight_json(t.t_weight);
      jt["d_weight"] = t.d_weight ? weight_json(*t.d_weight) : json(nullptr);
      jt["overlap"] = t.overlap;
      jc["tuples"].push_back(std::move(jt));
    }
    doc["classes"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

RuleReport import_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    if (doc.at("format") != "aoi-rules") throw EmitError("not an aoi-rules document");
    if (doc.at("version").get<int>() != kReportFormatVersion) throw EmitError("unsupported aoi-rules version");
    RuleReport report;
    auto mode = doc.at("mode").get<std::string>();
    report.mode = mode == "classification" ? LearningMode::classification : LearningMode::characteristic;
    if (!doc.at("class_attribute").is_null()) report.class_attribute = doc["class_attribute"].get<std::string>();
    for (const auto &a : doc.at("attributes")) {
      report.attributes.push_back({a.at("name").get<std::string>(), a.at("level").get<std::string>()});
    }
    for (const auto &jc : doc.at("classes")) {
      ReportClass c;
      c.concept_name = jc.at("concept").get<std::string>();
      c.source_count = jc.at("source_count").get<std::uint64_t>();
      c.rule = jc.at("rule").get<std::string>();
      for (const auto &jt : jc.at("tuples")) {
        WeightedTuple t;
        for (const auto &cell : jt.at("cells")) t.cells.push_back(cell_from(cell));
        t.vote = jt.at("vote").get<std::uint64_t>();
        t.t_weight = weight_from(jt.at("t_weight"));
        if (!jt.at("d_weight").is_null()) t.d_weight = weight_from(jt["d_weight"]);
        t.overlap = jt.at("overlap").get<bool>();
        c.tuples.push_back(std::move(t));
      }
      report.classes.push_back(std::move(c));
    }
    return report;
  } catch (const json::exception &e) {
    throw EmitError(std::string("malformed aoi-rules document: ") + e.what());
  }
}

std::string export_rules(const RuleReport &report) {
  std::string out;
  for (const auto &c : report.classes) out += c.rule + "\n";
  return out;
}

}  // namespace aoi
