#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aoi/dataset.hpp"
#include "aoi/induction.hpp"
#include "aoi/task.hpp"

namespace aoi::test {

inline std::filesystem::path sample_dir() { return AOI_SAMPLE_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return AOI_TEST_DATA_DIR; }

inline const Dataset &sample() {
  static const Dataset data = load_dataset(sample_dir());
  return data;
}

inline LearningTask student_task(std::string concept_name, LearningMode mode = LearningMode::characteristic) {
  LearningTask t;
  t.fact = "student";
  t.target = {"Category", std::move(concept_name)};
  t.mode = mode;
  t.levels = {{"Major", "studyprog"}, {"Birthplace", "city"}, {"GPA", "range"}};
  return t;
}

/// A generalized tuple as plain strings plus its vote, for terse golden tables.
using Line = std::pair<std::vector<std::string>, std::uint64_t>;

inline std::vector<Line> lines(const GeneralizedRelation &grel) {
  std::vector<Line> out;
  for (const auto &t : grel.tuples()) {
    std::vector<std::string> cells;
    for (const auto &c : t.cells) cells.push_back(c.to_string());
    out.emplace_back(std::move(cells), t.vote);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Line> sorted(std::vector<Line> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Walks parent links from the leaf concept until the named level: an ascension
/// that shares nothing with ConceptTree::generalize beyond leaf lookup.
inline std::string climb(const ConceptTree &tree, const Value &raw, const std::string &level) {
  std::string c = tree.leaf_concept(raw);
  if (level == "ANY") return "ANY";
  while (!iequals(tree.levels()[tree.level_of(c)], level)) {
    auto p = tree.parent_of(c);
    if (!p) return "ANY";
    c = *p;
  }
  return c;
}

/// Naive map-group-count over the given attributes at the given levels.
inline std::map<std::vector<std::string>, std::uint64_t> group_count(
    const Relation &rel, const HierarchySet &trees, const std::vector<std::pair<std::string, std::string>> &levels) {
  std::map<std::vector<std::string>, std::uint64_t> out;
  for (const auto &row : rel.tuples()) {
    std::vector<std::string> key;
    for (const auto &[attr, level] : levels) key.push_back(climb(trees.at(attr), row[rel.schema().index_of(attr)], level));
    ++out[key];
  }
  return out;
}

inline std::map<std::vector<std::string>, std::uint64_t> as_map(const GeneralizedRelation &grel) {
  std::map<std::vector<std::string>, std::uint64_t> out;
  for (const auto &t : grel.tuples()) {
    std::vector<std::string> key;
    for (const auto &c : t.cells) key.push_back(c.to_string());
    out[key] += t.vote;
  }
  return out;
}

/// Set of level-0 concept vectors a generalized relation covers: every cell is
/// expanded to the leaf-level concepts beneath it and the product taken.
inline std::set<std::vector<std::string>> extension(const GeneralizedRelation &grel, const HierarchySet &trees) {
  std::set<std::vector<std::string>> out;
  const auto &attrs = grel.attributes();
  for (const auto &t : grel.tuples()) {
    std::vector<std::vector<std::string>> choices;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      const ConceptTree &tree = trees.at(attrs[i].name);
      std::vector<std::string> concepts;
      const Value &cell = t.cells[i];
      std::vector<std::string> tops = cell.is_set() ? cell.set().members() : std::vector<std::string>{cell.to_string()};
      for (const auto &top : tops) {
        auto leaves = iequals(top, "ANY") ? tree.concepts_at(0) : tree.descendants_at(top, 0);
        concepts.insert(concepts.end(), leaves.begin(), leaves.end());
      }
      choices.push_back(std::move(concepts));
    }
    std::vector<std::string> current;
    auto rec = [&](auto &&self, std::size_t i) -> void {
      if (i == choices.size()) {
        out.insert(current);
        return;
      }
      for (const auto &c : choices[i]) {
        current.push_back(c);
        self(self, i + 1);
        current.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

/// Random fact table over the sample hierarchies: 1..max_rows students drawing
/// leaves uniformly and GPAs on a 0.01 grid in [0, 4].
inline Relation random_students(std::mt19937 &rng, std::size_t max_rows, std::size_t min_rows = 1) {
  const HierarchySet &trees = sample().trees;
  auto pick = [&](const std::vector<std::string> &v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  const auto categories = trees.at("Category").concepts_at(0);
  const auto majors = trees.at("Major").concepts_at(0);
  const auto places = trees.at("Birthplace").concepts_at(0);
  std::size_t n = std::uniform_int_distribution<std::size_t>(min_rows, max_rows)(rng);
  std::vector<Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({Value("s" + std::to_string(i)), Value(pick(categories)), Value(pick(majors)), Value(pick(places)),
                    Value(Decimal(std::uniform_int_distribution<std::int64_t>(0, 400)(rng), 2))});
  }
  return Relation(Schema({{"Name", AttributeKind::categorical},
                          {"Category", AttributeKind::categorical},
                          {"Major", AttributeKind::categorical},
                          {"Birthplace", AttributeKind::categorical},
                          {"GPA", AttributeKind::numeric}}),
                  std::move(rows));
}

/// The sample dataset with its fact table swapped out.
inline Dataset with_facts(Relation facts) {
  Dataset d = sample();
  d.db.replace("student", std::move(facts));
  return d;
}

}  // namespace aoi::test
