#include <doctest.h>

#include "aoi/csv.hpp"
#include "aoi/validate.hpp"
#include "support.hpp"

using namespace aoi;

namespace {

LearningTask task_file(const std::string &name) {
  return parse_task(csv::read_file((test::sample_dir() / "tasks" / (name + ".json")).string()));
}

}  // namespace

TEST_SUITE("validate") {
  TEST_CASE("every stage agrees for the bundled tasks") {
    for (const char *name : {"graduate", "undergraduate", "classification"}) {
      CAPTURE(name);
      auto checks = validate_stages(test::sample(), task_file(name));
      REQUIRE(checks.size() == 7);
      for (const auto &c : checks) {
        CAPTURE(sql::to_string(c.stage));
        CHECK(c.match);
        CHECK(c.diff.empty());
      }
    }
  }

  TEST_CASE("stage row counts") {
    auto checks = validate_stages(test::sample(), test::student_task("graduate"));
    std::vector<std::size_t> sizes;
    for (const auto &c : checks) sizes.push_back(c.executed.size());
    CHECK(sizes[0] == 6);
    CHECK(sizes[1] == 6);
    CHECK(sizes[6] == checks[6].engine.size());
  }

  TEST_CASE("canonical form ignores column and row order") {
    Relation a(Schema({{"Major"}, {"GPA", AttributeKind::numeric}}),
               {{Value("Art"), Value(Decimal::from_int(3))}, {Value("Science"), Value(*Decimal::parse("2.50"))}});
    Relation b(Schema({{"gpa"}, {"major"}}), {{Value("2.50"), Value("Science")}, {Value("3"), Value("Art")}});
    CHECK(canonicalize(a) == canonicalize(b));
    CHECK(canonicalize(a).schema().names() == std::vector<std::string>{"gpa", "major"});
    Relation c(Schema({{"gpa"}, {"major"}}), {{Value("2.5"), Value("Science")}, {Value("3"), Value("Art")}});
    CHECK_FALSE(canonicalize(a) == canonicalize(c));
  }

  TEST_CASE("a broken hierarchy table is reported with a diff") {
    Dataset broken = test::sample();
    const Relation &majors = broken.db.at("hierarchy_major");
    std::vector<Row> rows;
    for (const auto &r : majors.tuples()) {
      if (r[0].to_string() != "History") rows.push_back(r);
    }
    broken.db.replace("hierarchy_major", Relation(majors.schema(), rows));
    auto checks = validate_stages(broken, test::student_task("graduate"));
    CHECK(checks[0].match);
    REQUIRE_FALSE(checks[2].match);
    CHECK(checks[2].diff.find("engine only") != std::string::npos);
    CHECK(checks[2].diff.find("Art") != std::string::npos);
  }

  TEST_CASE("engine stage drops attributes at ANY") {
    Relation r = engine_stage(test::sample(), test::student_task("undergraduate"), sql::Stage::further);
    for (const auto &n : r.schema().names()) CHECK(n != "ANY");
    CHECK(r.schema().find("vote"));
  }
}
