#include <doctest.h>

#include "aoi/error.hpp"
#include "aoi/hierarchy.hpp"
#include "support.hpp"

using namespace aoi;

namespace {

ConceptTree birthplace() { return test::sample().trees.at("Birthplace"); }
ConceptTree gpa() { return test::sample().trees.at("GPA"); }

}  // namespace

TEST_SUITE("hierarchy") {
  TEST_CASE("levels run leaf to root with ANY last") {
    ConceptTree t = birthplace();
    CHECK(t.levels() == std::vector<std::string>{"birthplace", "city", "country", "ANY"});
    CHECK(t.any_level() == 3);
    CHECK(t.level_index("CITY") == 1);
    CHECK(t.level_index("any") == 3);
    CHECK_THROWS_AS(t.level_index("province"), LevelError);
    CHECK(t.default_level() == 1);
    CHECK(gpa().levels() == std::vector<std::string>{"range", "ANY"});
    CHECK(gpa().default_level() == 0);
  }

  TEST_CASE("sample birthplace tree") {
    ConceptTree t = birthplace();
    CHECK(t.concepts_at(0).size() == 11);
    CHECK(t.concepts_at(1) ==
          std::vector<std::string>{"British Columbia", "Alberta", "Ontario", "India", "China"});
    CHECK(t.concepts_at(2) == std::vector<std::string>{"Canada", "Foreign"});
    CHECK(t.children_of("Canada") == std::vector<std::string>{"British Columbia", "Alberta", "Ontario"});
    CHECK(t.descendants_at("Foreign", 0) == std::vector<std::string>{"Bombay", "Shanghai", "Nanjing"});
    CHECK(t.descendants_at("Alberta", 1) == std::vector<std::string>{"Alberta"});
    CHECK(t.parent_of("Canada") == "ANY");
    CHECK(t.parent_of("ANY") == std::nullopt);
    CHECK(t.parent_of("victoria") == "British Columbia");
    CHECK(t.ancestor("Burnaby", 2) == "Canada");
    CHECK(t.ancestor("Burnaby", 3) == "ANY");
    CHECK_THROWS_AS(t.ancestor("Canada", 1), LevelError);
  }

  TEST_CASE("case-folded lookups return canonical spellings") {
    ConceptTree t = birthplace();
    CHECK(t.canonical("british columbia") == "British Columbia");
    CHECK(t.contains("  TORONTO "));
    CHECK_THROWS_AS(t.canonical("Paris"), HierarchyError);
    ConceptTree m = test::sample().trees.at("Major");
    CHECK(m.leaf_concept(Value("literature")) == "Literature");
  }

  TEST_CASE("generalize by index and by level name") {
    ConceptTree t = birthplace();
    CHECK(t.generalize(Value("Vancouver"), 0) == "Vancouver");
    CHECK(t.generalize(Value("Vancouver"), "city") == "British Columbia");
    CHECK(t.generalize(Value("Bombay"), "country") == "Foreign");
    CHECK(t.generalize(Value("Bombay"), "ANY") == "ANY");
    CHECK_THROWS_AS(t.generalize(Value("Paris"), 1), UnknownLeafError);
  }

  TEST_CASE("numeric ranges classify closed intervals") {
    ConceptTree t = gpa();
    CHECK(t.kind() == ConceptTree::Kind::numeric_range);
    CHECK(t.leaf_concept(Value(*Decimal::parse("3.5"))) == "Excellent");
    CHECK(t.leaf_concept(Value(*Decimal::parse("3.49"))) == "Good");
    CHECK(t.leaf_concept(Value(*Decimal::parse("4.00"))) == "Excellent");
    CHECK(t.leaf_concept(Value(*Decimal::parse("0"))) == "Poor");
    CHECK(t.leaf_concept(Value(*Decimal::parse("2.99"))) == "Average");
    CHECK_THROWS_AS(t.leaf_concept(Value(*Decimal::parse("4.01"))), UnknownLeafError);
    CHECK_THROWS_AS(t.leaf_concept(Value(*Decimal::parse("1.995"))), UnknownLeafError);
    CHECK_THROWS_AS(t.leaf_concept(Value("high")), UnknownLeafError);
    CHECK(t.start_column() == "gpa_start");
    CHECK(t.fin_column() == "gpa_fin");
  }

  TEST_CASE("numeric tree with an upper level") {
    ConceptTree t = load_numeric_tree("g_start,g_fin,band,tier\n0,1.99,low,weak\n2,2.99,mid,ok\n3,4,high,ok\n", "G");
    CHECK(t.levels() == std::vector<std::string>{"band", "tier", "ANY"});
    CHECK(t.generalize(Value(*Decimal::parse("3.2")), "tier") == "ok");
    CHECK(t.children_of("ok") == std::vector<std::string>{"mid", "high"});
  }

  TEST_CASE("overlapping or inverted ranges are rejected") {
    try {
      load_numeric_tree("g_start,g_fin,band\n0,2,low\n2,3,mid\n", "G");
      FAIL("expected RangeError");
    } catch (const RangeError &e) {
      std::string msg = e.what();
      CHECK(msg.find("row 2") != std::string::npos);
      CHECK(msg.find("row 1") != std::string::npos);
    }
    CHECK_THROWS_AS(load_numeric_tree("g_start,g_fin,band\n3,2,low\n", "G"), RangeError);
    CHECK_THROWS_AS(load_numeric_tree("g_start,g_fin,band\nx,2,low\n", "G"), RangeError);
    CHECK_THROWS_AS(load_numeric_tree("lo,hi,band\n0,2,low\n", "G"), HierarchyError);
  }

  TEST_CASE("categorical loader error paths") {
    CHECK_THROWS_AS(load_categorical_tree("", "A"), HierarchyError);
    CHECK_THROWS_AS(load_categorical_tree("a,b\n", "A"), HierarchyError);
    CHECK_THROWS_AS(load_categorical_tree("a,b\nx,p\ny\n", "A"), LoadError);
    // The same concept at two levels.
    CHECK_THROWS_AS(load_categorical_tree("a,b\nx,p\np,q\n", "A"), HierarchyError);
    // ANY is reserved for the root.
    CHECK_THROWS_AS(load_categorical_tree("a,b\nx,ANY\n", "A"), HierarchyError);
    try {
      load_categorical_tree("a,b,c\nx,p,r1\ny,p,r2\n", "A");
      FAIL("expected HierarchyError");
    } catch (const HierarchyError &e) {
      CHECK(std::string(e.what()).find("p") != std::string::npos);
    }
  }

  TEST_CASE("a leaf listed twice with the same parent is accepted") {
    ConceptTree t = load_categorical_tree("a,b\nx,p\nx,p\ny,p\n", "A");
    CHECK(t.concepts_at(0) == std::vector<std::string>{"x", "y"});
  }

  TEST_CASE("identity tree has the values under ANY") {
    ConceptTree t = make_identity_tree("Name", {Value("Anton"), Value("Andi"), Value("Anton")});
    CHECK(t.identity());
    CHECK(t.levels() == std::vector<std::string>{"name", "ANY"});
    CHECK(t.default_level() == 0);
    CHECK(t.concepts_at(0) == std::vector<std::string>{"Anton", "Andi"});
    CHECK(t.generalize(Value("Andi"), "ANY") == "ANY");
  }

  TEST_CASE("table names default to hierarchy_<attribute>") {
    ConceptTree t = load_categorical_tree("major,studyprog\nMath,Science\n", "Major");
    CHECK(t.table_name() == "hierarchy_major");
    CHECK(test::sample().trees.at("category").table_name() == "hierarchy_cat");
  }

  TEST_CASE("hierarchy set") {
    HierarchySet s;
    s.add(load_categorical_tree("major,studyprog\nMath,Science\n", "Major"));
    CHECK(s.contains("MAJOR"));
    CHECK_THROWS(s.add(load_categorical_tree("major,studyprog\nMath,Science\n", "major")));
    CHECK_THROWS_AS(s.at("GPA"), HierarchyError);
    CHECK(s.trees().size() == 1);
  }
}
