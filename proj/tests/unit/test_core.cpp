#include <doctest.h>

#include "aoi/csv.hpp"
#include "aoi/error.hpp"
#include "aoi/relation.hpp"

using namespace aoi;

TEST_SUITE("core") {
  TEST_CASE("decimal parsing keeps scale and compares by value") {
    auto a = Decimal::parse("3.50");
    auto b = Decimal::parse("3.5");
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->scale() == 2);
    CHECK(a->to_string() == "3.50");
    CHECK(*a == *b);
    CHECK(*Decimal::parse("-0.25") < *Decimal::parse("0"));
    CHECK(Decimal::parse("+4")->to_string() == "4");
    CHECK(Decimal::parse("1.1234567891") == std::nullopt);
    CHECK(Decimal::parse("3.") == std::nullopt);
    CHECK(Decimal::parse(".5")->to_string() == "0.5");
    CHECK(Decimal::parse("1e3") == std::nullopt);
    CHECK(Decimal::parse("") == std::nullopt);
    CHECK(Decimal::parse("99999999999999999999") == std::nullopt);
  }

  TEST_CASE("decimal ordering across scales") {
    CHECK(*Decimal::parse("1.99") < *Decimal::parse("2"));
    CHECK(*Decimal::parse("2.00") == Decimal::from_int(2));
    CHECK(*Decimal::parse("3.49") < *Decimal::parse("3.5"));
    CHECK(Decimal::parse("0.1")->to_double() == doctest::Approx(0.1));
  }

  TEST_CASE("value ordering puts numbers before text before sets") {
    Value n(Decimal::from_int(10));
    Value t("Art");
    Value s(ConceptSet({"Good", "Average"}));
    CHECK(value_less(n, t));
    CHECK(value_less(t, s));
    CHECK(value_less(Value(Decimal::from_int(2)), Value(Decimal::from_int(10))));
    CHECK(value_less(Value("Art"), Value("Science")));
    CHECK(s.to_string() == "{Good, Average}");
  }

  TEST_CASE("concept sets compare as sets and reject empties and duplicates") {
    CHECK(ConceptSet({"a", "b"}) == ConceptSet({"b", "a"}));
    CHECK_THROWS_AS(ConceptSet({}), TypeError);
    CHECK_THROWS_AS(ConceptSet({"a", "a"}), TypeError);
    CHECK(ConceptSet({"x", "y"}).contains("y"));
  }

  TEST_CASE("fold and iequals") {
    CHECK(fold("  British Columbia ") == "british columbia");
    CHECK(iequals("GPA", "gpa"));
    CHECK_FALSE(iequals("GPA", "gpa "));
  }

  TEST_CASE("csv handles quotes, CRLF and a missing final newline") {
    auto r = csv::parse("a,b\r\n\"x, y\",\"he said \"\"hi\"\"\"\r\n1,2");
    REQUIRE(r.size() == 3);
    CHECK(r[1][0] == "x, y");
    CHECK(r[1][1] == "he said \"hi\"");
    CHECK(r[2] == std::vector<std::string>{"1", "2"});
    CHECK(csv::parse("a\n").size() == 1);
    CHECK(csv::parse("").empty());
  }

  TEST_CASE("csv rejects broken quoting") {
    CHECK_THROWS_AS(csv::parse("a,\"b\n"), LoadError);
    CHECK_THROWS_AS(csv::parse("a,b\"c\n"), LoadError);
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::escape("say \"x\"") == "\"say \"\"x\"\"\"");
  }

  TEST_CASE("csv read_file reports the path") {
    try {
      csv::read_file("/nonexistent/student.csv");
      FAIL("expected LoadError");
    } catch (const LoadError &e) {
      CHECK(std::string(e.what()).find("/nonexistent/student.csv") != std::string::npos);
    }
  }

  TEST_CASE("load_relation infers kinds") {
    Relation r = load_relation("Name,GPA\nAnton,3.5\nAndi,3.70\n", "t");
    CHECK(r.schema()[0].kind == AttributeKind::categorical);
    CHECK(r.schema()[1].kind == AttributeKind::numeric);
    CHECK(r.tuples()[1][1].number().to_string() == "3.70");
    CHECK(r.size() == 2);
  }

  TEST_CASE("load_relation trims header names and honours overrides") {
    Relation r = load_relation(" Year ,x\n2001,a\n", "t", {{"year", AttributeKind::categorical}});
    CHECK(r.schema()[0].name == "Year");
    CHECK(r.tuples()[0][0].is_text());
  }

  TEST_CASE("load_relation error paths") {
    CHECK_THROWS_AS(load_relation("a,b\n1\n", "t"), LoadError);
    CHECK_THROWS_AS(load_relation("a,b\n1,\n", "t"), LoadError);
    CHECK_THROWS_AS(load_relation("a,a\n1,2\n", "t"), SchemaError);
    CHECK_THROWS_AS(load_relation("a,b\nx,1\n", "t", {{"a", AttributeKind::numeric}}), TypeError);
    try {
      load_relation("a,b\nx,1\ny,2,3\n", "t.csv");
      FAIL("expected LoadError");
    } catch (const LoadError &e) {
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }

  TEST_CASE("header-only csv gives an empty relation") {
    Relation r = load_relation("a,b\n", "t");
    CHECK(r.empty());
    CHECK(r.schema().size() == 2);
  }

  TEST_CASE("schema lookups are case-insensitive") {
    Schema s({{"Major", AttributeKind::categorical}, {"GPA", AttributeKind::numeric}});
    CHECK(s.index_of("gpa") == 1);
    CHECK_FALSE(s.find("name"));
    CHECK_THROWS_AS(s.index_of("name"), SchemaError);
    CHECK_THROWS_AS(Schema({{"", AttributeKind::categorical}}), SchemaError);
    CHECK_THROWS_AS(Schema({{"a", AttributeKind::categorical}, {"A", AttributeKind::numeric}}), SchemaError);
  }

  TEST_CASE("relation validates width and numeric cells") {
    Schema s({{"a", AttributeKind::categorical}, {"n", AttributeKind::numeric}});
    CHECK_THROWS(Relation(s, {{Value("x")}}));
    CHECK_THROWS_AS(Relation(s, {{Value("x"), Value("y")}}), TypeError);
    CHECK_NOTHROW(Relation(s, {{Value("x"), Value(Decimal::from_int(1))}}));
  }

  TEST_CASE("project and distinct_count") {
    Relation r = load_relation("a,b,c\n1,x,p\n2,x,q\n3,y,p\n", "t");
    Relation p = project(r, {"c", "b"});
    CHECK(p.schema().names() == std::vector<std::string>{"c", "b"});
    CHECK(p.size() == 3);
    CHECK(distinct_count(r, "b") == 2);
    CHECK(distinct_count(r, "A") == 3);
    CHECK_THROWS_AS(project(r, {"zz"}), SchemaError);
  }

  TEST_CASE("database add, replace and lookup") {
    Database db;
    db.add("Student", load_relation("a\n1\n", "t"));
    CHECK(db.contains("student"));
    CHECK_THROWS_AS(db.add("STUDENT", Relation()), SchemaError);
    db.replace("student", load_relation("a\n1\n2\n", "t"));
    CHECK(db.at("student").size() == 2);
    CHECK_THROWS_AS(db.at("nope"), ResolutionError);
    CHECK(db.find("nope") == nullptr);
  }
}
