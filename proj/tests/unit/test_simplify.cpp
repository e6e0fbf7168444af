#include <doctest.h>

#include "aoi/induction.hpp"
#include "support.hpp"

using namespace aoi;

namespace {

const HierarchySet &trees() { return test::sample().trees; }

GeneralizedRelation rel(std::vector<std::vector<std::string>> rows, std::vector<std::uint64_t> votes) {
  std::vector<GeneralizedTuple> tuples;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row cells(rows[i].begin(), rows[i].end());
    tuples.push_back({cells, votes[i]});
    total += votes[i];
  }
  return GeneralizedRelation({{"Major", "studyprog"}, {"Birthplace", "country"}, {"GPA", "range"}}, tuples, total);
}

GeneralizedRelation table_xv() {
  return rel({{"Science", "Canada", "Excellent"},
              {"Art", "Canada", "Average"},
              {"Science", "Canada", "Average"},
              {"Art", "Canada", "Good"},
              {"Art", "Canada", "Excellent"}},
             {2, 1, 1, 1, 1});
}

}  // namespace

TEST_SUITE("simplify") {
  TEST_CASE("a complete sibling group is promoted to its parent") {
    GeneralizedRelation g = rel({{"Art", "Canada", "Excellent"}, {"Science", "Canada", "Excellent"}}, {1, 2});
    GeneralizedRelation s = simplify(g, trees());
    CHECK(test::lines(s) == std::vector<test::Line>{{{"ANY", "Canada", "Excellent"}, 3}});
  }

  TEST_CASE("an incomplete group stays a concept set") {
    GeneralizedRelation g = rel({{"Art", "Canada", "Good"}, {"Art", "Canada", "Excellent"}}, {1, 1});
    GeneralizedRelation s = simplify(g, trees());
    REQUIRE(s.size() == 1);
    const Value &gpa = s.tuples()[0].cells[2];
    REQUIRE(gpa.is_set());
    CHECK(gpa.to_string() == "{Good, Excellent}");
    CHECK(s.tuples()[0].vote == 2);
  }

  TEST_CASE("tuples differing in two attributes are left alone") {
    GeneralizedRelation g = rel({{"Art", "Canada", "Good"}, {"Science", "Foreign", "Good"}}, {1, 1});
    CHECK(simplify(g, trees()) == g);
    CHECK(simplify(g, trees(), {false}) == g);
  }

  TEST_CASE("graduate relation simplifies to two tuples") {
    GeneralizedRelation g =
        rel({{"Art", "Canada", "Excellent"}, {"Science", "Canada", "Excellent"}, {"Science", "Foreign", "Good"}},
            {1, 2, 3});
    GeneralizedRelation s = simplify(g, trees());
    CHECK(test::lines(s) == test::sorted({{{"ANY", "Canada", "Excellent"}, 3}, {{"Science", "Foreign", "Good"}, 3}}));
    // Nothing is absorbed here, so the covered tuples are unchanged.
    CHECK(test::extension(s, trees()) == test::extension(g, trees()));
  }

  TEST_CASE("default simplification absorbs contained cells") {
    GeneralizedRelation s = simplify(table_xv(), trees());
    REQUIRE(s.size() == 1);
    CHECK(s.tuples()[0].cells[0] == Value("ANY"));
    CHECK(s.tuples()[0].cells[2].to_string() == "{Average, Good, Excellent}");
    CHECK(s.tuples()[0].vote == 6);
    // Absorption can only widen what the relation covers.
    auto before = test::extension(table_xv(), trees());
    auto after = test::extension(s, trees());
    CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    CHECK(after.size() > before.size());
  }

  TEST_CASE("strict simplification preserves the covered tuples") {
    GeneralizedRelation s = simplify(table_xv(), trees(), {false});
    CHECK(test::lines(s) == test::sorted({{{"Art", "Canada", "{Average, Good, Excellent}"}, 3},
                                          {{"Science", "Canada", "{Average, Excellent}"}, 3}}));
    CHECK(test::extension(s, trees()) == test::extension(table_xv(), trees()));
  }

  TEST_CASE("simplification is idempotent and conserves votes") {
    for (bool absorb : {true, false}) {
      GeneralizedRelation once = simplify(table_xv(), trees(), {absorb});
      CHECK(simplify(once, trees(), {absorb}) == once);
      CHECK(once.source_count() == 6);
    }
  }

  TEST_CASE("cover lists the concepts a cell stands for") {
    const ConceptTree &gpa = trees().at("GPA");
    CHECK(cover(gpa, Value("Good"), 0) == std::vector<std::string>{"Good"});
    CHECK(cover(gpa, Value("ANY"), 0) == std::vector<std::string>{"Average", "Excellent", "Good", "Poor"});
    CHECK(cover(gpa, Value(ConceptSet({"Good", "Average"})), 0) == std::vector<std::string>{"Average", "Good"});
    const ConceptTree &bp = trees().at("Birthplace");
    CHECK(cover(bp, Value("Canada"), 1) == std::vector<std::string>{"Alberta", "British Columbia", "Ontario"});
  }

  TEST_CASE("a single tuple and an empty relation are fixpoints") {
    GeneralizedRelation one = rel({{"Art", "Canada", "Good"}}, {4});
    CHECK(simplify(one, trees()) == one);
    GeneralizedRelation none({{"Major", "studyprog"}}, {}, 0);
    CHECK(simplify(none, trees()).empty());
  }
}
