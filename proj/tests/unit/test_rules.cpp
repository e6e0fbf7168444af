#include <doctest.h>

#include <set>

#include "aoi/error.hpp"
#include "aoi/rules.hpp"
#include "support.hpp"

using namespace aoi;

namespace {

const Database &db() { return test::sample().db; }
const HierarchySet &trees() { return test::sample().trees; }

/// Order-free, case-free view of a rule: one entry per disjunct.
using Shape = std::multiset<std::pair<std::set<std::pair<std::string, std::set<std::string>>>, std::string>>;

Shape shape(const ParsedRule &r) {
  Shape out;
  for (const auto &d : r.disjuncts) {
    std::set<std::pair<std::string, std::set<std::string>>> preds;
    for (const auto &p : d.predicates) {
      std::set<std::string> cs;
      for (const auto &c : p.concepts) cs.insert(fold(c));
      preds.emplace(fold(p.attribute), cs);
    }
    out.emplace(preds, d.weight ? d.weight->to_string() : "-");
  }
  return out;
}

GeneralizedRelation graduate_rule_relation() {
  return learn_characteristic(db(), trees(), test::student_task("graduate"));
}

ClassifiedRelation classified() {
  return learn_classification(db(), trees(), test::student_task("graduate", LearningMode::classification));
}

const RenderOptions kQuant{RuleForm::quantitative, false};

}  // namespace

TEST_SUITE("rules") {
  TEST_CASE("weight formatting") {
    CHECK(format_weight_compact(Rational(1, 2)) == "50");
    CHECK(format_weight_compact(Rational(1, 6)) == "16.67");
    CHECK(format_weight_compact(Rational(1, 3)) == "33.33");
    CHECK(format_weight_compact(Rational(1, 1)) == "100");
    CHECK(format_weight_compact(Rational(1, 8)) == "12.5");
    CHECK(format_weight_fixed(Rational(1, 2)) == "50.00");
    CHECK(format_weight_fixed(Rational(2, 3)) == "66.67");
    CHECK(format_weight_fixed(Rational(1, 8)) == "12.50");
    CHECK(Rational(1, 6).percent_hundredths() == 1667);
    CHECK(Rational(1, 200).percent_hundredths() == 50);
    CHECK(Rational(1, 3).percent_at_least(*Decimal::parse("33.33")));
    CHECK_FALSE(Rational(1, 3).percent_at_least(*Decimal::parse("33.34")));
  }

  TEST_CASE("t-weights of the graduate rule") {
    auto w = t_weights(graduate_rule_relation());
    REQUIRE(w.size() == 2);
    for (const auto &t : w) CHECK(t.t_weight == Rational(1, 2));
    CHECK_THROWS_AS(t_weights(GeneralizedRelation({{"A", "l"}}, {}, 0)), EmitError);
  }

  TEST_CASE("d-weights of the classification") {
    ClassifiedRelation c = classified();
    auto g = d_weights(c, "graduate");
    auto u = d_weights(c, "undergraduate");
    std::vector<std::pair<std::string, std::string>> gw;
    for (const auto &t : g) gw.emplace_back(format_weight_fixed(t.t_weight), format_weight_fixed(*t.d_weight));
    std::sort(gw.begin(), gw.end());
    CHECK(gw == std::vector<std::pair<std::string, std::string>>{
                    {"16.67", "50.00"}, {"33.33", "50.00"}, {"50.00", "100.00"}});
    std::vector<std::pair<std::string, std::string>> uw;
    for (const auto &t : u) uw.emplace_back(format_weight_fixed(t.t_weight), format_weight_fixed(*t.d_weight));
    std::sort(uw.begin(), uw.end());
    CHECK(uw == std::vector<std::pair<std::string, std::string>>{{"16.67", "100.00"},
                                                                 {"16.67", "100.00"},
                                                                 {"16.67", "100.00"},
                                                                 {"16.67", "50.00"},
                                                                 {"33.33", "50.00"}});
    CHECK_THROWS_AS(d_weights(c, "postdoc"), TaskError);
  }

  TEST_CASE("graduate characteristic rule, qualitative and quantitative") {
    GeneralizedRelation g = graduate_rule_relation();
    CHECK(render(g, "graduate") ==
          "forall(x) graduate(x) -> (Birthplace(x) in Canada AND GPA(x) in Excellent) OR "
          "(Major(x) in Science AND Birthplace(x) in Foreign AND GPA(x) in Good)");
    std::string quant = render(g, "graduate", kQuant);
    CHECK(quant.find("[50%]") != std::string::npos);

    ParsedRule expected = parse_rule(
        "∀(x) graduate(x) → (Birthplace(x) ∈ Canada ∧ GPA(x) ∈ excellent) [50%] ∨ "
        "(Major(x) ∈ science ∧ Birthplace(x) ∈ Foreign ∧ GPA(x) ∈ good) [50%]");
    CHECK(shape(parse_rule(quant)) == shape(expected));
    CHECK(parse_rule(quant).head == "graduate");
  }

  TEST_CASE("undergraduate characteristic rule") {
    auto t = test::student_task("undergraduate");
    t.levels["Birthplace"] = "country";
    std::string r = render(learn_characteristic(db(), trees(), t), "undergraduate", kQuant);
    CHECK(r ==
          "forall(x) undergraduate(x) -> (Birthplace(x) in Canada AND GPA(x) in {Average, Good, Excellent}) [100%]");
    ParsedRule expected = parse_rule(
        "∀(x) undergraduate(x) → (Birthplace(x) ∈ Canada ∧ GPA(x) ∈ {Average, Good, Excellent}) [100%]");
    CHECK(shape(parse_rule(r)) == shape(expected));
  }

  TEST_CASE("classification rules use d-weights") {
    ClassifiedRelation c = classified();
    ParsedRule graduate = parse_rule(render(c, "graduate", kQuant));
    CHECK(shape(graduate) ==
          shape(parse_rule("∀(x) graduate(x) → "
                           "(Major(x) ∈ Art ∧ Birthplace(x) ∈ Canada ∧ GPA(x) ∈ Excellent) [50%] ∨ "
                           "(Major(x) ∈ science ∧ Birthplace(x) ∈ Canada ∧ GPA(x) ∈ Excellent) [50%] ∨ "
                           "(Major(x) ∈ science ∧ Birthplace(x) ∈ Foreign ∧ GPA(x) ∈ Good) [100%]")));
    // The last disjunct follows the generalized table: Canada and Average.
    ParsedRule undergraduate = parse_rule(render(c, "undergraduate", kQuant));
    CHECK(shape(undergraduate) ==
          shape(parse_rule("∀(x) undergraduate(x) → "
                           "(Major(x) ∈ Art ∧ Birthplace(x) ∈ Canada ∧ GPA(x) ∈ Average) [100%] ∨ "
                           "(Major(x) ∈ Art ∧ Birthplace(x) ∈ Canada ∧ GPA(x) ∈ Good) [100%] ∨ "
                           "(Major(x) ∈ Art ∧ Birthplace(x) ∈ Canada ∧ GPA(x) ∈ Excellent) [50%] ∨ "
                           "(Major(x) ∈ science ∧ Birthplace(x) ∈ Canada ∧ GPA(x) ∈ Excellent) [50%] ∨ "
                           "(Major(x) ∈ science ∧ Birthplace(x) ∈ Canada ∧ GPA(x) ∈ Average) [100%]")));
  }

  TEST_CASE("unicode rendering") {
    std::string r = render(graduate_rule_relation(), "graduate", {RuleForm::qualitative, true});
    CHECK(r.rfind("∀(x) graduate(x) → (Birthplace(x) ∈ Canada ∧ GPA(x) ∈ Excellent) ∨ ", 0) == 0);
  }

  TEST_CASE("all-ANY tuples render as true") {
    GeneralizedRelation g({{"Major", "ANY"}, {"GPA", "ANY"}}, {{{Value("ANY"), Value("ANY")}, 6}}, 6);
    CHECK(render(g, "graduate") == "forall(x) graduate(x) -> true");
    CHECK(render(g, "graduate", kQuant) == "forall(x) graduate(x) -> true [100%]");
    GeneralizedRelation two({{"Major", "studyprog"}, {"GPA", "ANY"}},
                            {{{Value("ANY"), Value("ANY")}, 1}, {{Value("Art"), Value("ANY")}, 1}}, 2);
    CHECK(render(two, "h") == "forall(x) h(x) -> (true) OR (Major(x) in Art)");
  }

  TEST_CASE("render and parse agree on cells") {
    GeneralizedRelation g = graduate_rule_relation();
    ParsedRule p = parse_rule(render(g, "graduate", kQuant));
    REQUIRE(p.disjuncts.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(cells_of(p.disjuncts[i], g.attributes()) == g.tuples()[i].cells);
      CHECK(*p.disjuncts[i].weight == Decimal::from_int(50));
    }
  }

  TEST_CASE("malformed rule text") {
    CHECK_THROWS_AS(parse_rule(""), EmitError);
    CHECK_THROWS_AS(parse_rule("graduate(x) -> (A(x) in b)"), EmitError);
    CHECK_THROWS_AS(parse_rule("forall(x) graduate(x) -> (A(x) in b"), EmitError);
    CHECK_THROWS_AS(parse_rule("forall(x) graduate(x) -> (A(x) b)"), EmitError);
    CHECK_THROWS_AS(parse_rule("forall(x) graduate(x) -> (A(x) in b) [x%]"), EmitError);
  }
}
