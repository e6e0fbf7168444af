#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "aoi/error.hpp"
#include "aoi/rules.hpp"
#include "aoi/validate.hpp"
#include "support.hpp"

using namespace aoi;

namespace {

constexpr int kTrials = 500;
constexpr std::size_t kMaxRows = 20;

LearningTask scoped(std::string concept_name, LearningMode mode = LearningMode::characteristic) {
  LearningTask t = test::student_task(std::move(concept_name), mode);
  t.in_scope = std::vector<std::string>{"Major", "Birthplace", "GPA"};
  return t;
}

std::uint64_t votes(const GeneralizedRelation &g) {
  std::uint64_t n = 0;
  for (const auto &t : g.tuples()) n += t.vote;
  return n;
}

std::vector<std::pair<std::string, std::string>> level_list(const GeneralizedRelation &g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &a : g.attributes()) out.emplace_back(a.name, a.level);
  return out;
}

/// Runs `check` on kTrials random fact tables drawn from one fixed seed.
template <typename F>
void for_random_tables(std::uint32_t seed, F check) {
  std::mt19937 rng(seed);
  for (int i = 0; i < kTrials; ++i) {
    Relation facts = test::random_students(rng, kMaxRows);
    CAPTURE(i);
    check(test::with_facts(std::move(facts)));
  }
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("votes are conserved through every step") {
    int nonempty = 0;
    for_random_tables(11, [&](const Dataset &d) {
      auto trace = trace_characteristic(d.db, d.trees, scoped("graduate"), "graduate", true);
      const std::uint64_t n = trace.target.size();
      CHECK(votes(trace.ascended) == n);
      CHECK(votes(trace.after_attribute_threshold) == n);
      CHECK(votes(trace.after_relation_threshold) == n);
      CHECK(votes(trace.result()) == n);
      CHECK(trace.result().source_count() == n);
      if (n > 0) ++nonempty;
    });
    CHECK(nonempty > kTrials / 2);
  }

  TEST_CASE("t-weights sum to exactly one") {
    for_random_tables(12, [](const Dataset &d) {
      auto g = learn_characteristic(d.db, d.trees, scoped("undergraduate"));
      if (g.empty()) {
        CHECK_THROWS_AS(t_weights(g), EmitError);
        return;
      }
      Rational sum(0, 1);
      for (const auto &w : t_weights(g)) sum = sum + w.t_weight;
      CHECK(sum == Rational(1, 1));
    });
  }

  TEST_CASE("d-weights of a shared tuple sum to one across classes") {
    int checked = 0;
    for_random_tables(13, [&](const Dataset &d) {
      ClassifiedRelation c;
      try {
        c = learn_classification(d.db, d.trees, scoped("graduate", LearningMode::classification));
      } catch (const TaskError &) {
        return;  // a class with no students
      }
      std::map<std::vector<std::string>, Rational> sums;
      for (const auto &entry : c.classes) {
        for (const auto &w : d_weights(c, entry.concept_name)) {
          std::vector<std::string> key;
          for (const auto &cell : w.cells) key.push_back(cell.to_string());
          auto [it, fresh] = sums.try_emplace(key, Rational(0, 1));
          it->second = it->second + *w.d_weight;
        }
      }
      for (const auto &[key, sum] : sums) CHECK(sum == Rational(1, 1));
      ++checked;
    });
    CHECK(checked > 0);
  }

  TEST_CASE("ascension agrees with a naive group count") {
    for_random_tables(14, [](const Dataset &d) {
      auto trace = trace_characteristic(d.db, d.trees, scoped("graduate"), "graduate", false);
      auto expected = test::group_count(trace.removed, trace.trees, level_list(trace.ascended));
      CHECK(test::as_map(trace.ascended) == expected);
    });
  }

  TEST_CASE("ascension never increases distinct values") {
    for_random_tables(15, [](const Dataset &d) {
      auto trace = trace_characteristic(d.db, d.trees, scoped("graduate"), "graduate", false);
      GeneralizedRelation g = trace.ascended;
      for (std::size_t a = 0; a < g.attributes().size(); ++a) {
        for (int step = 0; step < 4; ++step) {
          GeneralizedRelation up = ascend_attribute(g, trace.trees, a);
          for (std::size_t b = 0; b < g.attributes().size(); ++b) CHECK(up.distinct_count(b) <= g.distinct_count(b));
          CHECK(up.size() <= g.size());
          CHECK(votes(up) == votes(g));
          g = std::move(up);
        }
      }
    });
  }

  TEST_CASE("stepwise ascension equals ascending straight to the level") {
    for_random_tables(16, [](const Dataset &d) {
      auto trace = trace_characteristic(d.db, d.trees, scoped("graduate"), "graduate", false);
      const std::size_t bp = trace.ascended.index_of("Birthplace");
      GeneralizedRelation stepped = ascend_attribute(trace.ascended, trace.trees, bp);
      LevelMap direct_levels = trace.levels;
      direct_levels["Birthplace"] = "country";
      CHECK(stepped == ascend(trace.removed, trace.trees, direct_levels));
    });
  }

  TEST_CASE("strict simplification keeps the covered tuples") {
    for_random_tables(17, [](const Dataset &d) {
      auto g = trace_characteristic(d.db, d.trees, scoped("graduate"), "graduate", false).after_relation_threshold;
      auto trees = with_identity_trees(d.db.at("student"), d.trees);
      auto strict = simplify(g, trees, {.absorb_contained = false});
      CHECK(test::extension(strict, trees) == test::extension(g, trees));
      CHECK(votes(strict) == votes(g));
      CHECK(strict.size() <= g.size());
    });
  }

  TEST_CASE("default simplification only widens the covered tuples") {
    for_random_tables(18, [](const Dataset &d) {
      auto g = trace_characteristic(d.db, d.trees, scoped("graduate"), "graduate", false).after_relation_threshold;
      auto trees = with_identity_trees(d.db.at("student"), d.trees);
      auto before = test::extension(g, trees);
      auto after = test::extension(simplify(g, trees), trees);
      CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    });
  }

  TEST_CASE("generated SQL reproduces every stage") {
    int checked = 0;
    for_random_tables(19, [&](const Dataset &d) {
      const LearningTask task = scoped("graduate");
      std::vector<StageCheck> checks;
      try {
        checks = validate_stages(d, task);
      } catch (const TaskError &) {
        return;  // classification stage needs both classes
      }
      for (const auto &c : checks) {
        CAPTURE(sql::to_string(c.stage));
        CAPTURE(c.diff);
        CHECK(c.match);
      }
      ++checked;
    });
    CHECK(checked > kTrials / 2);
  }
}
