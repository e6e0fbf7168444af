#include "aoi/rules.hpp"

#include <algorithm>

#include "aoi/error.hpp"

namespace aoi {

std::vector<WeightedTuple> t_weights(const GeneralizedRelation &grel) {
  if (grel.empty()) throw EmitError("cannot weight an empty relation");
  std::uint64_t total = 0;
  for (const auto &t : grel.tuples()) total += t.vote;
  std::vector<WeightedTuple> out;
  for (const auto &t : grel.tuples()) {
    out.push_back({t.cells, t.vote, Rational(static_cast<std::int64_t>(t.vote), static_cast<std::int64_t>(total)),
                   std::nullopt, false});
  }
  return out;
}

std::vector<WeightedTuple> d_weights(const ClassifiedRelation &classified, std::string_view target) {
  const ClassEntry &entry = classified.at(target);
  auto out = t_weights(entry.relation);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t across = 0;
    for (const auto &c : classified.classes) {
      if (const auto *t = c.relation.find(out[i].cells)) across += t->vote;
    }
    out[i].d_weight = Rational(static_cast<std::int64_t>(out[i].vote), static_cast<std::int64_t>(across));
    out[i].overlap = entry.overlap.at(i);
  }
  return out;
}

std::string format_weight_fixed(const Rational &weight) { return weight.percent().to_string(); }

std::string format_weight_compact(const Rational &weight) {
  std::string s = format_weight_fixed(weight);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

namespace {

struct Glyphs {
  const char *forall;
  const char *implies;
  const char *conj;
  const char *disj;
  const char *member;
};

constexpr Glyphs kAscii{"forall", "->", "AND", "OR", "in"};
constexpr Glyphs kUnicode{"∀", "→", "∧", "∨", "∈"};

}  // namespace

std::string render_rule(std::string_view head, const std::vector<GeneralizedAttribute> &attributes,
                        const std::vector<WeightedTuple> &tuples, RenderOptions options) {
  const Glyphs &g = options.unicode ? kUnicode : kAscii;
  std::string out = std::string(g.forall) + "(x) " + std::string(head) + "(x) " + g.implies + " ";
  auto weight_of = [&](const WeightedTuple &t) {
    return " [" + format_weight_compact(t.d_weight ? *t.d_weight : t.t_weight) + "%]";
  };

  bool single_all_any = tuples.size() == 1 && std::all_of(tuples[0].cells.begin(), tuples[0].cells.end(), [](const Value &v) {
                          return v.is_text() && v.text() == kAny;
                        });
  if (tuples.empty() || single_all_any) {
    out += "true";
    if (options.form == RuleForm::quantitative && !tuples.empty()) out += weight_of(tuples[0]);
    return out;
  }

  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (i > 0) out += std::string(" ") + g.disj + " ";
    std::string body;
    for (std::size_t a = 0; a < attributes.size(); ++a) {
      const Value &cell = tuples[i].cells[a];
      if (cell.is_text() && cell.text() == kAny) continue;
      if (!body.empty()) body += std::string(" ") + g.conj + " ";
      body += attributes[a].name + "(x) " + g.member + " " + cell.to_string();
    }
    out += "(" + (body.empty() ? std::string("true") : body) + ")";
    if (options.form == RuleForm::quantitative) out += weight_of(tuples[i]);
  }
  return out;
}

std::string render(const GeneralizedRelation &grel, std::string_view head, RenderOptions options) {
  if (grel.empty()) return render_rule(head, grel.attributes(), {}, options);
  return render_rule(head, grel.attributes(), t_weights(grel), options);
}

std::string render(const ClassifiedRelation &classified, std::string_view head, RenderOptions options) {
  return render_rule(head, classified.attributes(), d_weights(classified, head), options);
}

namespace {

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

class RuleReader {
 public:
  explicit RuleReader(std::string text) : s_(std::move(text)) {}

  ParsedRule read() {
    ParsedRule rule;
    expect("forall(x)");
    skip_ws();
    std::size_t open = s_.find("(x)", pos_);
    if (open == std::string::npos) fail("rule head");
    rule.head = trim(s_.substr(pos_, open - pos_));
    pos_ = open + 3;
    expect("->");
    skip_ws();
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      ParsedDisjunct d;
      d.weight = weight();
      rule.disjuncts.push_back(std::move(d));
      end();
      return rule;
    }
    while (true) {
      rule.disjuncts.push_back(disjunct());
      skip_ws();
      if (pos_ >= s_.size()) break;
      expect("OR");
    }
    return rule;
  }

 private:
  ParsedDisjunct disjunct() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '(') fail("'('");
    int depth = 0;
    std::size_t start = pos_ + 1;
    std::size_t i = pos_;
    for (; i < s_.size(); ++i) {
      if (s_[i] == '(') ++depth;
      if (s_[i] == ')' && --depth == 0) break;
    }
    if (i >= s_.size()) fail("')'");
    std::string body = trim(s_.substr(start, i - start));
    pos_ = i + 1;
    ParsedDisjunct d;
    if (body != "true") {
      for (const auto &part : split_top(body, " AND ")) d.predicates.push_back(predicate(part));
    }
    d.weight = weight();
    return d;
  }

  ParsedPredicate predicate(const std::string &text) {
    auto paren = text.find("(x)");
    auto in = text.find(" in ", paren == std::string::npos ? 0 : paren);
    if (paren == std::string::npos || in == std::string::npos) fail("predicate 'Attr(x) in concept'");
    ParsedPredicate p;
    p.attribute = trim(text.substr(0, paren));
    std::string rhs = trim(text.substr(in + 4));
    if (!rhs.empty() && rhs.front() == '{') {
      if (rhs.back() != '}') fail("'}'");
      for (const auto &c : split_top(rhs.substr(1, rhs.size() - 2), ",")) p.concepts.push_back(trim(c));
    } else {
      p.concepts.push_back(rhs);
    }
    return p;
  }

  std::optional<Decimal> weight() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '[') return std::nullopt;
    auto close = s_.find("%]", pos_);
    if (close == std::string::npos) fail("'%]'");
    auto d = Decimal::parse(trim(s_.substr(pos_ + 1, close - pos_ - 1)));
    if (!d) fail("weight");
    pos_ = close + 2;
    return d;
  }

  static std::vector<std::string> split_top(const std::string &text, std::string_view sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c == '{' || c == '(') ++depth;
      if (c == '}' || c == ')') --depth;
      if (depth == 0 && text.compare(i, sep.size(), sep) == 0) {
        parts.push_back(text.substr(start, i - start));
        i += sep.size() - 1;
        start = i + 1;
      }
    }
    parts.push_back(text.substr(start));
    return parts;
  }

  void expect(std::string_view token) {
    skip_ws();
    if (s_.compare(pos_, token.size(), token) != 0) fail("'" + std::string(token) + "'");
    pos_ += token.size();
  }
  void end() {
    skip_ws();
    if (pos_ != s_.size()) fail("end of rule");
  }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\n' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  [[noreturn]] void fail(const std::string &what) const {
    throw EmitError("malformed rule text at offset " + std::to_string(pos_) + ": expected " + what);
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedRule parse_rule(std::string_view text) {
  std::string s(text);
  s = replace_all(s, kUnicode.forall, "forall");
  s = replace_all(s, kUnicode.implies, "->");
  s = replace_all(s, kUnicode.conj, "AND");
  s = replace_all(s, kUnicode.disj, "OR");
  s = replace_all(s, kUnicode.member, "in");
  return RuleReader(std::move(s)).read();
}

Row cells_of(const ParsedDisjunct &disjunct, const std::vector<GeneralizedAttribute> &attributes) {
  Row cells(attributes.size(), Value(std::string(kAny)));
  for (const auto &p : disjunct.predicates) {
    bool found = false;
    for (std::size_t a = 0; a < attributes.size(); ++a) {
      if (iequals(attributes[a].name, p.attribute)) {
        cells[a] = p.concepts.size() == 1 ? Value(p.concepts.front()) : Value(ConceptSet(p.concepts));
        found = true;
      }
    }
    if (!found) throw EmitError("rule mentions unknown attribute '" + p.attribute + "'");
  }
  return cells;
}

}  // namespace aoi
