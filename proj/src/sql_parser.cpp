#include "aoi/sql_parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "aoi/error.hpp"
#include "aoi/value.hpp"

namespace aoi::sql {

namespace {

enum class Tok { identifier, string, number, symbol, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::identifier, std::string(s.substr(start, i - start)), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
    } else if (c == '\'') {
      std::string text;
      ++i;
      while (true) {
        if (i >= s.size()) throw SqlSyntaxError(start, {"closing quote"}, "end of input");
        if (s[i] == '\'') {
          if (i + 1 < s.size() && s[i + 1] == '\'') {
            text += '\'';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        text += s[i++];
      }
      out.push_back({Tok::string, std::move(text), start});
    } else {
      static const char *two[] = {">=", "<=", "<>", "!="};
      std::string sym(1, c);
      for (const char *t : two) {
        if (s.substr(i, 2) == t) sym = t;
      }
      static const std::string single = ",.*()=<>;";
      if (sym.size() == 1 && single.find(c) == std::string::npos) {
        throw SqlSyntaxError(start, {"token"}, std::string("character '") + c + "'");
      }
      i += sym.size();
      out.push_back({Tok::symbol, sym, start});
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

const std::set<std::string> &reserved() {
  static const std::set<std::string> words{
      "select", "distinct", "from",  "where", "and",    "or",    "not",   "group",  "by",     "as",
      "count",  "create",   "table", "join",  "inner",  "left",  "right", "outer",  "cross",  "full",
      "natural", "on",      "using", "order", "having", "limit", "union", "in",     "like",   "between",
      "is",     "null",     "exists", "insert", "update", "delete", "drop", "all",  "offset", "intersect",
      "except"};
  return words;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  bool at_end() const { return peek().kind == Tok::end; }

  Statement statement() {
    if (is_kw("select")) return select();
    if (is_kw("create")) return create();
    for (const char *kw : {"insert", "update", "delete", "drop", "with"}) {
      if (is_kw(kw)) unsupported(to_upper(kw) + " statement");
    }
    fail({"SELECT", "CREATE"});
  }

  /// Consumes an optional `;` and then requires end of statement (or script).
  void finish(bool script) {
    if (is_sym(";")) {
      advance();
      return;
    }
    if (!at_end()) {
      reject_tail();
      fail(script ? std::set<std::string>{";", "end of input"} : std::set<std::string>{";", "end of input"});
    }
  }

 private:
  SelectQuery select() {
    expect_kw("select");
    SelectQuery q;
    if (is_kw("distinct")) {
      advance();
      q.distinct = true;
    } else if (is_kw("all")) {
      unsupported("SELECT ALL");
    }
    q.items.push_back(select_item());
    while (is_sym(",")) {
      advance();
      q.items.push_back(select_item());
    }
    expect_kw("from");
    q.from.push_back(table_ref());
    while (is_sym(",")) {
      advance();
      q.from.push_back(table_ref());
    }
    reject_join();
    if (is_kw("where")) {
      advance();
      q.where.push_back(predicate());
      while (true) {
        if (is_kw("and")) {
          advance();
          q.where.push_back(predicate());
          continue;
        }
        if (is_kw("or")) unsupported("OR");
        break;
      }
    }
    if (is_kw("group")) {
      advance();
      expect_kw("by");
      q.group_by.push_back(column_ref());
      while (is_sym(",")) {
        advance();
        q.group_by.push_back(column_ref());
      }
    }
    reject_tail();
    check(q);
    return q;
  }

  CreateTable create() {
    expect_kw("create");
    expect_kw("table");
    CreateTable c;
    c.table = identifier("table name");
    expect_sym("(");
    while (true) {
      ColumnDef col;
      col.name = identifier("column name");
      col.type = lower(identifier("column type"));
      if (is_sym("(")) {
        advance();
        col.type += "(" + number_text();
        while (is_sym(",")) {
          advance();
          col.type += "," + number_text();
        }
        expect_sym(")");
        col.type += ")";
      }
      c.columns.push_back(std::move(col));
      if (is_sym(",")) {
        advance();
        continue;
      }
      break;
    }
    expect_sym(")");
    return c;
  }

  SelectItem select_item() {
    SelectItem item;
    if (is_sym("*")) {
      advance();
      item.kind = SelectItem::Kind::star;
      return item;
    }
    if (is_kw("count")) {
      advance();
      expect_sym("(");
      if (is_sym("*")) {
        advance();
        item.kind = SelectItem::Kind::count_star;
      } else {
        if (is_kw("distinct")) unsupported("COUNT(DISTINCT ...)");
        item.kind = SelectItem::Kind::count_column;
        item.column = column_ref();
      }
      expect_sym(")");
    } else if (is_kw("distinct")) {
      unsupported("DISTINCT after the first select item");
    } else if (is_sym("(")) {
      // `select distinct(c.studyprog), ...`: the parentheses only group the column.
      advance();
      if (is_kw("select")) unsupported("subquery");
      item.kind = SelectItem::Kind::column;
      item.column = column_ref();
      expect_sym(")");
    } else if (peek().kind == Tok::identifier && !is_reserved(peek()) && peek(1).text == "(") {
      unsupported("function " + to_upper(peek().text));
    } else if (peek().kind == Tok::identifier && !is_reserved(peek()) && peek(1).text == "." && peek(2).text == "*") {
      item.kind = SelectItem::Kind::star;
      item.star_qualifier = advance().text;
      advance();
      advance();
      return item;
    } else {
      item.kind = SelectItem::Kind::column;
      item.column = column_ref();
    }
    if (is_kw("as")) {
      advance();
      item.alias = identifier("alias");
    } else if (peek().kind == Tok::identifier && !is_reserved(peek())) {
      item.alias = advance().text;
    }
    return item;
  }

  TableRef table_ref() {
    if (is_sym("(")) {
      if (peek(1).kind == Tok::identifier && lower(peek(1).text) == "select") unsupported("subquery");
      unsupported("parenthesized FROM item");
    }
    TableRef t;
    t.table = identifier("table name");
    if (is_kw("as")) {
      advance();
      t.alias = identifier("table alias");
    } else if (peek().kind == Tok::identifier && !is_reserved(peek())) {
      t.alias = advance().text;
    }
    return t;
  }

  Predicate predicate() {
    if (is_kw("not")) unsupported("NOT");
    if (is_kw("exists")) unsupported("EXISTS");
    if (is_sym("(")) {
      if (peek(1).kind == Tok::identifier && lower(peek(1).text) == "select") unsupported("subquery");
      unsupported("parenthesized predicate");
    }
    Predicate p;
    p.lhs = operand();
    if (is_kw("in") || is_kw("like") || is_kw("between") || is_kw("is") || is_kw("not")) {
      unsupported(to_upper(peek().text));
    }
    const Token &op = peek();
    if (op.kind == Tok::symbol && (op.text == "<" || op.text == ">" || op.text == "<>" || op.text == "!=")) {
      unsupported("operator " + op.text);
    }
    if (is_sym("=")) {
      p.op = CompareOp::eq;
    } else if (is_sym(">=")) {
      p.op = CompareOp::ge;
    } else if (is_sym("<=")) {
      p.op = CompareOp::le;
    } else {
      fail({"=", ">=", "<="});
    }
    advance();
    if (is_sym("(") && peek(1).kind == Tok::identifier && lower(peek(1).text) == "select") unsupported("subquery");
    p.rhs = operand();
    return p;
  }

  Operand operand() {
    const Token &t = peek();
    if (t.kind == Tok::string) {
      advance();
      return StringLiteral{t.text};
    }
    if (t.kind == Tok::number) {
      auto d = Decimal::parse(t.text);
      if (!d) throw SqlSyntaxError(t.offset, {"number"}, "'" + t.text + "'");
      advance();
      return *d;
    }
    if (t.kind == Tok::identifier && !is_reserved(t)) return column_ref();
    fail({"column", "string literal", "number"});
  }

  ColumnRef column_ref() {
    ColumnRef ref;
    std::string first = identifier("column");
    if (is_sym(".")) {
      advance();
      ref.qualifier = std::move(first);
      ref.column = identifier("column");
    } else {
      ref.column = std::move(first);
    }
    return ref;
  }

  void reject_join() {
    for (const char *kw : {"join", "inner", "left", "right", "cross", "full", "natural"}) {
      if (is_kw(kw)) unsupported("JOIN");
    }
  }

  void reject_tail() {
    reject_join();
    if (is_kw("order")) unsupported("ORDER BY");
    for (const char *kw : {"having", "limit", "union", "intersect", "except", "offset"}) {
      if (is_kw(kw)) unsupported(to_upper(kw));
    }
    if (is_kw("or")) unsupported("OR");
  }

  /// Structural rules that need the whole statement.
  void check(const SelectQuery &q) const {
    std::vector<std::string> aliases;
    for (const auto &t : q.from) {
      std::string a = fold(t.effective_alias());
      if (std::find(aliases.begin(), aliases.end(), a) != aliases.end()) {
        throw ResolutionError("duplicate table alias '" + t.effective_alias() + "'");
      }
      aliases.push_back(a);
    }
    auto known = [&](const std::string &qualifier) {
      return qualifier.empty() || std::find(aliases.begin(), aliases.end(), fold(qualifier)) != aliases.end();
    };
    auto check_ref = [&](const ColumnRef &r) {
      if (!known(r.qualifier)) throw ResolutionError("unknown table alias '" + r.qualifier + "'");
    };
    bool has_count = false;
    bool has_plain = false;
    for (const auto &item : q.items) {
      if (item.kind == SelectItem::Kind::count_star || item.kind == SelectItem::Kind::count_column) has_count = true;
      if (item.kind == SelectItem::Kind::column || item.kind == SelectItem::Kind::star) has_plain = true;
      if (item.kind == SelectItem::Kind::column || item.kind == SelectItem::Kind::count_column) check_ref(item.column);
      if (item.kind == SelectItem::Kind::star && !known(item.star_qualifier)) {
        throw ResolutionError("unknown table alias '" + item.star_qualifier + "'");
      }
    }
    for (const auto &p : q.where) {
      for (const Operand *o : {&p.lhs, &p.rhs}) {
        if (const auto *r = std::get_if<ColumnRef>(o)) check_ref(*r);
      }
    }
    for (const auto &g : q.group_by) check_ref(g);
    if (has_count && has_plain && q.group_by.empty()) {
      throw ResolutionError("COUNT mixed with plain columns requires GROUP BY");
    }
  }

  // Token helpers.
  const Token &peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token &advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  static bool is_reserved(const Token &t) { return t.kind == Tok::identifier && reserved().count(lower(t.text)) != 0; }
  bool is_kw(std::string_view kw) const { return peek().kind == Tok::identifier && lower(peek().text) == kw; }
  bool is_sym(std::string_view sym) const { return peek().kind == Tok::symbol && peek().text == sym; }

  void expect_kw(std::string_view kw) {
    if (!is_kw(kw)) fail({to_upper(std::string(kw))});
    advance();
  }
  void expect_sym(std::string_view sym) {
    if (!is_sym(sym)) fail({std::string(sym)});
    advance();
  }
  std::string identifier(const std::string &what) {
    if (peek().kind != Tok::identifier || is_reserved(peek())) {
      if (is_kw("join") || is_kw("inner") || is_kw("left") || is_kw("right")) unsupported("JOIN");
      fail({what});
    }
    return advance().text;
  }
  std::string number_text() {
    if (peek().kind != Tok::number) fail({"number"});
    return advance().text;
  }

  static std::string to_upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
  }

  [[noreturn]] void unsupported(const std::string &construct) const {
    throw UnsupportedFeatureError(construct, peek().offset);
  }
  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token &t = peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw SqlSyntaxError(t.offset, std::move(expected), found);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string quote(const std::string &text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::string ref_sql(const ColumnRef &r) { return r.qualifier.empty() ? r.column : r.qualifier + "." + r.column; }

std::string operand_sql(const Operand &o) {
  if (const auto *r = std::get_if<ColumnRef>(&o)) return ref_sql(*r);
  if (const auto *s = std::get_if<StringLiteral>(&o)) return quote(s->text);
  return std::get<Decimal>(o).to_string();
}

}  // namespace

Statement parse_statement(std::string_view text) {
  Parser p(text);
  Statement s = p.statement();
  p.finish(false);
  if (!p.at_end()) throw SqlSyntaxError(text.size(), {"end of input"}, "another statement");
  return s;
}

SelectQuery parse_query(std::string_view text) {
  Statement s = parse_statement(text);
  if (auto *q = std::get_if<SelectQuery>(&s)) return std::move(*q);
  throw SqlSyntaxError(0, {"SELECT"}, "CREATE");
}

std::vector<Statement> parse_script(std::string_view text) {
  Parser p(text);
  std::vector<Statement> out;
  while (!p.at_end()) {
    out.push_back(p.statement());
    p.finish(true);
  }
  return out;
}

std::string to_sql(const SelectQuery &q) {
  std::string out = "select ";
  if (q.distinct) out += "distinct ";
  for (std::size_t i = 0; i < q.items.size(); ++i) {
    if (i > 0) out += ", ";
    const auto &item = q.items[i];
    switch (item.kind) {
      case SelectItem::Kind::column:
        out += ref_sql(item.column);
        break;
      case SelectItem::Kind::star:
        out += item.star_qualifier.empty() ? "*" : item.star_qualifier + ".*";
        break;
      case SelectItem::Kind::count_star:
        out += "count(*)";
        break;
      case SelectItem::Kind::count_column:
        out += "count(" + ref_sql(item.column) + ")";
        break;
    }
    if (item.alias) out += " as " + *item.alias;
  }
  out += "\nfrom ";
  for (std::size_t i = 0; i < q.from.size(); ++i) {
    if (i > 0) out += ", ";
    out += q.from[i].table;
    if (!q.from[i].alias.empty()) out += " " + q.from[i].alias;
  }
  if (!q.where.empty()) {
    out += "\nwhere ";
    for (std::size_t i = 0; i < q.where.size(); ++i) {
      if (i > 0) out += " and ";
      const auto &p = q.where[i];
      const char *op = p.op == CompareOp::eq ? "=" : (p.op == CompareOp::ge ? ">=" : "<=");
      out += operand_sql(p.lhs) + op + operand_sql(p.rhs);
    }
  }
  if (!q.group_by.empty()) {
    out += "\ngroup by ";
    for (std::size_t i = 0; i < q.group_by.size(); ++i) {
      if (i > 0) out += ", ";
      out += ref_sql(q.group_by[i]);
    }
  }
  return out + ";\n";
}

std::string to_sql(const CreateTable &c) {
  std::string out = "create table " + c.table + " (";
  for (std::size_t i = 0; i < c.columns.size(); ++i) {
    if (i > 0) out += ", ";
    out += c.columns[i].name + " " + c.columns[i].type;
  }
  return out + ");\n";
}

std::string to_sql(const Statement &s) {
  return std::visit([](const auto &x) { return to_sql(x); }, s);
}

}  // namespace aoi::sql
