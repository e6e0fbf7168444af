#include "aoi/value.hpp"

#include <algorithm>
#include <cctype>

#include "aoi/error.hpp"

namespace aoi {

ConceptSet::ConceptSet(std::vector<std::string> members) : members_(std::move(members)) {
  if (members_.empty()) throw TypeError("concept set must not be empty");
  auto s = sorted();
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw TypeError("concept set contains a duplicate member");
}

bool ConceptSet::contains(const std::string &concept_name) const {
  return std::find(members_.begin(), members_.end(), concept_name) != members_.end();
}

std::vector<std::string> ConceptSet::sorted() const {
  auto s = members_;
  std::sort(s.begin(), s.end());
  return s;
}

std::string Value::to_string() const {
  if (is_text()) return text();
  if (is_number()) return number().to_string();
  std::string out = "{";
  bool first = true;
  for (const auto &m : set().members()) {
    if (!first) out += ", ";
    out += m;
    first = false;
  }
  return out + "}";
}

namespace {

int rank(const Value &v) { return v.is_number() ? 0 : (v.is_text() ? 1 : 2); }

}  // namespace

int compare_values(const Value &a, const Value &b) {
  int ra = rank(a);
  int rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (a.is_number()) {
    auto c = a.number() <=> b.number();
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a.is_text()) return a.text().compare(b.text()) < 0 ? -1 : (a.text() == b.text() ? 0 : 1);
  auto sa = a.set().sorted();
  auto sb = b.set().sorted();
  if (sa == sb) return 0;
  return sa < sb ? -1 : 1;
}

bool row_less(const Row &a, const Row &b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_values(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

std::string trim(std::string_view text) {
  auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(begin, end - begin + 1));
}

std::string fold(std::string_view text) {
  auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = text.find_last_not_of(" \t\r\n");
  std::string out(text.substr(begin, end - begin + 1));
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

}  // namespace aoi

namespace aoi {

bool CaseInsensitiveLess::operator()(std::string_view a, std::string_view b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](unsigned char x, unsigned char y) {
    return std::tolower(x) < std::tolower(y);
  });
}

}  // namespace aoi
