#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aoi::csv {

/// RFC-4180 reader: comma separator, double-quote escaping, CRLF or LF line ends.
/// A trailing line break does not produce an extra record. Throws LoadError on an
/// unterminated quoted field.
std::vector<std::vector<std::string>> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);

std::string read_file(const std::string &path);

}  // namespace aoi::csv
