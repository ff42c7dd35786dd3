#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eigenpro::csv {

struct Row {
  std::vector<std::string> fields;
  long line = 0;  // 1-based line where the record starts
};

/// RFC 4180 records: quoted fields may contain the delimiter, doubled quotes
/// and line breaks. Blank lines are skipped. Throws DataError naming the line.
std::vector<Row> parse(std::string_view text, char delimiter = ',');

/// Quotes a field when it contains the delimiter, a quote, or a line break.
std::string escape(std::string_view field, char delimiter = ',');

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Strict full-field number parse; throws DataError mentioning `line`.
double parse_double(std::string_view text, long line);

}  // namespace eigenpro::csv
