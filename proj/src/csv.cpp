#include "eigenpro/csv.hpp"

#include <charconv>
#include <cmath>

#include "eigenpro/error.hpp"

namespace eigenpro::csv {

std::vector<Row> parse(std::string_view text, char delimiter) {
  if (delimiter == '"' || delimiter == '\n' || delimiter == '\r')
    throw InvalidArgument("invalid CSV delimiter");
  std::vector<Row> rows;
  Row current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes an empty line from one empty field
  bool quoted_field = false;
  long line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    quoted_field = false;
  };
  auto end_record = [&] {
    if (field_started || !current.fields.empty()) {
      end_field();
      rows.push_back(std::move(current));
    }
    current = Row{};
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '\r') continue;
    if (c == '\n') {
      end_record();
      ++line;
      current.line = line;
      continue;
    }
    if (!field_started) {
      field_started = true;
      current.line = line;
    }
    if (c == delimiter) {
      end_field();
    } else if (c == '"') {
      if (!field.empty() || quoted_field)
        throw DataError("line " + std::to_string(line) + ": unexpected quote inside a field");
      in_quotes = true;
      quoted_field = true;
    } else {
      if (quoted_field)
        throw DataError("line " + std::to_string(line) + ": text after a closing quote");
      field.push_back(c);
    }
  }
  if (in_quotes) throw DataError("line " + std::to_string(line) + ": unterminated quoted field");
  end_record();
  return rows;
}

std::string escape(std::string_view field, char delimiter) {
  const bool needs_quotes = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
                            std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text, long line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw DataError("line " + std::to_string(line) + ": cannot parse '" + std::string(text) +
                    "' as a number");
  if (!std::isfinite(value))
    throw DataError("line " + std::to_string(line) + ": non-finite value '" + std::string(text) +
                    "'");
  return value;
}

}  // namespace eigenpro::csv
