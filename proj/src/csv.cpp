#include "rvi/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "rvi/errors.hpp"

namespace rvi::csv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_number(std::string_view field, double& out) {
  if (field.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size() &&
         std::isfinite(out);
}

}  // namespace

ols::Dataset read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw data_error("csv: empty input");

  std::vector<std::string> names;
  for (const auto f : split_fields(line)) {
    if (f.empty()) throw data_error("csv: empty header field");
    names.emplace_back(f);
  }

  std::vector<std::vector<double>> rows;
  std::size_t dropped = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != names.size()) {
      throw data_error("csv: line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(names.size()));
    }
    std::vector<double> row(fields.size());
    bool missing = false;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!parse_number(fields[j], row[j])) {
        missing = true;
        break;
      }
    }
    if (missing) {
      ++dropped;
      continue;
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) {
    throw data_error("csv: no complete data rows (" + std::to_string(dropped) +
                     " dropped)");
  }
  return ols::Dataset::from_rows(std::move(names), rows, dropped);
}

ols::Dataset read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open file: " + path);
  return read(in);
}

}  // namespace rvi::csv
