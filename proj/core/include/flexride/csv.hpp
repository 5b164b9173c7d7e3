#ifndef FLEXRIDE_CSV_HPP
#define FLEXRIDE_CSV_HPP

#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "flexride/errors.hpp"

namespace flexride {

/// Minimal comma-separated reader for the numeric/id tables this project
/// consumes. No quoting rules; fields may not contain commas. Verifies an
/// exact header line and reports 1-based line numbers in errors.
class CsvReader {
 public:
  CsvReader(std::istream& in, const std::string& expected_header,
            const std::string& source_name)
      : in_(in), source_(source_name) {
    std::string header;
    if (!std::getline(in_, header)) {
      throw ParseError(source_ + ": missing header line");
    }
    strip_cr(header);
    if (header != expected_header) {
      throw ParseError(source_ + ":1: expected header '" + expected_header +
                       "', got '" + header + "'");
    }
    line_no_ = 1;
  }

  /// Reads the next non-empty row. Returns false at end of input.
  bool next(std::vector<std::string>& fields, std::size_t& line_no) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      strip_cr(line);
      if (line.empty()) continue;
      fields.clear();
      std::size_t start = 0;
      while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
          fields.push_back(line.substr(start));
          break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
      }
      line_no = line_no_;
      return true;
    }
    return false;
  }

  const std::string& source() const { return source_; }

 private:
  static void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

inline std::int64_t parse_int_field(const std::string& field,
                                    const std::string& source,
                                    std::size_t line_no,
                                    const std::string& column) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source + ":" + std::to_string(line_no) +
                     ": column '" + column + "' is not an integer: '" +
                     field + "'");
  }
}

inline double parse_double_field(const std::string& field,
                                 const std::string& source,
                                 std::size_t line_no,
                                 const std::string& column) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source + ":" + std::to_string(line_no) +
                     ": column '" + column + "' is not a number: '" +
                     field + "'");
  }
}

} // namespace flexride

#endif
