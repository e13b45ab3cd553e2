#pragma once

// Minimal RFC 4180 reader shared by the CSV loaders.

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "galois/errors.hpp"

namespace galois::csv {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

inline std::vector<std::string> split(const std::string& text, std::size_t line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(line, "unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// Reads a headed table and maps `columns` to positions in each row. Blank
/// lines are skipped. Returns no rows for an empty stream.
class Table {
 public:
  Table(std::istream& in, const std::vector<std::string>& columns) {
    std::string text;
    std::size_t line = 0;
    bool have_header = false;
    while (std::getline(in, text)) {
      ++line;
      if (line == 1 && text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
      if (trim(text).empty()) continue;
      auto fields = split(text, line);
      for (auto& f : fields) f = trim(f);
      if (!have_header) {
        for (const auto& col : columns) {
          std::size_t found = fields.size();
          for (std::size_t i = 0; i < fields.size(); ++i)
            if (fields[i] == col) found = i;
          if (found == fields.size()) throw ParseError(line, "header lacks column '" + col + "'");
          index_[col] = found;
        }
        width_ = fields.size();
        have_header = true;
        continue;
      }
      if (fields.size() != width_)
        throw ParseError(line, "expected " + std::to_string(width_) + " fields, got " + std::to_string(fields.size()));
      rows_.push_back({line, std::move(fields)});
    }
  }

  const std::vector<Row>& rows() const { return rows_; }
  const std::string& get(const Row& row, const std::string& column) const { return row.fields[index_.at(column)]; }

 private:
  std::map<std::string, std::size_t> index_;
  std::size_t width_ = 0;
  std::vector<Row> rows_;
};

inline long parse_int(const std::string& s, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, std::string("invalid ") + what + " '" + s + "'");
}

inline double parse_double(const std::string& s, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, std::string("invalid ") + what + " '" + s + "'");
}

}  // namespace galois::csv
