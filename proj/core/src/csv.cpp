#include "hinrisk/csv.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "hinrisk/error.hpp"

namespace hinrisk::csv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line, const std::string& source,
                                    std::size_t lineno) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && trim(field).empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
      field.clear();
    } else if (c == ',') {
      out.push_back(was_quoted ? field : trim(field));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw Error(Errc::SyntaxError,
                source + ":" + std::to_string(lineno) + ": unterminated quoted field");
  }
  out.push_back(was_quoted ? field : trim(field));
  return out;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(Errc::UnknownType, source + ": missing required column '" + name + "'");
}

Table read_table(std::istream& in, const std::string& source) {
  Table table;
  table.source = source;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_line(line, source, lineno);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(Row{lineno, std::move(fields)});
    }
  }
  if (!have_header) {
    throw Error(Errc::SyntaxError, source + ": empty file, header line required");
  }
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::UnknownType, path + ": cannot open file");
  }
  return read_table(in, path);
}

std::string escape_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace hinrisk::csv
