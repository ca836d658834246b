#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace hinrisk::csv {

// One parsed record together with its 1-based source line, so that load errors
// can point back at the offending row.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct Table {
  std::string source;  // file path or stream label, used in error messages
  std::vector<std::string> header;
  std::vector<Row> rows;

  // Index of a header column; throws a Data error naming the column if absent.
  std::size_t column(const std::string& name) const;
};

// Reads a comma-separated table with a mandatory header line. Double-quoted
// fields with doubled-quote escapes are accepted; leading/trailing whitespace
// of unquoted fields is trimmed. Blank lines are skipped.
Table read_table(std::istream& in, const std::string& source);
Table read_file(const std::string& path);

// Minimal writer: quotes a field only when it contains comma/quote/newline.
std::string escape_field(const std::string& field);

}  // namespace hinrisk::csv
