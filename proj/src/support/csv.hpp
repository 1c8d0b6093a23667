#pragma once

#include <istream>
#include <string>
#include <vector>

namespace pheno::util {

struct CsvRow {
  std::vector<std::string> fields;
  int line = 0;  // 1-based line of the row start
};

// Minimal RFC-4180 style reader: comma separated, double quotes around fields
// that contain commas or quotes, "" escapes a quote. Fields do not span lines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. Blank lines are skipped. A malformed line
  // (unterminated quote) is reported through row.fields being empty and
  // row.line set; callers decide whether that is fatal.
  bool next(CsvRow& row);

 private:
  std::istream& in_;
  int line_ = 0;
};

std::string csv_escape(const std::string& field);

}  // namespace pheno::util
