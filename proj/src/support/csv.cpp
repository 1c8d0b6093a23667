#include "support/csv.hpp"

namespace pheno::util {

bool CsvReader::next(CsvRow& row) {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;

    row.fields.clear();
    row.line = line_;

    std::string field;
    bool in_quotes = false;
    bool ok = true;
    for (size_t i = 0; i < raw.size(); ++i) {
      char c = raw[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < raw.size() && raw[i + 1] == '"') {
            field.push_back('"');
            ++i;
          } else {
            in_quotes = false;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == '"' && field.empty()) {
        in_quotes = true;
      } else if (c == ',') {
        row.fields.push_back(field);
        field.clear();
      } else {
        field.push_back(c);
      }
    }
    if (in_quotes) ok = false;  // unterminated quote
    if (ok) {
      row.fields.push_back(field);
    } else {
      row.fields.clear();
    }
    return true;
  }
  return false;
}

std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

}  // namespace pheno::util
