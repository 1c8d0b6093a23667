#include "pipeline/csv_inputs.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

#include "support/csv.hpp"
#include "support/error.hpp"
#include "support/strings.hpp"

namespace pheno::pipeline {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& message) {
  throw Error(ErrorKind::Parse, path + ":" + std::to_string(line) + ": " + message);
}

bool expect_header(const std::vector<std::string>& fields,
                   const std::vector<std::string>& expected) {
  if (fields.size() != expected.size()) return false;
  for (size_t i = 0; i < fields.size(); ++i)
    if (util::trim(fields[i]) != expected[i]) return false;
  return true;
}

}  // namespace

bool valid_iso_date(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  int month = (text[5] - '0') * 10 + (text[6] - '0');
  int day = (text[8] - '0') * 10 + (text[9] - '0');
  if (month < 1 || month > 12) return false;
  static const int days[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return day >= 1 && day <= days[month - 1];
}

std::vector<CodelistEntry> read_codelist_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open codelist: " + path);

  util::CsvReader reader(in);
  util::CsvRow row;
  if (!reader.next(row) ||
      !expect_header(row.fields, {"component", "category", "terminology", "code", "description"}))
    fail(path, row.line ? row.line : 1,
         "expected header component,category,terminology,code,description");

  std::vector<CodelistEntry> entries;
  while (reader.next(row)) {
    if (row.fields.empty()) fail(path, row.line, "malformed CSV row (unterminated quote)");
    if (row.fields.size() != 5) fail(path, row.line, "expected 5 fields");

    CodelistEntry e;
    e.component = util::trim(row.fields[0]);
    if (e.component.empty()) fail(path, row.line, "component must be non-empty");

    std::string cat = util::trim(row.fields[1]);
    auto [ptr, ec] = std::from_chars(cat.data(), cat.data() + cat.size(), e.category);
    if (ec != std::errc() || ptr != cat.data() + cat.size() || e.category < 1)
      fail(path, row.line, "category must be an integer >= 1: " + cat);

    auto term = parse_terminology(util::trim(row.fields[2]));
    if (!term) fail(path, row.line, "unknown terminology: " + row.fields[2]);
    e.terminology = *term;

    e.code = util::trim(row.fields[3]);
    if (e.code.empty()) fail(path, row.line, "code must be non-empty");
    e.description = row.fields[4];
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<EhrRecord> read_ehr_csv(const std::string& path,
                                    std::vector<RowDiagnostic>& diagnostics, size_t* rows_read) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open EHR file: " + path);

  util::CsvReader reader(in);
  util::CsvRow row;
  if (!reader.next(row) ||
      !expect_header(row.fields, {"patient_id", "source", "terminology", "code", "date"}))
    throw Error(ErrorKind::Parse,
                path + ":" + std::to_string(row.line ? row.line : 1) +
                    ": expected header patient_id,source,terminology,code,date");

  std::vector<EhrRecord> records;
  size_t read = 0;
  auto skip = [&](int line, const std::string& message) {
    diagnostics.push_back({path, line, message});
  };

  while (reader.next(row)) {
    ++read;
    if (row.fields.empty()) { skip(row.line, "malformed CSV row"); continue; }
    if (row.fields.size() != 5) { skip(row.line, "expected 5 fields"); continue; }

    EhrRecord r;
    r.patient_id = util::trim(row.fields[0]);
    if (r.patient_id.empty()) { skip(row.line, "empty patient_id"); continue; }

    auto src = parse_source(util::trim(row.fields[1]));
    if (!src) { skip(row.line, "unknown source: " + row.fields[1]); continue; }
    r.source = *src;

    auto term = parse_terminology(util::trim(row.fields[2]));
    if (!term) { skip(row.line, "unknown terminology: " + row.fields[2]); continue; }
    r.terminology = *term;

    r.code = util::trim(row.fields[3]);
    if (r.code.empty()) { skip(row.line, "empty code"); continue; }

    r.date = util::trim(row.fields[4]);
    if (!valid_iso_date(r.date)) { skip(row.line, "invalid ISO-8601 date: " + r.date); continue; }

    records.push_back(std::move(r));
  }
  if (rows_read) *rows_read = read;
  return records;
}

}  // namespace pheno::pipeline
