#include "oracle/oracle.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "support/error.hpp"

namespace pheno::oracle {

namespace {

// Self-contained CSV splitting so the oracle stays an independent check of
// the pipeline, not a client of it.
bool split_csv_line(const std::string& raw, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
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
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) return false;
  fields.push_back(field);
  return true;
}

std::string strip(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool iso_date_ok(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  int month = (text[5] - '0') * 10 + (text[6] - '0');
  int day = (text[8] - '0') * 10 + (text[9] - '0');
  static const int days[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return month >= 1 && month <= 12 && day >= 1 && day <= days[month - 1];
}

const std::set<std::string> kTerminologies = {"READ", "ICD10", "ICD9", "OPCS4", "BNF"};
const std::set<std::string> kSources = {"GPRD", "HES", "ONS"};

}  // namespace

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Type1: return "type1";
    case Outcome::Type2: return "type2";
    case Outcome::Unspecified: return "unspecified";
    case Outcome::NonDiabetic: return "non_diabetic";
  }
  return {};
}

Outcome classify(const PatientEvidence& evidence) {
  bool t1 = !evidence.t1_codes.empty();
  bool t2 = !evidence.t2_codes.empty();
  if (t1 && t2) return Outcome::Unspecified;
  if (t1) return Outcome::Type1;
  if (t2) return Outcome::Type2;
  return Outcome::NonDiabetic;
}

std::map<std::string, Outcome> classify_dataset(
    const std::string& ehr_csv_path,
    const std::vector<std::pair<std::string, std::string>>& codelists,
    const EvidenceMapping& mapping, std::vector<OracleDiagnostic>* diagnostics) {
  // (terminology, code) -> evidence flags, via codelist lookup
  std::map<std::pair<std::string, std::string>, std::pair<bool, bool>> code_evidence;

  for (const auto& [component, path] : codelists) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "oracle: cannot open codelist: " + path);
    std::string raw;
    std::vector<std::string> fields;
    int line = 0;
    bool header = true;
    while (std::getline(in, raw)) {
      ++line;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (raw.empty()) continue;
      if (!split_csv_line(raw, fields) || fields.size() != 5)
        throw Error(ErrorKind::Parse,
                    "oracle: malformed codelist row at " + path + ":" + std::to_string(line));
      if (header) {
        header = false;
        continue;
      }
      std::string terminology = strip(fields[2]);
      std::string code = strip(fields[3]);
      int category = 0;
      try {
        category = std::stoi(strip(fields[1]));
      } catch (...) {
        throw Error(ErrorKind::Parse,
                    "oracle: bad category at " + path + ":" + std::to_string(line));
      }
      auto& flags = code_evidence[{terminology, code}];
      if (mapping.type1_atoms.contains({component, category})) flags.first = true;
      if (mapping.type2_atoms.contains({component, category})) flags.second = true;
    }
  }

  std::ifstream in(ehr_csv_path);
  if (!in) throw Error(ErrorKind::Io, "oracle: cannot open EHR file: " + ehr_csv_path);

  std::map<std::string, PatientEvidence> evidence;
  std::string raw;
  std::vector<std::string> fields;
  int line = 0;
  bool header = true;
  auto skip = [&](const std::string& message) {
    if (diagnostics) diagnostics->push_back({ehr_csv_path, line, message});
  };
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    if (!split_csv_line(raw, fields)) { skip("malformed CSV row"); continue; }
    if (fields.size() != 5) { skip("expected 5 fields"); continue; }

    std::string patient_id = strip(fields[0]);
    std::string source = strip(fields[1]);
    std::string terminology = strip(fields[2]);
    std::string code = strip(fields[3]);
    std::string date = strip(fields[4]);
    if (patient_id.empty()) { skip("empty patient_id"); continue; }
    if (!kSources.contains(source)) { skip("unknown source: " + source); continue; }
    if (!kTerminologies.contains(terminology)) { skip("unknown terminology: " + terminology); continue; }
    if (code.empty()) { skip("empty code"); continue; }
    if (!iso_date_ok(date)) { skip("invalid ISO-8601 date: " + date); continue; }

    auto& pe = evidence[patient_id];
    pe.patient_id = patient_id;
    auto it = code_evidence.find({terminology, code});
    if (it == code_evidence.end()) continue;  // non-phenotype code
    if (it->second.first) pe.t1_codes.insert({terminology, code});
    if (it->second.second) pe.t2_codes.insert({terminology, code});
  }

  std::map<std::string, Outcome> out;
  for (const auto& [id, pe] : evidence) out.emplace(id, classify(pe));
  return out;
}

std::string classification_to_csv(const std::map<std::string, Outcome>& classes) {
  std::ostringstream out;
  out << "patient_id,class\n";
  for (const auto& [id, outcome] : classes) out << id << "," << outcome_name(outcome) << "\n";
  return out.str();
}

}  // namespace pheno::oracle
