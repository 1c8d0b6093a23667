#include "pipeline/types.hpp"

#include <json.hpp>

namespace pheno::pipeline {

std::optional<Terminology> parse_terminology(const std::string& text) {
  if (text == "READ") return Terminology::Read;
  if (text == "ICD10") return Terminology::Icd10;
  if (text == "ICD9") return Terminology::Icd9;
  if (text == "OPCS4") return Terminology::Opcs4;
  if (text == "BNF") return Terminology::Bnf;
  return std::nullopt;
}

std::string terminology_name(Terminology t) {
  switch (t) {
    case Terminology::Read: return "READ";
    case Terminology::Icd10: return "ICD10";
    case Terminology::Icd9: return "ICD9";
    case Terminology::Opcs4: return "OPCS4";
    case Terminology::Bnf: return "BNF";
  }
  return {};
}

std::optional<Source> parse_source(const std::string& text) {
  if (text == "GPRD") return Source::Gprd;
  if (text == "HES") return Source::Hes;
  if (text == "ONS") return Source::Ons;
  return std::nullopt;
}

std::string source_name(Source s) {
  switch (s) {
    case Source::Gprd: return "GPRD";
    case Source::Hes: return "HES";
    case Source::Ons: return "ONS";
  }
  return {};
}

std::string IngestReport::to_json() const {
  nlohmann::json j;
  j["rows_read"] = rows_read;
  j["rows_matched"] = rows_matched;
  j["rows_unmatched"] = rows_unmatched;
  j["rows_malformed"] = rows_malformed;
  j["patients"] = patients;
  auto diags = nlohmann::json::array();
  for (const auto& d : diagnostics) {
    diags.push_back({{"file", d.file}, {"line", d.line}, {"message", d.message}});
  }
  j["diagnostics"] = diags;
  return j.dump(2) + "\n";
}

}  // namespace pheno::pipeline
