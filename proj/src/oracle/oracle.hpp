#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace pheno::oracle {

// Ground-truth diabetes classifier: a direct, non-RDF implementation used to
// cross-check the ontology pipeline end to end. It has its own CSV parsing
// (same row policy as the pipeline) and shares none of the triple-store,
// reasoner or query machinery.

enum class Outcome { Type1, Type2, Unspecified, NonDiabetic };

std::string outcome_name(Outcome o);

struct PatientEvidence {
  std::string patient_id;
  std::set<std::pair<std::string, std::string>> t1_codes;  // (terminology, code)
  std::set<std::pair<std::string, std::string>> t2_codes;
};

// t1 only -> Type1; t2 only -> Type2; both -> Unspecified; neither ->
// NonDiabetic. Depends only on set emptiness.
Outcome classify(const PatientEvidence& evidence);

struct EvidenceMapping {
  std::set<std::pair<std::string, int>> type1_atoms;  // (component, category)
  std::set<std::pair<std::string, int>> type2_atoms;
};

struct OracleDiagnostic {
  std::string file;
  int line = 0;
  std::string message;
};

// Classifies every patient appearing (with a well-formed row) in the EHR
// file. Codelists are (component, csv path) pairs using the pipeline's
// column layout. Malformed EHR rows are skipped with the same policy the
// pipeline applies.
std::map<std::string, Outcome> classify_dataset(
    const std::string& ehr_csv_path,
    const std::vector<std::pair<std::string, std::string>>& codelists,
    const EvidenceMapping& mapping, std::vector<OracleDiagnostic>* diagnostics = nullptr);

std::string classification_to_csv(const std::map<std::string, Outcome>& classes);

}  // namespace pheno::oracle
