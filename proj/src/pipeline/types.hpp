#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pheno::pipeline {

enum class Terminology { Read, Icd10, Icd9, Opcs4, Bnf };
enum class Source { Gprd, Hes, Ons };

std::optional<Terminology> parse_terminology(const std::string& text);  // "READ", "ICD10", ...
std::string terminology_name(Terminology t);
std::optional<Source> parse_source(const std::string& text);  // "GPRD", "HES", "ONS"
std::string source_name(Source s);

// One row of a codelist CSV (component,category,terminology,code,description).
struct CodelistEntry {
  std::string component;
  int category = 0;
  Terminology terminology = Terminology::Read;
  std::string code;
  std::string description;
};

// One row of an EHR CSV (patient_id,source,terminology,code,date).
struct EhrRecord {
  std::string patient_id;
  Source source = Source::Gprd;
  Terminology terminology = Terminology::Read;
  std::string code;
  std::string date;  // ISO-8601 date, validated at ingest
};

struct ComponentDef {
  std::string name;
  std::string codelist_path;  // resolved against the definition file directory
  Source source = Source::Gprd;
};

// Set expression over component/category atoms. An atom denotes "subjects
// with at least one code from that component (category)".
struct LogicExpr {
  enum class Kind { CategoryAtom, ComponentAtom, ClassRef, Union, Intersection };
  Kind kind = Kind::CategoryAtom;
  std::string name;  // component or referenced class
  int category = 0;
  std::vector<LogicExpr> args;
};

struct LogicClassDef {
  std::string name;  // local class name under the base IRI
  LogicExpr expr;
};

struct CohortDefinition {
  std::string name;
  std::string include_class;                 // local class name
  std::vector<std::string> exclude_classes;  // compiled to FILTER NOT EXISTS
};

struct EvidenceAtom {
  std::string component;
  int category = 0;

  friend auto operator<=>(const EvidenceAtom&, const EvidenceAtom&) = default;
};

// Maps reference-oracle outcomes onto this definition's cohort names; used by
// the oracle command and --compare-oracle.
struct OracleSpec {
  std::vector<EvidenceAtom> type1_evidence;
  std::vector<EvidenceAtom> type2_evidence;
  std::string type1_cohort;
  std::string type2_cohort;
  std::string unspecified_cohort;
  std::string non_diabetic_cohort;
};

struct PhenotypeDef {
  std::string name;
  std::string base_iri;
  std::vector<ComponentDef> components;
  std::vector<LogicClassDef> logic_classes;
  std::vector<CohortDefinition> cohorts;
  bool disjoint_cohorts = false;
  std::vector<std::vector<std::string>> disjoint_classes;  // optional DisjointClasses axioms
  std::optional<OracleSpec> oracle;
  std::string source_path;  // definition file, for diagnostics
};

struct RowDiagnostic {
  std::string file;
  int line = 0;
  std::string message;
};

struct IngestReport {
  size_t rows_read = 0;
  size_t rows_matched = 0;    // produced an obtained-triple
  size_t rows_unmatched = 0;  // well-formed but code not in any codelist
  size_t rows_malformed = 0;  // skipped with a diagnostic
  size_t patients = 0;        // distinct patients asserted as subjects
  std::vector<RowDiagnostic> diagnostics;

  std::string to_json() const;
};

struct Cohort {
  std::string name;
  std::set<std::string> members;  // patient ids (not IRIs)
};

}  // namespace pheno::pipeline
