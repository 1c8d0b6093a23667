#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "owl/reasoner.hpp"
#include "pipeline/cohorts.hpp"
#include "pipeline/compiler.hpp"
#include "pipeline/types.hpp"

namespace pheno::pipeline {

struct OracleDiff {
  struct Entry {
    std::string patient_id;
    std::string expected_cohort;  // from the reference oracle
    std::string actual_cohort;    // "-" when absent
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
  std::string to_json() const;
};

// Orchestrates build -> ingest -> materialize -> extract. Stages communicate
// through ordinary data; the CLI drives this class via the C API and writes
// only on-disk artifacts between commands.
class Pipeline {
 public:
  // before load_definition/load_ontology; overrides the definition's base IRI
  void set_base_iri(const std::string& base);

  void load_definition(const std::string& def_path);
  void load_definition_obj(const PhenotypeDef& def,
                           const std::map<std::string, std::vector<CodelistEntry>>& codelists);

  // reload path: ontology from its Turtle serialization plus saved queries
  void load_ontology_file(const std::string& ttl_path);
  void load_query_file(const std::string& rq_path);  // cohort name = file stem

  // ontology.ttl, queries/<cohort>.rq, build_report.json, optional .owl.xml
  void write_build_artifacts(const std::string& out_dir, bool owl_xml) const;

  IngestReport ingest_file(const std::string& ehr_path);
  IngestReport ingest_records(const std::vector<EhrRecord>& records);

  const owl::InferenceResult& materialize();

  const std::vector<Cohort>& extract_cohorts(bool verify_partition);

  // requires a definition with an oracle section and a prior ingest_file
  OracleDiff compare_oracle() const;

  // asserted.ttl, inferred.ttl, cohorts.csv, run_report.json
  void write_run_artifacts(const std::string& out_dir) const;

  std::string run_report_json() const;

  const owl::Ontology& ontology() const;
  const rdf::Dataset& dataset() const;
  rdf::Dataset& mutable_dataset();
  const std::vector<NamedQuery>& queries() const { return queries_; }
  const std::vector<Cohort>& cohorts() const { return cohorts_; }
  const std::string& base_iri() const { return base_; }
  const std::optional<PhenotypeDef>& definition() const { return def_; }

 private:
  void ensure_dataset();

  std::optional<std::string> base_override_;
  std::string base_ = rdf::vocab::kDefaultBase;

  std::optional<PhenotypeDef> def_;
  std::optional<owl::Ontology> ontology_;
  std::vector<NamedQuery> queries_;
  std::vector<std::string> build_warnings_;

  std::unique_ptr<rdf::Dataset> ds_;
  bool ontology_in_dataset_ = false;

  std::string ehr_path_;
  IngestReport ingest_report_;
  std::optional<owl::InferenceResult> inference_;
  std::vector<Cohort> cohorts_;
  bool cohorts_ready_ = false;
};

}  // namespace pheno::pipeline
