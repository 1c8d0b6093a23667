#include "pipeline/pipeline.hpp"

#include <filesystem>

#include <json.hpp>

#include "oracle/oracle.hpp"
#include "owl/owlxml.hpp"
#include "pipeline/csv_inputs.hpp"
#include "pipeline/definition.hpp"
#include "pipeline/ingest.hpp"
#include "rdf/turtle.hpp"
#include "sparql/parser.hpp"
#include "support/error.hpp"
#include "support/strings.hpp"

namespace pheno::pipeline {

namespace fs = std::filesystem;

std::string OracleDiff::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    arr.push_back({{"patient_id", e.patient_id},
                   {"expected_cohort", e.expected_cohort},
                   {"actual_cohort", e.actual_cohort}});
  }
  nlohmann::json j;
  j["mismatches"] = arr;
  j["count"] = entries.size();
  return j.dump(2) + "\n";
}

void Pipeline::set_base_iri(const std::string& base) {
  if (!rdf::is_absolute_iri(base))
    throw Error(ErrorKind::Usage, "base IRI must be absolute: " + base);
  base_override_ = base;
  base_ = base;
}

void Pipeline::load_definition(const std::string& def_path) {
  PhenotypeDef def = ::pheno::pipeline::load_definition(def_path);
  std::map<std::string, std::vector<CodelistEntry>> codelists;
  for (const auto& c : def.components) {
    if (!fs::exists(c.codelist_path))
      throw Error(ErrorKind::Compile,
                  def.source_path + ": codelist file not found: " + c.codelist_path);
    codelists[c.name] = read_codelist_csv(c.codelist_path);
  }
  load_definition_obj(def, codelists);
}

void Pipeline::load_definition_obj(
    const PhenotypeDef& def, const std::map<std::string, std::vector<CodelistEntry>>& codelists) {
  PhenotypeDef effective = def;
  if (base_override_) effective.base_iri = *base_override_;
  base_ = effective.base_iri;

  CompiledPhenotype compiled = compile_phenotype(effective, codelists);
  def_ = std::move(compiled.def);
  ontology_ = std::move(compiled.ontology);
  queries_ = std::move(compiled.queries);
  build_warnings_ = std::move(compiled.warnings);
}

void Pipeline::load_ontology_file(const std::string& ttl_path) {
  rdf::Dataset staging(base_override_.value_or(std::string(rdf::vocab::kDefaultBase)));
  rdf::load_turtle_file(ttl_path, staging, "urn:pheno:ontology");
  owl::Ontology ont = owl::from_triples(staging, "urn:pheno:ontology");
  if (!base_override_ && !ont.iri.empty()) base_ = ont.iri;
  ontology_ = std::move(ont);
}

void Pipeline::load_query_file(const std::string& rq_path) {
  NamedQuery nq;
  nq.cohort = fs::path(rq_path).stem().string();
  nq.text = util::read_file(rq_path);
  nq.query = sparql::parse_query(nq.text);
  queries_.push_back(std::move(nq));
}

const owl::Ontology& Pipeline::ontology() const {
  if (!ontology_) throw Error(ErrorKind::Usage, "no ontology loaded or built");
  return *ontology_;
}

const rdf::Dataset& Pipeline::dataset() const {
  if (!ds_) throw Error(ErrorKind::Usage, "no dataset; ingest data first");
  return *ds_;
}

rdf::Dataset& Pipeline::mutable_dataset() {
  ensure_dataset();
  return *ds_;
}

void Pipeline::ensure_dataset() {
  if (!ds_) ds_ = std::make_unique<rdf::Dataset>(base_);
  if (!ontology_in_dataset_ && ontology_) {
    owl::to_triples(*ontology_, *ds_, ds_->asserted_graph());
    ontology_in_dataset_ = true;
  }
}

void Pipeline::write_build_artifacts(const std::string& out_dir, bool owl_xml) const {
  const owl::Ontology& ont = ontology();
  fs::create_directories(out_dir);
  fs::create_directories(fs::path(out_dir) / "queries");

  rdf::Dataset staging(base_);
  owl::to_triples(ont, staging, "urn:pheno:ontology");
  util::write_file((fs::path(out_dir) / "ontology.ttl").string(),
                   rdf::serialize_turtle(staging, "urn:pheno:ontology"));

  if (owl_xml)
    util::write_file((fs::path(out_dir) / "ontology.owl.xml").string(),
                     owl::export_owl_xml(ont));

  for (const auto& nq : queries_)
    util::write_file((fs::path(out_dir) / "queries" / (nq.cohort + ".rq")).string(), nq.text);

  nlohmann::json report;
  report["phenotype"] = def_ ? def_->name : "";
  report["base_iri"] = base_;
  report["declared_classes"] = ont.declared_classes.size();
  report["declared_properties"] = ont.declared_properties.size();
  report["axioms"] = ont.axioms.size();
  report["queries"] = queries_.size();
  report["warnings"] = build_warnings_;
  util::write_file((fs::path(out_dir) / "build_report.json").string(), report.dump(2) + "\n");
}

IngestReport Pipeline::ingest_file(const std::string& ehr_path) {
  ensure_dataset();
  ehr_path_ = ehr_path;
  ingest_report_ = ingest_ehr_file(ehr_path, *ds_, ontology(), base_);
  return ingest_report_;
}

IngestReport Pipeline::ingest_records(const std::vector<EhrRecord>& records) {
  ensure_dataset();
  ingest_report_ = ingest_ehr(records, *ds_, ontology(), base_);
  return ingest_report_;
}

const owl::InferenceResult& Pipeline::materialize() {
  ensure_dataset();
  inference_ = owl::materialize(ontology(), *ds_);
  return *inference_;
}

const std::vector<Cohort>& Pipeline::extract_cohorts(bool verify_partition) {
  if (!inference_)
    throw Error(ErrorKind::Usage, "materialize before extracting cohorts");
  bool verify = verify_partition || (def_ && def_->disjoint_cohorts);
  cohorts_ = pipeline::extract_cohorts(queries_, dataset(), base_, verify);
  cohorts_ready_ = true;
  return cohorts_;
}

OracleDiff Pipeline::compare_oracle() const {
  if (!def_ || !def_->oracle)
    throw Error(ErrorKind::Usage, "definition has no oracle section");
  if (ehr_path_.empty())
    throw Error(ErrorKind::Usage, "oracle comparison needs a file-based ingest");
  if (!cohorts_ready_)
    throw Error(ErrorKind::Usage, "extract cohorts before comparing against the oracle");

  const OracleSpec& spec = *def_->oracle;
  oracle::EvidenceMapping mapping;
  for (const auto& a : spec.type1_evidence) mapping.type1_atoms.insert({a.component, a.category});
  for (const auto& a : spec.type2_evidence) mapping.type2_atoms.insert({a.component, a.category});

  std::vector<std::pair<std::string, std::string>> codelists;
  for (const auto& c : def_->components) codelists.emplace_back(c.name, c.codelist_path);

  auto classes = oracle::classify_dataset(ehr_path_, codelists, mapping);

  auto cohort_for = [&](oracle::Outcome o) -> const std::string& {
    switch (o) {
      case oracle::Outcome::Type1: return spec.type1_cohort;
      case oracle::Outcome::Type2: return spec.type2_cohort;
      case oracle::Outcome::Unspecified: return spec.unspecified_cohort;
      case oracle::Outcome::NonDiabetic: return spec.non_diabetic_cohort;
    }
    throw Error(ErrorKind::Internal, "unhandled oracle outcome");
  };

  std::map<std::string, std::string> actual;
  for (const auto& cohort : cohorts_)
    for (const auto& id : cohort.members) actual[id] = cohort.name;

  OracleDiff diff;
  for (const auto& [id, outcome] : classes) {
    const std::string& expected = cohort_for(outcome);
    auto it = actual.find(id);
    std::string got = it == actual.end() ? "-" : it->second;
    if (got != expected) diff.entries.push_back({id, expected, got});
  }
  for (const auto& [id, cohort] : actual) {
    if (!classes.contains(id)) diff.entries.push_back({id, "-", cohort});
  }
  return diff;
}

std::string Pipeline::run_report_json() const {
  nlohmann::json j;
  j["ingest"] = nlohmann::json{{"rows_read", ingest_report_.rows_read},
                               {"rows_matched", ingest_report_.rows_matched},
                               {"rows_unmatched", ingest_report_.rows_unmatched},
                               {"rows_malformed", ingest_report_.rows_malformed},
                               {"patients", ingest_report_.patients}};
  if (inference_) {
    j["materialization"] = nlohmann::json{
        {"inferred_assertions", inference_->inferred.size()},
        {"iterations", inference_->iterations},
        {"disjointness_violations", inference_->inconsistencies.size()}};
  }
  if (cohorts_ready_) {
    nlohmann::json sizes = nlohmann::json::object();
    for (const auto& c : cohorts_) sizes[c.name] = c.members.size();
    j["cohorts"] = sizes;
  }
  return j.dump(2) + "\n";
}

void Pipeline::write_run_artifacts(const std::string& out_dir) const {
  fs::create_directories(out_dir);
  const rdf::Dataset& ds = dataset();
  util::write_file((fs::path(out_dir) / "asserted.ttl").string(),
                   rdf::serialize_turtle(ds, ds.asserted_graph()));
  util::write_file((fs::path(out_dir) / "inferred.ttl").string(),
                   rdf::serialize_turtle(ds, ds.inferred_graph()));
  if (cohorts_ready_)
    util::write_file((fs::path(out_dir) / "cohorts.csv").string(), cohorts_to_csv(cohorts_));
  util::write_file((fs::path(out_dir) / "run_report.json").string(), run_report_json());
}

}  // namespace pheno::pipeline
