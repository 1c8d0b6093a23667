#include "pheno/pheno.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "oracle/oracle.hpp"
#include "owl/owlxml.hpp"
#include "pipeline/definition.hpp"
#include "pipeline/pipeline.hpp"
#include "rdf/turtle.hpp"
#include "sparql/eval.hpp"
#include "sparql/parser.hpp"
#include "support/error.hpp"
#include "support/strings.hpp"

using pheno::Error;
using pheno::ErrorKind;

namespace {

pheno_status status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
      return PHENO_E_IO;
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::Compile:
    case ErrorKind::NotFound:
      return PHENO_E_PARSE;
    case ErrorKind::Consistency:
      return PHENO_E_CONSISTENCY;
    case ErrorKind::Usage:
      return PHENO_E_USAGE;
    case ErrorKind::Internal:
      return PHENO_E_INTERNAL;
  }
  return PHENO_E_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `fn`, capturing exceptions into the handle's last_error slot.
template <typename Fn>
pheno_status guarded(std::string& last_error, Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return PHENO_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_for(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return PHENO_E_INTERNAL;
  }
}

}  // namespace

struct pheno_pipeline {
  pheno::pipeline::Pipeline impl;
  std::string last_error;
};

struct pheno_dataset {
  explicit pheno_dataset(const char* base)
      : impl(base ? base : pheno::rdf::vocab::kDefaultBase) {}
  pheno::rdf::Dataset impl;
  std::string last_error;
};

namespace {

std::string resolve_graph(const pheno::rdf::Dataset& ds, const char* graph) {
  std::string g = graph ? graph : "asserted";
  if (g == "asserted") return ds.asserted_graph();
  if (g == "inferred") return ds.inferred_graph();
  return g;
}

pheno_status run_query(pheno_dataset* d, const std::string& text, const char* format,
                       char** result_out) {
  return guarded(d->last_error, [&] {
    auto query = pheno::sparql::parse_query(text);
    auto rows = pheno::sparql::evaluate(query, d->impl);
    std::string fmt = format ? format : "csv";
    std::string rendered;
    if (fmt == "csv") {
      rendered = pheno::sparql::results_to_csv(query, rows);
    } else if (fmt == "jsonl") {
      rendered = pheno::sparql::results_to_json_lines(query, rows);
    } else {
      throw Error(ErrorKind::Usage, "unknown result format: " + fmt);
    }
    if (result_out) *result_out = dup_string(rendered);
  });
}

}  // namespace

extern "C" {

const char* pheno_version(void) { return "1.0.0"; }

void pheno_string_free(char* s) { std::free(s); }

/* ------------------------------------------------------------------ */

pheno_pipeline* pheno_pipeline_new(void) { return new (std::nothrow) pheno_pipeline(); }

void pheno_pipeline_free(pheno_pipeline* p) { delete p; }

const char* pheno_pipeline_last_error(const pheno_pipeline* p) {
  return p ? p->last_error.c_str() : "null handle";
}

pheno_status pheno_pipeline_set_base_iri(pheno_pipeline* p, const char* base_iri) {
  if (!p || !base_iri) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { p->impl.set_base_iri(base_iri); });
}

pheno_status pheno_pipeline_load_definition(pheno_pipeline* p, const char* def_path) {
  if (!p || !def_path) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { p->impl.load_definition(def_path); });
}

pheno_status pheno_pipeline_load_ontology(pheno_pipeline* p, const char* ttl_path) {
  if (!p || !ttl_path) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { p->impl.load_ontology_file(ttl_path); });
}

pheno_status pheno_pipeline_load_query(pheno_pipeline* p, const char* rq_path) {
  if (!p || !rq_path) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { p->impl.load_query_file(rq_path); });
}

pheno_status pheno_pipeline_write_build_artifacts(pheno_pipeline* p, const char* out_dir,
                                                  int owl_xml) {
  if (!p || !out_dir) return PHENO_E_USAGE;
  return guarded(p->last_error,
                 [&] { p->impl.write_build_artifacts(out_dir, owl_xml != 0); });
}

pheno_status pheno_pipeline_ingest_ehr(pheno_pipeline* p, const char* ehr_csv_path) {
  if (!p || !ehr_csv_path) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { p->impl.ingest_file(ehr_csv_path); });
}

pheno_status pheno_pipeline_materialize(pheno_pipeline* p) {
  if (!p) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { p->impl.materialize(); });
}

pheno_status pheno_pipeline_extract_cohorts(pheno_pipeline* p, int verify_partition) {
  if (!p) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { p->impl.extract_cohorts(verify_partition != 0); });
}

pheno_status pheno_pipeline_compare_oracle(pheno_pipeline* p, char** diff_json_out) {
  if (!p) return PHENO_E_USAGE;
  pheno::pipeline::OracleDiff diff;
  pheno_status st = guarded(p->last_error, [&] { diff = p->impl.compare_oracle(); });
  if (st != PHENO_OK) return st;
  if (diff_json_out) *diff_json_out = dup_string(diff.to_json());
  if (!diff.empty()) {
    p->last_error = "pipeline cohorts diverge from the reference oracle for " +
                    std::to_string(diff.entries.size()) + " patient(s)";
    return PHENO_E_CONSISTENCY;
  }
  return PHENO_OK;
}

pheno_status pheno_pipeline_write_run_artifacts(pheno_pipeline* p, const char* out_dir) {
  if (!p || !out_dir) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { p->impl.write_run_artifacts(out_dir); });
}

pheno_status pheno_pipeline_run_report(pheno_pipeline* p, char** json_out) {
  if (!p || !json_out) return PHENO_E_USAGE;
  return guarded(p->last_error, [&] { *json_out = dup_string(p->impl.run_report_json()); });
}

/* ------------------------------------------------------------------ */

pheno_dataset* pheno_dataset_new(const char* base_iri) {
  try {
    return new pheno_dataset(base_iri);
  } catch (...) {
    return nullptr;
  }
}

void pheno_dataset_free(pheno_dataset* d) { delete d; }

const char* pheno_dataset_last_error(const pheno_dataset* d) {
  return d ? d->last_error.c_str() : "null handle";
}

pheno_status pheno_dataset_load_turtle(pheno_dataset* d, const char* path, const char* graph) {
  if (!d || !path) return PHENO_E_USAGE;
  return guarded(d->last_error, [&] {
    pheno::rdf::load_turtle_file(path, d->impl, resolve_graph(d->impl, graph));
  });
}

pheno_status pheno_dataset_triple_count(pheno_dataset* d, size_t* count_out) {
  if (!d || !count_out) return PHENO_E_USAGE;
  *count_out = d->impl.total_triples();
  return PHENO_OK;
}

pheno_status pheno_dataset_query_text(pheno_dataset* d, const char* query_text,
                                      const char* format, char** result_out) {
  if (!d || !query_text) return PHENO_E_USAGE;
  return run_query(d, query_text, format, result_out);
}

pheno_status pheno_dataset_query_file(pheno_dataset* d, const char* rq_path, const char* format,
                                      char** result_out) {
  if (!d || !rq_path) return PHENO_E_USAGE;
  std::string text;
  pheno_status st =
      guarded(d->last_error, [&] { text = pheno::util::read_file(rq_path); });
  if (st != PHENO_OK) return st;
  return run_query(d, text, format, result_out);
}

pheno_status pheno_dataset_serialize(pheno_dataset* d, const char* graph, const char* format,
                                     char** result_out) {
  if (!d || !result_out) return PHENO_E_USAGE;
  return guarded(d->last_error, [&] {
    std::string g = resolve_graph(d->impl, graph);
    std::string fmt = format ? format : "ttl";
    if (fmt == "ttl") {
      *result_out = dup_string(pheno::rdf::serialize_turtle(d->impl, g));
    } else if (fmt == "nt") {
      *result_out = dup_string(pheno::rdf::serialize_ntriples(d->impl, g));
    } else {
      throw Error(ErrorKind::Usage, "unknown serialization format: " + fmt);
    }
  });
}

/* ------------------------------------------------------------------ */

pheno_status pheno_oracle_classify(const char* def_path, const char* ehr_csv_path,
                                   char** csv_out, char** error_out) {
  if (!def_path || !ehr_csv_path) return PHENO_E_USAGE;
  std::string err;
  pheno_status st = guarded(err, [&] {
    auto def = pheno::pipeline::load_definition(def_path);
    if (!def.oracle)
      throw Error(ErrorKind::Usage, def_path + std::string(": definition has no oracle section"));
    pheno::oracle::EvidenceMapping mapping;
    for (const auto& a : def.oracle->type1_evidence)
      mapping.type1_atoms.insert({a.component, a.category});
    for (const auto& a : def.oracle->type2_evidence)
      mapping.type2_atoms.insert({a.component, a.category});
    std::vector<std::pair<std::string, std::string>> codelists;
    for (const auto& c : def.components) codelists.emplace_back(c.name, c.codelist_path);
    auto classes = pheno::oracle::classify_dataset(ehr_csv_path, codelists, mapping);
    if (csv_out) *csv_out = dup_string(pheno::oracle::classification_to_csv(classes));
  });
  if (st != PHENO_OK && error_out) *error_out = dup_string(err);
  return st;
}

pheno_status pheno_export_ontology(const char* ttl_path, const char* format, char** result_out,
                                   char** error_out) {
  if (!ttl_path || !result_out) return PHENO_E_USAGE;
  std::string err;
  pheno_status st = guarded(err, [&] {
    pheno::rdf::Dataset ds;
    pheno::rdf::load_turtle_file(ttl_path, ds, "urn:pheno:ontology");
    std::string fmt = format ? format : "owl-xml";
    if (fmt == "owl-xml") {
      auto ont = pheno::owl::from_triples(ds, "urn:pheno:ontology");
      *result_out = dup_string(pheno::owl::export_owl_xml(ont));
    } else if (fmt == "nt") {
      *result_out = dup_string(pheno::rdf::serialize_ntriples(ds, "urn:pheno:ontology"));
    } else {
      throw Error(ErrorKind::Usage, "unknown export format: " + fmt);
    }
  });
  if (st != PHENO_OK && error_out) *error_out = dup_string(err);
  return st;
}

}  // extern "C"
