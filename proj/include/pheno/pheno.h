/*
 * pheno - phenotype ontology compiler and cohort engine, C API.
 *
 * Opaque-handle interface over the C++ core. Every function that can fail
 * returns a pheno_status; the per-handle last_error message describes the
 * failure. Strings returned through char** out-parameters are heap-allocated
 * and must be released with pheno_string_free().
 */

#ifndef PHENO_PHENO_H
#define PHENO_PHENO_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef PHENO_API
#if defined(_WIN32)
#define PHENO_API __declspec(dllexport)
#else
#define PHENO_API __attribute__((visibility("default")))
#endif
#endif

typedef enum pheno_status {
  PHENO_OK = 0,
  PHENO_E_IO = 1,          /* unreadable/unwritable files */
  PHENO_E_PARSE = 2,       /* syntax, schema and compile errors */
  PHENO_E_CONSISTENCY = 3, /* disjointness/partition/oracle-diff failures */
  PHENO_E_USAGE = 4,       /* API misuse (missing stage, bad arguments) */
  PHENO_E_INTERNAL = 5
} pheno_status;

PHENO_API const char* pheno_version(void);
PHENO_API void pheno_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Pipeline: build -> ingest -> materialize -> cohorts                 */

typedef struct pheno_pipeline pheno_pipeline;

PHENO_API pheno_pipeline* pheno_pipeline_new(void);
PHENO_API void pheno_pipeline_free(pheno_pipeline* p);

/* Message for the most recent failing call on this handle; empty string
 * when no failure occurred. The pointer stays valid until the next call on
 * the same handle. */
PHENO_API const char* pheno_pipeline_last_error(const pheno_pipeline* p);

PHENO_API pheno_status pheno_pipeline_set_base_iri(pheno_pipeline* p, const char* base_iri);

/* Compiles a phenotype definition (JSON + codelist CSVs) into the ontology
 * and the cohort queries. */
PHENO_API pheno_status pheno_pipeline_load_definition(pheno_pipeline* p, const char* def_path);

/* Reload path: ontology from its Turtle serialization plus saved cohort
 * queries (cohort name = file stem). */
PHENO_API pheno_status pheno_pipeline_load_ontology(pheno_pipeline* p, const char* ttl_path);
PHENO_API pheno_status pheno_pipeline_load_query(pheno_pipeline* p, const char* rq_path);

/* Writes ontology.ttl, queries/<cohort>.rq and build_report.json (plus
 * ontology.owl.xml when owl_xml is nonzero) into out_dir. */
PHENO_API pheno_status pheno_pipeline_write_build_artifacts(pheno_pipeline* p,
                                                            const char* out_dir, int owl_xml);

PHENO_API pheno_status pheno_pipeline_ingest_ehr(pheno_pipeline* p, const char* ehr_csv_path);

PHENO_API pheno_status pheno_pipeline_materialize(pheno_pipeline* p);

/* verify_partition nonzero forces the cohorts-partition-the-subjects check;
 * zero leaves it to the definition's disjoint_cohorts flag. */
PHENO_API pheno_status pheno_pipeline_extract_cohorts(pheno_pipeline* p, int verify_partition);

/* Compares pipeline cohorts against the reference oracle. Returns
 * PHENO_E_CONSISTENCY on a non-empty diff. diff_json_out (optional) receives
 * the diff report either way. */
PHENO_API pheno_status pheno_pipeline_compare_oracle(pheno_pipeline* p, char** diff_json_out);

/* Writes asserted.ttl, inferred.ttl, cohorts.csv and run_report.json. */
PHENO_API pheno_status pheno_pipeline_write_run_artifacts(pheno_pipeline* p,
                                                          const char* out_dir);

PHENO_API pheno_status pheno_pipeline_run_report(pheno_pipeline* p, char** json_out);

/* ------------------------------------------------------------------ */
/* Datasets and ad-hoc queries                                         */

typedef struct pheno_dataset pheno_dataset;

PHENO_API pheno_dataset* pheno_dataset_new(const char* base_iri /* NULL for default */);
PHENO_API void pheno_dataset_free(pheno_dataset* d);
PHENO_API const char* pheno_dataset_last_error(const pheno_dataset* d);

/* graph: "asserted", "inferred", or a full graph IRI. */
PHENO_API pheno_status pheno_dataset_load_turtle(pheno_dataset* d, const char* path,
                                                 const char* graph);
PHENO_API pheno_status pheno_dataset_triple_count(pheno_dataset* d, size_t* count_out);

/* Evaluates a query over the union of the dataset's graphs. Result formats:
 * "csv" (header = variable names) or "jsonl" (one object per row). */
PHENO_API pheno_status pheno_dataset_query_text(pheno_dataset* d, const char* query_text,
                                                const char* format, char** result_out);
PHENO_API pheno_status pheno_dataset_query_file(pheno_dataset* d, const char* rq_path,
                                                const char* format, char** result_out);

/* Serializes one graph ("asserted"/"inferred"/IRI) as Turtle or N-Triples
 * (format "ttl" or "nt"). */
PHENO_API pheno_status pheno_dataset_serialize(pheno_dataset* d, const char* graph,
                                               const char* format, char** result_out);

/* ------------------------------------------------------------------ */
/* Standalone helpers                                                  */

/* Reference oracle over the same inputs the pipeline reads; writes
 * patient_id,class CSV (classes: type1/type2/unspecified/non_diabetic).
 * error_out (optional) receives the failure message. */
PHENO_API pheno_status pheno_oracle_classify(const char* def_path, const char* ehr_csv_path,
                                             char** csv_out, char** error_out);

/* Converts an ontology Turtle file into OWL/XML (or N-Triples with format
 * "nt"). */
PHENO_API pheno_status pheno_export_ontology(const char* ttl_path, const char* format,
                                             char** result_out, char** error_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PHENO_PHENO_H */
