// pheno CLI: build / run / query / export / oracle over the shared library's
// C API. Exit codes: 0 success, 1 I/O, 2 compile/parse, 3 consistency or
// oracle diff.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pheno/pheno.h"

namespace fs = std::filesystem;

namespace {

struct StringOut {
  char* value = nullptr;
  ~StringOut() { pheno_string_free(value); }
  char** out() { return &value; }
  std::string str() const { return value ? value : ""; }
};

int exit_code(pheno_status st) {
  switch (st) {
    case PHENO_OK: return 0;
    case PHENO_E_IO: return 1;
    case PHENO_E_PARSE: return 2;
    case PHENO_E_CONSISTENCY: return 3;
    default: return 4;
  }
}

int fail(const pheno_pipeline* p, pheno_status st) {
  std::cerr << "error: " << pheno_pipeline_last_error(p) << "\n";
  return exit_code(st);
}

int fail_ds(const pheno_dataset* d, pheno_status st) {
  std::cerr << "error: " << pheno_dataset_last_error(d) << "\n";
  return exit_code(st);
}

bool write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return true;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return out.good();
}

using PipelinePtr = std::unique_ptr<pheno_pipeline, decltype(&pheno_pipeline_free)>;
using DatasetPtr = std::unique_ptr<pheno_dataset, decltype(&pheno_dataset_free)>;

PipelinePtr make_pipeline() { return {pheno_pipeline_new(), &pheno_pipeline_free}; }

int cmd_build(const std::string& def, const std::string& out_dir, const std::string& base_iri,
              bool owl_xml) {
  auto p = make_pipeline();
  if (!base_iri.empty())
    if (auto st = pheno_pipeline_set_base_iri(p.get(), base_iri.c_str()); st != PHENO_OK)
      return fail(p.get(), st);
  if (auto st = pheno_pipeline_load_definition(p.get(), def.c_str()); st != PHENO_OK)
    return fail(p.get(), st);
  if (auto st = pheno_pipeline_write_build_artifacts(p.get(), out_dir.c_str(), owl_xml);
      st != PHENO_OK)
    return fail(p.get(), st);
  std::cout << "wrote ontology + " << "queries to " << out_dir << "\n";
  return 0;
}

int cmd_run(const std::string& def, const std::string& ontology, const std::string& queries_dir,
            const std::string& ehr, const std::string& out_dir, const std::string& base_iri,
            bool verify_disjoint, bool compare_oracle) {
  auto p = make_pipeline();
  if (!base_iri.empty())
    if (auto st = pheno_pipeline_set_base_iri(p.get(), base_iri.c_str()); st != PHENO_OK)
      return fail(p.get(), st);

  if (!def.empty()) {
    if (auto st = pheno_pipeline_load_definition(p.get(), def.c_str()); st != PHENO_OK)
      return fail(p.get(), st);
  } else {
    if (auto st = pheno_pipeline_load_ontology(p.get(), ontology.c_str()); st != PHENO_OK)
      return fail(p.get(), st);
    std::vector<std::string> rq_files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(queries_dir, ec))
      if (entry.path().extension() == ".rq") rq_files.push_back(entry.path().string());
    if (ec || rq_files.empty()) {
      std::cerr << "error: no .rq files in " << queries_dir << "\n";
      return 1;
    }
    std::sort(rq_files.begin(), rq_files.end());
    for (const auto& rq : rq_files)
      if (auto st = pheno_pipeline_load_query(p.get(), rq.c_str()); st != PHENO_OK)
        return fail(p.get(), st);
  }

  if (auto st = pheno_pipeline_ingest_ehr(p.get(), ehr.c_str()); st != PHENO_OK)
    return fail(p.get(), st);
  if (auto st = pheno_pipeline_materialize(p.get()); st != PHENO_OK) return fail(p.get(), st);
  if (auto st = pheno_pipeline_extract_cohorts(p.get(), verify_disjoint ? 1 : 0);
      st != PHENO_OK)
    return fail(p.get(), st);
  if (auto st = pheno_pipeline_write_run_artifacts(p.get(), out_dir.c_str()); st != PHENO_OK)
    return fail(p.get(), st);

  if (compare_oracle) {
    StringOut diff;
    pheno_status st = pheno_pipeline_compare_oracle(p.get(), diff.out());
    if (diff.value)
      write_output((fs::path(out_dir) / "oracle_diff.json").string(), diff.str());
    if (st != PHENO_OK) return fail(p.get(), st);
  }

  StringOut report;
  if (pheno_pipeline_run_report(p.get(), report.out()) == PHENO_OK) std::cout << report.str();
  return 0;
}

int cmd_query(const std::string& data_dir, const std::string& asserted,
              const std::string& inferred, const std::string& rq, const std::string& out,
              const std::string& format, const std::string& base_iri) {
  DatasetPtr d(pheno_dataset_new(base_iri.empty() ? nullptr : base_iri.c_str()),
               &pheno_dataset_free);
  std::string asserted_path = asserted, inferred_path = inferred;
  if (!data_dir.empty()) {
    asserted_path = (fs::path(data_dir) / "asserted.ttl").string();
    std::string inf = (fs::path(data_dir) / "inferred.ttl").string();
    if (fs::exists(inf)) inferred_path = inf;
  }
  if (asserted_path.empty()) {
    std::cerr << "error: no dataset given (use --data or --asserted)\n";
    return 2;
  }
  if (auto st = pheno_dataset_load_turtle(d.get(), asserted_path.c_str(), "asserted");
      st != PHENO_OK)
    return fail_ds(d.get(), st);
  if (!inferred_path.empty())
    if (auto st = pheno_dataset_load_turtle(d.get(), inferred_path.c_str(), "inferred");
        st != PHENO_OK)
      return fail_ds(d.get(), st);

  StringOut result;
  if (auto st = pheno_dataset_query_file(d.get(), rq.c_str(), format.c_str(), result.out());
      st != PHENO_OK)
    return fail_ds(d.get(), st);
  return write_output(out, result.str()) ? 0 : 1;
}

int cmd_export(const std::string& in, const std::string& out, const std::string& format) {
  StringOut result, err;
  pheno_status st = pheno_export_ontology(in.c_str(), format.c_str(), result.out(), err.out());
  if (st != PHENO_OK) {
    std::cerr << "error: " << err.str() << "\n";
    return exit_code(st);
  }
  return write_output(out, result.str()) ? 0 : 1;
}

int cmd_oracle(const std::string& def, const std::string& ehr, const std::string& out) {
  StringOut result, err;
  pheno_status st = pheno_oracle_classify(def.c_str(), ehr.c_str(), result.out(), err.out());
  if (st != PHENO_OK) {
    std::cerr << "error: " << err.str() << "\n";
    return exit_code(st);
  }
  return write_output(out, result.str()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phenotype ontology compiler and cohort engine"};
  app.require_subcommand(1);

  std::string def, ontology, queries_dir, ehr, out, base_iri, data_dir, asserted, inferred, rq;
  std::string query_format = "csv", export_format = "owl-xml";
  bool owl_xml = false, verify_disjoint = false, compare_oracle = false;

  auto* build = app.add_subcommand("build", "compile a phenotype definition into ontology + queries");
  build->add_option("--def", def, "phenotype definition JSON")->required()->check(CLI::ExistingFile);
  build->add_option("--out", out, "output directory")->required();
  build->add_option("--base-iri", base_iri, "override the ontology base IRI");
  build->add_flag("--owl-xml", owl_xml, "also export OWL/XML");

  auto* run = app.add_subcommand("run", "build, ingest EHR data, reason, and extract cohorts");
  auto* run_def = run->add_option("--def", def, "phenotype definition JSON")->check(CLI::ExistingFile);
  auto* run_ont = run->add_option("--ontology", ontology, "ontology Turtle (instead of --def)")
                      ->check(CLI::ExistingFile);
  run->add_option("--queries", queries_dir, "directory of cohort .rq files (with --ontology)");
  run->add_option("--ehr", ehr, "EHR events CSV")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory")->required();
  run->add_option("--base-iri", base_iri, "override the ontology base IRI");
  run->add_flag("--verify-disjoint", verify_disjoint, "require cohorts to partition the subjects");
  run->add_flag("--compare-oracle", compare_oracle,
                "cross-check cohorts against the reference oracle");
  run_def->excludes(run_ont);
  run_ont->needs(run->get_option("--queries"));

  auto* query = app.add_subcommand("query", "evaluate a SPARQL query over a materialized dataset");
  query->add_option("--data", data_dir, "run output directory (asserted.ttl [+ inferred.ttl])");
  query->add_option("--asserted", asserted, "asserted-graph Turtle file")->check(CLI::ExistingFile);
  query->add_option("--inferred", inferred, "inferred-graph Turtle file")->check(CLI::ExistingFile);
  query->add_option("--rq", rq, "query file")->required()->check(CLI::ExistingFile);
  query->add_option("--out", out, "result file ('-' = stdout)");
  query->add_option("--format", query_format, "csv or jsonl");
  query->add_option("--base-iri", base_iri, "dataset base IRI");

  auto* exp = app.add_subcommand("export", "convert an ontology Turtle file");
  exp->add_option("--in", asserted, "ontology Turtle file")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", out, "output file ('-' = stdout)");
  exp->add_option("--format", export_format, "owl-xml or nt");

  auto* oracle = app.add_subcommand("oracle", "reference-oracle classification of an EHR file");
  oracle->add_option("--def", def, "phenotype definition JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--ehr", ehr, "EHR events CSV")->required()->check(CLI::ExistingFile);
  oracle->add_option("--out", out, "result file ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (build->parsed()) return cmd_build(def, out, base_iri, owl_xml);
  if (run->parsed()) {
    if (def.empty() && ontology.empty()) {
      std::cerr << "error: run needs --def or --ontology\n";
      return 2;
    }
    return cmd_run(def, ontology, queries_dir, ehr, out, base_iri, verify_disjoint,
                   compare_oracle);
  }
  if (query->parsed()) return cmd_query(data_dir, asserted, inferred, rq, out, query_format, base_iri);
  if (exp->parsed()) return cmd_export(asserted, out, export_format);
  if (oracle->parsed()) return cmd_oracle(def, ehr, out);
  return 2;
}
