#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "owl/model.hpp"
#include "pipeline/types.hpp"
#include "sparql/query.hpp"

namespace pheno::pipeline {

// Generated class-name grammar. Injective for valid component names (which
// never end in _<digits>).
std::string core_class_iri(const std::string& base, const std::string& name);
std::string phenotype_code_class(const std::string& base, const std::string& phenotype);
std::string component_code_class(const std::string& base, const std::string& component);
std::string category_code_class(const std::string& base, const std::string& component,
                                int category);
std::string subject_with_component_class(const std::string& base, const std::string& component);
std::string subject_with_category_class(const std::string& base, const std::string& component,
                                        int category);
std::string code_individual_iri(const std::string& base, Terminology terminology,
                                const std::string& code);
std::string patient_iri(const std::string& base, const std::string& patient_id);
// inverse of patient_iri; empty optional when the IRI is not a patient
std::optional<std::string> patient_id_from_iri(const std::string& base, const std::string& iri);

struct NamedQuery {
  std::string cohort;
  std::string text;  // canonical .rq form
  sparql::Query query;
};

struct CompiledPhenotype {
  PhenotypeDef def;
  owl::Ontology ontology;
  std::vector<NamedQuery> queries;
  std::map<std::string, std::set<int>> categories;  // component -> categories seen
  std::vector<std::string> warnings;
};

// Step 1: the generic structural core. Declares subject/code/component/
// category, the single `obtained` property, and the phenotype code scaffold.
owl::Ontology emit_core(const std::string& base, const std::string& phenotype_name);

// Step 2: one codelist into the ontology. Creates the component class, one
// class per category, and one individual per code (label = description).
// Duplicate (terminology, code) rows within a category warn; the same code in
// two categories of one component is an error.
void ingest_codelist(const std::vector<CodelistEntry>& entries, const std::string& component,
                     const std::string& base, owl::Ontology& ontology,
                     std::map<std::string, std::set<int>>& categories,
                     std::vector<std::string>& warnings);

// Step 3: phenotype logic into axioms plus one SELECT query per cohort.
std::vector<NamedQuery> compile_logic(const PhenotypeDef& def, owl::Ontology& ontology,
                                      const std::map<std::string, std::set<int>>& categories);

// Steps 1-3 end to end from parsed codelists.
CompiledPhenotype compile_phenotype(
    const PhenotypeDef& def,
    const std::map<std::string, std::vector<CodelistEntry>>& codelists);

}  // namespace pheno::pipeline
