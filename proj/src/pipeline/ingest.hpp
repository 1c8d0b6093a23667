#pragma once

#include <string>
#include <vector>

#include "owl/model.hpp"
#include "pipeline/types.hpp"
#include "rdf/dataset.hpp"

namespace pheno::pipeline {

// Step 4: EHR records into patient triples in the asserted graph. Every
// patient with a well-formed row becomes an individual asserted to `subject`;
// records whose (terminology, code) exists in the ontology's codelists add a
// <patient obtained code> triple plus a dated event node. Unknown codes are
// counted and skipped. Idempotent: event IRIs are content-derived, so
// re-ingesting the same file changes nothing.
IngestReport ingest_ehr(const std::vector<EhrRecord>& records, rdf::Dataset& ds,
                        const owl::Ontology& ontology, const std::string& base);

// File variant; row diagnostics for malformed rows land in the report.
IngestReport ingest_ehr_file(const std::string& path, rdf::Dataset& ds,
                             const owl::Ontology& ontology, const std::string& base);

}  // namespace pheno::pipeline
