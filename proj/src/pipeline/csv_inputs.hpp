#pragma once

#include <string>
#include <vector>

#include "pipeline/types.hpp"

namespace pheno::pipeline {

// Codelist CSV: header `component,category,terminology,code,description`.
// Malformed rows are fatal (codelists are curated inputs). Throws
// Error(Parse) with file:line context.
std::vector<CodelistEntry> read_codelist_csv(const std::string& path);

// EHR CSV: header `patient_id,source,terminology,code,date`. Malformed rows
// (bad date, empty id, unknown enum, wrong arity) are skipped with a
// per-row diagnostic; well-formed rows are returned in file order.
std::vector<EhrRecord> read_ehr_csv(const std::string& path,
                                    std::vector<RowDiagnostic>& diagnostics,
                                    size_t* rows_read = nullptr);

bool valid_iso_date(const std::string& text);

}  // namespace pheno::pipeline
