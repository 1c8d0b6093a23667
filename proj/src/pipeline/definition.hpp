#pragma once

#include <string>

#include "pipeline/types.hpp"

namespace pheno::pipeline {

// Loads and validates a phenotype definition JSON file. Codelist paths are
// resolved relative to the definition file. Throws Error(Compile) with the
// file path in the message on schema violations, Error(Io) on unreadable
// files.
PhenotypeDef load_definition(const std::string& path);

PhenotypeDef parse_definition(const std::string& json_text, const std::string& source_path);

}  // namespace pheno::pipeline
