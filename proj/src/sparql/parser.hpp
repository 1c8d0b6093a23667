#pragma once

#include <string_view>

#include "sparql/query.hpp"

namespace pheno::sparql {

// Parses the SPARQL subset: PREFIX, SELECT [DISTINCT] ?vars, WHERE with one
// basic graph pattern and any number of FILTER NOT EXISTS blocks. Throws
// Error(Parse) with a line:column position.
Query parse_query(std::string_view text);

}  // namespace pheno::sparql
