#pragma once

#include <string>
#include <vector>

#include "rdf/dataset.hpp"
#include "sparql/query.hpp"

namespace pheno::sparql {

// Evaluates over the union of the dataset's graphs (asserted plus inferred
// once materialized). Bag semantics unless DISTINCT; each FILTER NOT EXISTS
// block anti-joins rows whose bindings extend to a match. Result order is
// deterministic: rows sorted by their binding terms.
std::vector<SolutionRow> evaluate(const Query& query, const rdf::Dataset& ds);

// header = variable names; cells are raw lexical values / IRIs
std::string results_to_csv(const Query& query, const std::vector<SolutionRow>& rows);
// one JSON object per line, variable name -> string value
std::string results_to_json_lines(const Query& query, const std::vector<SolutionRow>& rows);

}  // namespace pheno::sparql
