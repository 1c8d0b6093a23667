#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rdf/dataset.hpp"

namespace pheno::rdf {

struct ParseDiagnostic {
  enum class Severity { Error, Warning };
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
  Severity severity = Severity::Error;
};

// Parses the Turtle subset (@prefix, prefixed names, <IRI>, literals with
// datatype/lang, `a`, `;` `,`, blank-node property lists, collections) into
// ds/graph_iri. @prefix directives register into the dataset. Recoverable
// syntax errors produce a diagnostic and parsing resumes at the next
// statement.
std::vector<ParseDiagnostic> parse_turtle(std::string_view text, Dataset& ds,
                                          const std::string& graph_iri);

// Deterministic serialization: blank nodes are relabelled from structural
// signatures, triples sorted, prefixed names used where a registered prefix
// applies. Equal graphs (up to blank labels, acyclic blank structure) yield
// byte-identical output.
std::string serialize_turtle(const Dataset& ds, const std::string& graph_iri);

std::string serialize_ntriples(const Dataset& ds, const std::string& graph_iri);

// Throws Error(Io) on unreadable files and Error(Parse) carrying the first
// diagnostic when the file has syntax errors.
void load_turtle_file(const std::string& path, Dataset& ds, const std::string& graph_iri);

}  // namespace pheno::rdf
