#pragma once

#include <string>
#include <vector>

#include "owl/model.hpp"
#include "rdf/dataset.hpp"

namespace pheno::owl {

struct Inconsistency {
  std::string individual;
  std::string class_a;
  std::string class_b;

  friend bool operator==(const Inconsistency&, const Inconsistency&) = default;
  friend auto operator<=>(const Inconsistency&, const Inconsistency&) = default;
};

struct InferenceResult {
  // Novel (individual, named class) memberships, sorted; disjoint from the
  // class assertions present in the asserted graph.
  std::vector<std::pair<std::string, std::string>> inferred;
  int iterations = 0;
  std::vector<Inconsistency> inconsistencies;
};

// Forward-chaining instance classification to fixpoint. Derives memberships
// through subclass/equivalence edges, union/intersection introduction and
// existential introduction over property assertions; memberships of complex
// expressions stay internal. Only positive memberships are derived (open
// world). Novel named-class memberships are written to the `inferred` graph.
//
// Throws Error(Validation) when any axiom reaches a ComplementOf expression;
// negation belongs in query-time NOT EXISTS, never in materialization.
// Disjointness violations do not abort; they are reported.
InferenceResult materialize(const Ontology& ontology, rdf::Dataset& ds);

// True iff (individual, class) is a membership in asserted or inferred.
// Throws Error(NotFound) for a class IRI the ontology does not declare.
bool entails(const Ontology& ontology, const rdf::Dataset& ds, const std::string& individual_iri,
             const std::string& class_iri);

// Individuals present in two classes of a DisjointClasses axiom, over the
// asserted and inferred graphs.
std::vector<Inconsistency> check_disjointness(const Ontology& ontology, const rdf::Dataset& ds);

}  // namespace pheno::owl
