#pragma once

#include <string>

#include "owl/model.hpp"

namespace pheno::owl {

// Write-only OWL/XML export. Element subset: Ontology, Declaration,
// SubClassOf, EquivalentClasses, DisjointClasses, ObjectSomeValuesFrom,
// ObjectMinCardinality, ObjectUnionOf, ObjectIntersectionOf,
// ObjectComplementOf, ClassAssertion, ObjectPropertyAssertion, plus
// AnnotationAssertion for rdfs:label annotations.
std::string export_owl_xml(const Ontology& ontology);

}  // namespace pheno::owl
