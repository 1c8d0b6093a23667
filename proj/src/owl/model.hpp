#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdf/dataset.hpp"

namespace pheno::owl {

// Class expressions of the OWL subset the phenotype logic needs: named
// classes, union, intersection, existential restriction, min-cardinality and
// complement. Complement never materializes; exclusions are handled at query
// time (open world).
class ClassExpr {
 public:
  enum class Kind { Named, Union, Intersection, Some, MinCard, Complement };

  static ClassExpr named(std::string iri);
  static ClassExpr union_of(std::vector<ClassExpr> operands);         // >= 2 operands
  static ClassExpr intersection_of(std::vector<ClassExpr> operands);  // >= 2 operands
  static ClassExpr some(std::string property, ClassExpr filler);
  static ClassExpr min_card(uint32_t n, std::string property, ClassExpr filler);  // n >= 1
  static ClassExpr complement_of(ClassExpr operand);

  Kind kind() const { return kind_; }
  const std::string& iri() const { return name_; }       // Named
  const std::string& property() const { return name_; }  // Some / MinCard
  uint32_t cardinality() const { return n_; }            // MinCard
  const std::vector<ClassExpr>& operands() const { return args_; }
  const ClassExpr& filler() const { return args_.front(); }   // Some / MinCard
  const ClassExpr& operand() const { return args_.front(); }  // Complement

  bool contains_complement() const;
  void collect_named(std::set<std::string>& out) const;

  // Canonical textual form; doubles as interning key and sort key.
  std::string key() const;
  // Union/intersection operands sorted by key, recursively (set semantics).
  ClassExpr normalized() const;

  friend bool operator==(const ClassExpr&, const ClassExpr&) = default;

 private:
  ClassExpr(Kind kind, std::string name, uint32_t n, std::vector<ClassExpr> args)
      : kind_(kind), name_(std::move(name)), n_(n), args_(std::move(args)) {}

  Kind kind_;
  std::string name_;  // Named iri, or property for Some/MinCard
  uint32_t n_ = 0;
  std::vector<ClassExpr> args_;
};

struct Axiom {
  enum class Kind { SubClassOf, EquivalentClasses, DisjointClasses, ClassAssertion,
                    PropertyAssertion };

  static Axiom subclass_of(ClassExpr sub, ClassExpr sup);
  static Axiom equivalent(ClassExpr a, ClassExpr b);
  static Axiom disjoint(std::vector<std::string> named_classes);  // >= 2, named only
  static Axiom class_assertion(ClassExpr cls, std::string individual);
  static Axiom property_assertion(std::string property, std::string subject,
                                  std::string object);

  Kind kind;
  std::vector<ClassExpr> exprs;   // SubClassOf/Equivalent: 2; ClassAssertion: 1
  std::vector<std::string> iris;  // Disjoint: classes; ClassAssertion: individual;
                                  // PropertyAssertion: property, subject, object

  std::string key() const;
  friend bool operator==(const Axiom&, const Axiom&) = default;
};

struct Ontology {
  std::string iri;
  std::vector<Axiom> axioms;
  std::set<std::string> declared_classes;
  std::set<std::string> declared_properties;
  std::map<std::string, std::string> labels;  // rdfs:label by subject IRI

  void declare_class(const std::string& iri) { declared_classes.insert(iri); }
  void declare_property(const std::string& iri) { declared_properties.insert(iri); }
  void add(Axiom axiom) { axioms.push_back(std::move(axiom)); }

  // Every named class referenced by an axiom must be declared; disjointness
  // operands must be named. Throws Error(Validation).
  void validate() const;

  // Structural comparison modulo operand order and axiom order.
  bool structurally_equal(const Ontology& other) const;
};

// Standard OWL-to-RDF mapping: unions/intersections become blank nodes with
// owl:unionOf/owl:intersectionOf lists, restrictions become owl:Restriction
// nodes, two-way disjointness becomes owl:disjointWith and wider disjointness
// an owl:AllDisjointClasses node with an owl:members list.
void to_triples(const Ontology& ontology, rdf::Dataset& ds, const std::string& graph_iri);

// Inverse of to_triples up to blank-node names and operand order. Throws
// Error(Parse) naming the offending node on dangling lists or restrictions
// missing owl:onProperty. Named classes encountered in axioms are declared.
Ontology from_triples(const rdf::Dataset& ds, const std::string& graph_iri);

}  // namespace pheno::owl
