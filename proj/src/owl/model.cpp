#include "owl/model.hpp"

#include <algorithm>

#include "support/error.hpp"

namespace pheno::owl {

using rdf::Term;
using rdf::Triple;
namespace vocab = rdf::vocab;

// ---------------------------------------------------------------------------
// ClassExpr

ClassExpr ClassExpr::named(std::string iri) {
  if (!rdf::is_absolute_iri(iri))
    throw Error(ErrorKind::Validation, "named class must be an absolute IRI: " + iri);
  return ClassExpr(Kind::Named, std::move(iri), 0, {});
}

ClassExpr ClassExpr::union_of(std::vector<ClassExpr> operands) {
  if (operands.size() < 2)
    throw Error(ErrorKind::Validation, "owl:unionOf requires at least 2 operands");
  return ClassExpr(Kind::Union, {}, 0, std::move(operands));
}

ClassExpr ClassExpr::intersection_of(std::vector<ClassExpr> operands) {
  if (operands.size() < 2)
    throw Error(ErrorKind::Validation, "owl:intersectionOf requires at least 2 operands");
  return ClassExpr(Kind::Intersection, {}, 0, std::move(operands));
}

ClassExpr ClassExpr::some(std::string property, ClassExpr filler) {
  return ClassExpr(Kind::Some, std::move(property), 0, {std::move(filler)});
}

ClassExpr ClassExpr::min_card(uint32_t n, std::string property, ClassExpr filler) {
  if (n < 1) throw Error(ErrorKind::Validation, "min cardinality must be >= 1");
  return ClassExpr(Kind::MinCard, std::move(property), n, {std::move(filler)});
}

ClassExpr ClassExpr::complement_of(ClassExpr operand) {
  return ClassExpr(Kind::Complement, {}, 0, {std::move(operand)});
}

bool ClassExpr::contains_complement() const {
  if (kind_ == Kind::Complement) return true;
  for (const auto& a : args_)
    if (a.contains_complement()) return true;
  return false;
}

void ClassExpr::collect_named(std::set<std::string>& out) const {
  if (kind_ == Kind::Named) out.insert(name_);
  for (const auto& a : args_) a.collect_named(out);
}

std::string ClassExpr::key() const {
  switch (kind_) {
    case Kind::Named:
      return "<" + name_ + ">";
    case Kind::Union:
    case Kind::Intersection: {
      std::string out = kind_ == Kind::Union ? "union(" : "intersection(";
      for (size_t i = 0; i < args_.size(); ++i) {
        if (i) out += ",";
        out += args_[i].key();
      }
      return out + ")";
    }
    case Kind::Some:
      return "some(<" + name_ + ">," + args_.front().key() + ")";
    case Kind::MinCard:
      return "min(" + std::to_string(n_) + ",<" + name_ + ">," + args_.front().key() + ")";
    case Kind::Complement:
      return "complement(" + args_.front().key() + ")";
  }
  return {};
}

ClassExpr ClassExpr::normalized() const {
  ClassExpr copy = *this;
  for (auto& a : copy.args_) a = a.normalized();
  if (copy.kind_ == Kind::Union || copy.kind_ == Kind::Intersection) {
    std::sort(copy.args_.begin(), copy.args_.end(),
              [](const ClassExpr& a, const ClassExpr& b) { return a.key() < b.key(); });
  }
  return copy;
}

// ---------------------------------------------------------------------------
// Axiom

Axiom Axiom::subclass_of(ClassExpr sub, ClassExpr sup) {
  return Axiom{Kind::SubClassOf, {std::move(sub), std::move(sup)}, {}};
}

Axiom Axiom::equivalent(ClassExpr a, ClassExpr b) {
  return Axiom{Kind::EquivalentClasses, {std::move(a), std::move(b)}, {}};
}

Axiom Axiom::disjoint(std::vector<std::string> named_classes) {
  if (named_classes.size() < 2)
    throw Error(ErrorKind::Validation, "disjointness requires at least 2 classes");
  return Axiom{Kind::DisjointClasses, {}, std::move(named_classes)};
}

Axiom Axiom::class_assertion(ClassExpr cls, std::string individual) {
  return Axiom{Kind::ClassAssertion, {std::move(cls)}, {std::move(individual)}};
}

Axiom Axiom::property_assertion(std::string property, std::string subject, std::string object) {
  return Axiom{Kind::PropertyAssertion, {},
               {std::move(property), std::move(subject), std::move(object)}};
}

std::string Axiom::key() const {
  std::string out;
  switch (kind) {
    case Kind::SubClassOf:
      out = "sub(" + exprs[0].normalized().key() + "," + exprs[1].normalized().key() + ")";
      break;
    case Kind::EquivalentClasses: {
      std::string a = exprs[0].normalized().key(), b = exprs[1].normalized().key();
      if (b < a) std::swap(a, b);
      out = "equiv(" + a + "," + b + ")";
      break;
    }
    case Kind::DisjointClasses: {
      auto sorted = iris;
      std::sort(sorted.begin(), sorted.end());
      out = "disjoint(";
      for (const auto& c : sorted) out += "<" + c + ">";
      out += ")";
      break;
    }
    case Kind::ClassAssertion:
      out = "assert(" + exprs[0].normalized().key() + ",<" + iris[0] + ">)";
      break;
    case Kind::PropertyAssertion:
      out = "prop(<" + iris[0] + ">,<" + iris[1] + ">,<" + iris[2] + ">)";
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ontology

void Ontology::validate() const {
  std::set<std::string> named;
  for (const Axiom& ax : axioms) {
    for (const ClassExpr& e : ax.exprs) e.collect_named(named);
    if (ax.kind == Axiom::Kind::DisjointClasses)
      for (const auto& c : ax.iris) named.insert(c);
  }
  for (const auto& c : named) {
    if (!declared_classes.contains(c))
      throw Error(ErrorKind::Validation, "class used but not declared: <" + c + ">");
  }
}

bool Ontology::structurally_equal(const Ontology& other) const {
  if (iri != other.iri) return false;
  if (declared_classes != other.declared_classes) return false;
  if (declared_properties != other.declared_properties) return false;
  if (labels != other.labels) return false;
  auto keys = [](const Ontology& o) {
    std::vector<std::string> ks;
    ks.reserve(o.axioms.size());
    for (const Axiom& ax : o.axioms) ks.push_back(ax.key());
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  return keys(*this) == keys(other);
}

// ---------------------------------------------------------------------------
// to_triples

namespace {

class TripleEmitter {
 public:
  TripleEmitter(rdf::Dataset& ds, std::string graph) : ds_(ds), graph_(std::move(graph)) {}

  void emit(Term s, const char* p, Term o) {
    ds_.insert(graph_, Triple{std::move(s), Term::iri(p), std::move(o)});
  }

  Term rdf_list(const std::vector<Term>& items) {
    Term tail = Term::iri(vocab::kRdfNil);
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      Term node = fresh_blank();
      emit(node, vocab::kRdfFirst, *it);
      emit(node, vocab::kRdfRest, tail);
      tail = node;
    }
    return tail;
  }

  // Renders a class expression as an RDF node, emitting the support triples.
  Term expr_node(const ClassExpr& e) {
    switch (e.kind()) {
      case ClassExpr::Kind::Named:
        return Term::iri(e.iri());
      case ClassExpr::Kind::Union:
      case ClassExpr::Kind::Intersection: {
        Term node = fresh_blank();
        emit(node, vocab::kRdfType, Term::iri(vocab::kOwlClass));
        std::vector<Term> items;
        items.reserve(e.operands().size());
        for (const auto& op : e.operands()) items.push_back(expr_node(op));
        emit(node,
             e.kind() == ClassExpr::Kind::Union ? vocab::kOwlUnionOf : vocab::kOwlIntersectionOf,
             rdf_list(items));
        return node;
      }
      case ClassExpr::Kind::Some: {
        Term node = fresh_blank();
        emit(node, vocab::kRdfType, Term::iri(vocab::kOwlRestriction));
        emit(node, vocab::kOwlOnProperty, Term::iri(e.property()));
        emit(node, vocab::kOwlSomeValuesFrom, expr_node(e.filler()));
        return node;
      }
      case ClassExpr::Kind::MinCard: {
        Term node = fresh_blank();
        emit(node, vocab::kRdfType, Term::iri(vocab::kOwlRestriction));
        emit(node, vocab::kOwlOnProperty, Term::iri(e.property()));
        emit(node, vocab::kOwlMinQualifiedCardinality,
             Term::literal(std::to_string(e.cardinality()), vocab::kXsdNonNegativeInteger));
        emit(node, vocab::kOwlOnClass, expr_node(e.filler()));
        return node;
      }
      case ClassExpr::Kind::Complement: {
        Term node = fresh_blank();
        emit(node, vocab::kRdfType, Term::iri(vocab::kOwlClass));
        emit(node, vocab::kOwlComplementOf, expr_node(e.operand()));
        return node;
      }
    }
    throw Error(ErrorKind::Internal, "unhandled class expression kind");
  }

 private:
  Term fresh_blank() { return Term::blank(ds_.pool().fresh_blank_label()); }

  rdf::Dataset& ds_;
  std::string graph_;
};

}  // namespace

void to_triples(const Ontology& ontology, rdf::Dataset& ds, const std::string& graph_iri) {
  TripleEmitter em(ds, graph_iri);

  if (!ontology.iri.empty())
    em.emit(Term::iri(ontology.iri), vocab::kRdfType, Term::iri(vocab::kOwlOntology));
  for (const auto& c : ontology.declared_classes)
    em.emit(Term::iri(c), vocab::kRdfType, Term::iri(vocab::kOwlClass));
  for (const auto& p : ontology.declared_properties)
    em.emit(Term::iri(p), vocab::kRdfType, Term::iri(vocab::kOwlObjectProperty));

  for (const Axiom& ax : ontology.axioms) {
    switch (ax.kind) {
      case Axiom::Kind::SubClassOf:
        em.emit(em.expr_node(ax.exprs[0]), vocab::kRdfsSubClassOf, em.expr_node(ax.exprs[1]));
        break;
      case Axiom::Kind::EquivalentClasses:
        em.emit(em.expr_node(ax.exprs[0]), vocab::kOwlEquivalentClass, em.expr_node(ax.exprs[1]));
        break;
      case Axiom::Kind::DisjointClasses: {
        if (ax.iris.size() == 2) {
          em.emit(Term::iri(ax.iris[0]), vocab::kOwlDisjointWith, Term::iri(ax.iris[1]));
        } else {
          Term node = Term::blank(ds.pool().fresh_blank_label());
          em.emit(node, vocab::kRdfType, Term::iri(vocab::kOwlAllDisjointClasses));
          std::vector<Term> items;
          for (const auto& c : ax.iris) items.push_back(Term::iri(c));
          em.emit(node, vocab::kOwlMembers, em.rdf_list(items));
        }
        break;
      }
      case Axiom::Kind::ClassAssertion:
        em.emit(Term::iri(ax.iris[0]), vocab::kRdfType, em.expr_node(ax.exprs[0]));
        break;
      case Axiom::Kind::PropertyAssertion:
        ds.insert(graph_iri, Triple{Term::iri(ax.iris[1]), Term::iri(ax.iris[0]),
                                    Term::iri(ax.iris[2])});
        break;
    }
  }

  for (const auto& [subject, label] : ontology.labels)
    em.emit(Term::iri(subject), vocab::kRdfsLabel, Term::literal(label));
}

// ---------------------------------------------------------------------------
// from_triples

namespace {

class TripleReader {
 public:
  TripleReader(const rdf::Dataset& ds, const std::string& graph_iri) {
    const rdf::Graph* g = ds.find_graph(graph_iri);
    if (g)
      for (const auto& ct : g->triples()) triples_.push_back(ds.decode(ct));
    for (const Triple& t : triples_) out_[node_key(t.s)].push_back(&t);
  }

  const std::vector<Triple>& triples() const { return triples_; }

  const Term* object_of(const Term& s, const char* p) const {
    auto it = out_.find(node_key(s));
    if (it == out_.end()) return nullptr;
    for (const Triple* t : it->second)
      if (t->p.value() == p) return &t->o;
    return nullptr;
  }

  // RDF list starting at `node`; throws Error(Parse) on a dangling chain.
  std::vector<Term> read_list(const Term& node) const {
    std::vector<Term> items;
    Term cur = node;
    std::set<std::string> seen;
    while (!(cur.is_iri() && cur.value() == vocab::kRdfNil)) {
      if (!seen.insert(node_key(cur)).second)
        throw Error(ErrorKind::Parse, "cyclic RDF list at node " + node_key(cur));
      const Term* first = object_of(cur, vocab::kRdfFirst);
      const Term* rest = object_of(cur, vocab::kRdfRest);
      if (!first || !rest)
        throw Error(ErrorKind::Parse, "dangling RDF list chain at node " + node_key(cur));
      items.push_back(*first);
      cur = *rest;
    }
    return items;
  }

  static std::string node_key(const Term& t) {
    return (t.is_blank() ? "_:" : "") + t.value();
  }

 private:
  std::vector<Triple> triples_;
  std::map<std::string, std::vector<const Triple*>> out_;
};

class OntologyReader {
 public:
  OntologyReader(const rdf::Dataset& ds, const std::string& graph_iri) : r_(ds, graph_iri) {}

  Ontology read() {
    Ontology out;

    // pass 1: declarations
    for (const Triple& t : r_.triples()) {
      if (t.p.value() != vocab::kRdfType || !t.s.is_iri() || !t.o.is_iri()) continue;
      if (t.o.value() == vocab::kOwlClass) out.declare_class(t.s.value());
      else if (t.o.value() == vocab::kOwlObjectProperty) out.declare_property(t.s.value());
      else if (t.o.value() == vocab::kOwlOntology) out.iri = t.s.value();
    }

    // pass 2: axioms, labels
    for (const Triple& t : r_.triples()) {
      const std::string& p = t.p.value();
      if (p == vocab::kRdfsSubClassOf) {
        out.add(Axiom::subclass_of(expr(t.s), expr(t.o)));
      } else if (p == vocab::kOwlEquivalentClass) {
        out.add(Axiom::equivalent(expr(t.s), expr(t.o)));
      } else if (p == vocab::kOwlDisjointWith) {
        out.add(Axiom::disjoint({t.s.value(), t.o.value()}));
      } else if (p == vocab::kOwlMembers) {
        const Term* ty = r_.object_of(t.s, vocab::kRdfType);
        if (ty && ty->is_iri() && ty->value() == vocab::kOwlAllDisjointClasses) {
          std::vector<std::string> classes;
          for (const Term& item : r_.read_list(t.o)) {
            if (!item.is_iri())
              throw Error(ErrorKind::Parse, "disjointness member must be a named class");
            classes.push_back(item.value());
          }
          out.add(Axiom::disjoint(std::move(classes)));
        }
      } else if (p == vocab::kRdfsLabel) {
        if (t.s.is_iri() && t.o.is_literal()) out.labels[t.s.value()] = t.o.value();
      } else if (p == vocab::kRdfType) {
        if (!t.s.is_iri() || !t.o.is_iri()) continue;
        const std::string& cls = t.o.value();
        if (cls.starts_with(vocab::kOwlNs) || cls.starts_with(vocab::kRdfNs) ||
            cls.starts_with(vocab::kRdfsNs))
          continue;
        // An IRI declared as a class is a class, anything else typed into a
        // class is an individual assertion.
        if (dataset_declared(t.s.value())) continue;
        out.add(Axiom::class_assertion(ClassExpr::named(cls), t.s.value()));
      } else if (declared_properties_.contains(p) && t.s.is_iri() && t.o.is_iri()) {
        out.add(Axiom::property_assertion(p, t.s.value(), t.o.value()));
      }
    }

    // Named classes referenced by axioms are declared so the invariant holds
    // for inputs (like Figure 5) that only declare the defined class.
    std::set<std::string> named;
    for (const Axiom& ax : out.axioms) {
      for (const ClassExpr& e : ax.exprs) e.collect_named(named);
      if (ax.kind == Axiom::Kind::DisjointClasses)
        for (const auto& c : ax.iris) named.insert(c);
    }
    for (const auto& c : named) out.declare_class(c);

    out.validate();
    return out;
  }

  void scan_properties() {
    for (const Triple& t : r_.triples()) {
      if (t.p.value() == vocab::kRdfType && t.s.is_iri() && t.o.is_iri()) {
        if (t.o.value() == vocab::kOwlObjectProperty) declared_properties_.insert(t.s.value());
        if (t.o.value() == vocab::kOwlClass) declared_classes_.insert(t.s.value());
      }
    }
  }

 private:
  bool dataset_declared(const std::string& iri) const { return declared_classes_.contains(iri); }

  ClassExpr expr(const Term& node) {
    if (node.is_iri()) return ClassExpr::named(node.value());
    if (node.is_literal())
      throw Error(ErrorKind::Parse, "literal cannot be a class expression");

    std::string key = TripleReader::node_key(node);
    if (!expr_visiting_.insert(key).second)
      throw Error(ErrorKind::Parse, "cyclic class expression at node " + key);
    struct Guard {
      std::set<std::string>& s;
      std::string k;
      ~Guard() { s.erase(k); }
    } guard{expr_visiting_, key};

    if (const Term* u = r_.object_of(node, vocab::kOwlUnionOf))
      return ClassExpr::union_of(expr_list(*u));
    if (const Term* i = r_.object_of(node, vocab::kOwlIntersectionOf))
      return ClassExpr::intersection_of(expr_list(*i));
    if (const Term* c = r_.object_of(node, vocab::kOwlComplementOf))
      return ClassExpr::complement_of(expr(*c));

    const Term* ty = r_.object_of(node, vocab::kRdfType);
    bool restriction = ty && ty->is_iri() && ty->value() == vocab::kOwlRestriction;
    const Term* some = r_.object_of(node, vocab::kOwlSomeValuesFrom);
    const Term* min = r_.object_of(node, vocab::kOwlMinQualifiedCardinality);
    if (restriction || some || min) {
      const Term* prop = r_.object_of(node, vocab::kOwlOnProperty);
      if (!prop || !prop->is_iri())
        throw Error(ErrorKind::Parse,
                    "restriction missing owl:onProperty at node " + TripleReader::node_key(node));
      if (some) return ClassExpr::some(prop->value(), expr(*some));
      if (min) {
        const Term* on_class = r_.object_of(node, vocab::kOwlOnClass);
        if (!on_class)
          throw Error(ErrorKind::Parse,
                      "cardinality restriction missing owl:onClass at node " +
                          TripleReader::node_key(node));
        uint32_t n = 0;
        try {
          n = static_cast<uint32_t>(std::stoul(min->value()));
        } catch (...) {
          throw Error(ErrorKind::Parse, "invalid cardinality literal: " + min->value());
        }
        return ClassExpr::min_card(n, prop->value(), expr(*on_class));
      }
      throw Error(ErrorKind::Parse,
                  "restriction missing filler at node " + TripleReader::node_key(node));
    }
    throw Error(ErrorKind::Parse,
                "blank node is not a class expression: " + TripleReader::node_key(node));
  }

  std::vector<ClassExpr> expr_list(const Term& head) {
    std::vector<ClassExpr> out;
    for (const Term& item : r_.read_list(head)) out.push_back(expr(item));
    return out;
  }

  TripleReader r_;
  std::set<std::string> declared_properties_;
  std::set<std::string> declared_classes_;
  std::set<std::string> expr_visiting_;
};

}  // namespace

Ontology from_triples(const rdf::Dataset& ds, const std::string& graph_iri) {
  OntologyReader reader(ds, graph_iri);
  reader.scan_properties();
  return reader.read();
}

}  // namespace pheno::owl
