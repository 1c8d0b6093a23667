#include "owl/owlxml.hpp"

#include <sstream>

#include "support/error.hpp"

namespace pheno::owl {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void write_expr(std::ostringstream& out, const ClassExpr& e, int indent) {
  std::string pad(static_cast<size_t>(indent), ' ');
  switch (e.kind()) {
    case ClassExpr::Kind::Named:
      out << pad << "<Class IRI=\"" << xml_escape(e.iri()) << "\"/>\n";
      return;
    case ClassExpr::Kind::Union:
    case ClassExpr::Kind::Intersection: {
      const char* tag =
          e.kind() == ClassExpr::Kind::Union ? "ObjectUnionOf" : "ObjectIntersectionOf";
      out << pad << "<" << tag << ">\n";
      for (const auto& op : e.operands()) write_expr(out, op, indent + 2);
      out << pad << "</" << tag << ">\n";
      return;
    }
    case ClassExpr::Kind::Some:
      out << pad << "<ObjectSomeValuesFrom>\n";
      out << pad << "  <ObjectProperty IRI=\"" << xml_escape(e.property()) << "\"/>\n";
      write_expr(out, e.filler(), indent + 2);
      out << pad << "</ObjectSomeValuesFrom>\n";
      return;
    case ClassExpr::Kind::MinCard:
      out << pad << "<ObjectMinCardinality cardinality=\"" << e.cardinality() << "\">\n";
      out << pad << "  <ObjectProperty IRI=\"" << xml_escape(e.property()) << "\"/>\n";
      write_expr(out, e.filler(), indent + 2);
      out << pad << "</ObjectMinCardinality>\n";
      return;
    case ClassExpr::Kind::Complement:
      out << pad << "<ObjectComplementOf>\n";
      write_expr(out, e.operand(), indent + 2);
      out << pad << "</ObjectComplementOf>\n";
      return;
  }
  throw Error(ErrorKind::Internal, "unhandled class expression kind");
}

}  // namespace

std::string export_owl_xml(const Ontology& ontology) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<Ontology xmlns=\"http://www.w3.org/2002/07/owl#\" ontologyIRI=\""
      << xml_escape(ontology.iri) << "\">\n";

  for (const auto& c : ontology.declared_classes)
    out << "  <Declaration><Class IRI=\"" << xml_escape(c) << "\"/></Declaration>\n";
  for (const auto& p : ontology.declared_properties)
    out << "  <Declaration><ObjectProperty IRI=\"" << xml_escape(p)
        << "\"/></Declaration>\n";

  for (const Axiom& ax : ontology.axioms) {
    switch (ax.kind) {
      case Axiom::Kind::SubClassOf:
        out << "  <SubClassOf>\n";
        write_expr(out, ax.exprs[0], 4);
        write_expr(out, ax.exprs[1], 4);
        out << "  </SubClassOf>\n";
        break;
      case Axiom::Kind::EquivalentClasses:
        out << "  <EquivalentClasses>\n";
        write_expr(out, ax.exprs[0], 4);
        write_expr(out, ax.exprs[1], 4);
        out << "  </EquivalentClasses>\n";
        break;
      case Axiom::Kind::DisjointClasses:
        out << "  <DisjointClasses>\n";
        for (const auto& c : ax.iris)
          out << "    <Class IRI=\"" << xml_escape(c) << "\"/>\n";
        out << "  </DisjointClasses>\n";
        break;
      case Axiom::Kind::ClassAssertion:
        out << "  <ClassAssertion>\n";
        write_expr(out, ax.exprs[0], 4);
        out << "    <NamedIndividual IRI=\"" << xml_escape(ax.iris[0]) << "\"/>\n";
        out << "  </ClassAssertion>\n";
        break;
      case Axiom::Kind::PropertyAssertion:
        out << "  <ObjectPropertyAssertion>\n";
        out << "    <ObjectProperty IRI=\"" << xml_escape(ax.iris[0]) << "\"/>\n";
        out << "    <NamedIndividual IRI=\"" << xml_escape(ax.iris[1]) << "\"/>\n";
        out << "    <NamedIndividual IRI=\"" << xml_escape(ax.iris[2]) << "\"/>\n";
        out << "  </ObjectPropertyAssertion>\n";
        break;
    }
  }

  for (const auto& [subject, label] : ontology.labels) {
    out << "  <AnnotationAssertion>\n";
    out << "    <AnnotationProperty IRI=\"http://www.w3.org/2000/01/rdf-schema#label\"/>\n";
    out << "    <IRI>" << xml_escape(subject) << "</IRI>\n";
    out << "    <Literal>" << xml_escape(label) << "</Literal>\n";
    out << "  </AnnotationAssertion>\n";
  }

  out << "</Ontology>\n";
  return out.str();
}

}  // namespace pheno::owl
