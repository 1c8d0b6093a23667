#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pheno::rdf {

namespace vocab {

inline constexpr const char* kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* kOwlNs = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* kXsdNs = "http://www.w3.org/2001/XMLSchema#";

inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kRdfFirst = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
inline constexpr const char* kRdfRest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
inline constexpr const char* kRdfNil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
inline constexpr const char* kRdfLangString = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

inline constexpr const char* kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr const char* kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";

inline constexpr const char* kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr const char* kOwlObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr const char* kOwlOntology = "http://www.w3.org/2002/07/owl#Ontology";
inline constexpr const char* kOwlRestriction = "http://www.w3.org/2002/07/owl#Restriction";
inline constexpr const char* kOwlOnProperty = "http://www.w3.org/2002/07/owl#onProperty";
inline constexpr const char* kOwlSomeValuesFrom = "http://www.w3.org/2002/07/owl#someValuesFrom";
inline constexpr const char* kOwlMinQualifiedCardinality =
    "http://www.w3.org/2002/07/owl#minQualifiedCardinality";
inline constexpr const char* kOwlOnClass = "http://www.w3.org/2002/07/owl#onClass";
inline constexpr const char* kOwlUnionOf = "http://www.w3.org/2002/07/owl#unionOf";
inline constexpr const char* kOwlIntersectionOf = "http://www.w3.org/2002/07/owl#intersectionOf";
inline constexpr const char* kOwlComplementOf = "http://www.w3.org/2002/07/owl#complementOf";
inline constexpr const char* kOwlEquivalentClass = "http://www.w3.org/2002/07/owl#equivalentClass";
inline constexpr const char* kOwlDisjointWith = "http://www.w3.org/2002/07/owl#disjointWith";
inline constexpr const char* kOwlAllDisjointClasses =
    "http://www.w3.org/2002/07/owl#AllDisjointClasses";
inline constexpr const char* kOwlMembers = "http://www.w3.org/2002/07/owl#members";

inline constexpr const char* kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr const char* kXsdDate = "http://www.w3.org/2001/XMLSchema#date";
inline constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr const char* kXsdNonNegativeInteger =
    "http://www.w3.org/2001/XMLSchema#nonNegativeInteger";

// Base namespace of the engine; matches the prefix block of the bundled
// fixtures so serialized artifacts are bit-compatible with them.
inline constexpr const char* kDefaultBase = "https://www.caliberresearch.org/PhenotypeOntology#";

}  // namespace vocab

enum class TermKind : uint8_t { Iri, Blank, Literal };

// An IRI needs a scheme followed by ':' to count as absolute.
bool is_absolute_iri(std::string_view s);

class Term {
 public:
  static Term iri(std::string value);  // throws Error(Validation) if not absolute
  static Term blank(std::string label);
  static Term literal(std::string lexical, std::string datatype = vocab::kXsdString);
  static Term lang_literal(std::string lexical, std::string lang);

  TermKind kind() const { return kind_; }
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& lang() const { return lang_; }

  bool is_iri() const { return kind_ == TermKind::Iri; }
  bool is_blank() const { return kind_ == TermKind::Blank; }
  bool is_literal() const { return kind_ == TermKind::Literal; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Term(TermKind kind, std::string value, std::string datatype, std::string lang)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        lang_(std::move(lang)) {}

  TermKind kind_;
  std::string value_;
  std::string datatype_;  // literals only
  std::string lang_;      // literals only
};

struct Triple {
  Term s;
  Term p;
  Term o;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

}  // namespace pheno::rdf
