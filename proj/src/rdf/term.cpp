#include "rdf/term.hpp"

#include <cctype>

#include "support/error.hpp"

namespace pheno::rdf {

bool is_absolute_iri(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (size_t i = 1; i < s.size(); ++i) {
    char c = s[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
      return false;
  }
  return false;
}

Term Term::iri(std::string value) {
  if (!is_absolute_iri(value))
    throw Error(ErrorKind::Validation, "not an absolute IRI: <" + value + ">");
  return Term(TermKind::Iri, std::move(value), {}, {});
}

Term Term::blank(std::string label) {
  if (label.empty()) throw Error(ErrorKind::Validation, "blank node label must be non-empty");
  return Term(TermKind::Blank, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype) {
  if (datatype.empty()) datatype = vocab::kXsdString;
  return Term(TermKind::Literal, std::move(lexical), std::move(datatype), {});
}

Term Term::lang_literal(std::string lexical, std::string lang) {
  if (lang.empty()) throw Error(ErrorKind::Validation, "language tag must be non-empty");
  return Term(TermKind::Literal, std::move(lexical), vocab::kRdfLangString, std::move(lang));
}

}  // namespace pheno::rdf
