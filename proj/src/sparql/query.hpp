#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rdf/term.hpp"

namespace pheno::sparql {

struct Variable {
  std::string name;  // without '?'

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

// Prefixed names stay unresolved until evaluation.
struct PrefixedName {
  std::string text;  // "clb:subject"

  friend bool operator==(const PrefixedName&, const PrefixedName&) = default;
};

using PatternTerm = std::variant<Variable, rdf::Term, PrefixedName>;

struct TriplePattern {
  PatternTerm s;
  PatternTerm p;
  PatternTerm o;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct Bgp {
  std::vector<TriplePattern> patterns;

  friend bool operator==(const Bgp&, const Bgp&) = default;
};

struct Query {
  std::map<std::string, std::string> prefixes;
  std::vector<std::string> projected;  // variable names, in SELECT order
  bool distinct = false;
  Bgp where;
  std::vector<Bgp> negations;  // FILTER NOT EXISTS blocks
};

struct SolutionRow {
  std::map<std::string, rdf::Term> bindings;  // exactly the projected variables

  friend bool operator==(const SolutionRow&, const SolutionRow&) = default;
};

}  // namespace pheno::sparql
