#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rdf/term.hpp"

namespace pheno::rdf {

using TermId = uint32_t;

// Triples are dictionary-encoded; the canonical set is ordered by (s,p,o) so
// it doubles as the subject-first index.
struct CodedTriple {
  TermId s;
  TermId p;
  TermId o;

  friend bool operator==(const CodedTriple&, const CodedTriple&) = default;
  friend auto operator<=>(const CodedTriple&, const CodedTriple&) = default;
};

class TermPool {
 public:
  TermId intern(const Term& t);
  std::optional<TermId> find(const Term& t) const;
  const Term& term(TermId id) const;
  size_t size() const { return terms_.size(); }

  // Session-scoped blank labels; monotonically assigned so two parses into
  // the same dataset never collide.
  std::string fresh_blank_label();

 private:
  std::vector<Term> terms_;
  std::map<Term, TermId> ids_;
  uint64_t blank_counter_ = 0;
};

using OptId = std::optional<TermId>;

class Graph {
 public:
  bool insert(CodedTriple t);
  bool contains(CodedTriple t) const { return triples_.contains(t); }
  size_t size() const { return triples_.size(); }
  const std::set<CodedTriple>& triples() const { return triples_; }

  void match(OptId s, OptId p, OptId o, const std::function<void(const CodedTriple&)>& emit) const;

  // Subjects carrying (p, o); nullptr when none. Sorted ascending.
  const std::vector<TermId>* subjects_for(TermId p, TermId o) const;

  // Cheap cardinality estimate for join ordering.
  size_t count_match(OptId s, OptId p, OptId o) const;

 private:
  std::set<CodedTriple> triples_;
  std::map<std::pair<TermId, TermId>, std::vector<TermId>> po_;   // (p,o) -> subjects
  std::map<TermId, std::vector<std::pair<TermId, TermId>>> osp_;  // o -> (s,p)
};

enum class GraphSel { One, All };

// In-memory dataset with named graphs. The `asserted` and `inferred` graphs
// (under the base namespace) always exist.
class Dataset {
 public:
  explicit Dataset(std::string base_iri = vocab::kDefaultBase);

  const std::string& base_iri() const { return base_; }
  std::string asserted_graph() const { return base_ + "asserted"; }
  std::string inferred_graph() const { return base_ + "inferred"; }

  void register_prefix(const std::string& prefix, const std::string& ns);
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }
  // "clb:subject" -> IRI term; throws Error(NotFound) naming the prefix.
  Term resolve_prefixed(const std::string& prefixed_name) const;

  Graph& graph(const std::string& graph_iri);
  const Graph* find_graph(const std::string& graph_iri) const;
  std::vector<std::string> graph_names() const;

  // Returns true when the triple is new in that graph. Validates term roles.
  bool insert(const std::string& graph_iri, const Triple& t);

  // nullopt graph selects the union of all graphs (duplicates collapsed).
  std::vector<Triple> match(const std::optional<std::string>& graph_iri,
                            const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  void match_coded(const std::optional<std::string>& graph_iri, OptId s, OptId p, OptId o,
                   const std::function<void(const CodedTriple&)>& emit) const;
  size_t count_match_coded(const std::optional<std::string>& graph_iri, OptId s, OptId p,
                           OptId o) const;

  TermPool& pool() { return pool_; }
  const TermPool& pool() const { return pool_; }

  Triple decode(const CodedTriple& t) const;
  size_t total_triples() const;

 private:
  std::string base_;
  TermPool pool_;
  std::map<std::string, Graph> graphs_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace pheno::rdf
