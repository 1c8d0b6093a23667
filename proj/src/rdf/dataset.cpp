#include "rdf/dataset.hpp"

#include <algorithm>

#include "support/error.hpp"

namespace pheno::rdf {

TermId TermPool::intern(const Term& t) {
  auto it = ids_.find(t);
  if (it != ids_.end()) return it->second;
  TermId id = static_cast<TermId>(terms_.size());
  terms_.push_back(t);
  ids_.emplace(t, id);
  return id;
}

std::optional<TermId> TermPool::find(const Term& t) const {
  auto it = ids_.find(t);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const Term& TermPool::term(TermId id) const { return terms_.at(id); }

std::string TermPool::fresh_blank_label() { return "b" + std::to_string(blank_counter_++); }

bool Graph::insert(CodedTriple t) {
  auto [it, added] = triples_.insert(t);
  if (!added) return false;

  auto& subs = po_[{t.p, t.o}];
  subs.insert(std::lower_bound(subs.begin(), subs.end(), t.s), t.s);

  auto& sp = osp_[t.o];
  auto pair = std::make_pair(t.s, t.p);
  sp.insert(std::lower_bound(sp.begin(), sp.end(), pair), pair);
  return true;
}

void Graph::match(OptId s, OptId p, OptId o,
                  const std::function<void(const CodedTriple&)>& emit) const {
  if (s) {
    // Range scan on the (s,p,o)-ordered primary set.
    auto lo = p ? triples_.lower_bound({*s, *p, o ? *o : 0})
                : triples_.lower_bound({*s, 0, 0});
    for (auto it = lo; it != triples_.end() && it->s == *s; ++it) {
      if (p && it->p != *p) break;
      if (o && it->o != *o) continue;
      emit(*it);
    }
    return;
  }
  if (p && o) {
    if (const auto* subs = subjects_for(*p, *o))
      for (TermId sub : *subs) emit({sub, *p, *o});
    return;
  }
  if (o) {
    auto it = osp_.find(*o);
    if (it == osp_.end()) return;
    for (auto [sub, pred] : it->second) emit({sub, pred, *o});
    return;
  }
  if (p) {
    // Prefix scan of the predicate-object index.
    for (auto it = po_.lower_bound({*p, 0}); it != po_.end() && it->first.first == *p; ++it)
      for (TermId sub : it->second) emit({sub, it->first.first, it->first.second});
    return;
  }
  for (const auto& t : triples_) emit(t);
}

const std::vector<TermId>* Graph::subjects_for(TermId p, TermId o) const {
  auto it = po_.find({p, o});
  return it == po_.end() ? nullptr : &it->second;
}

size_t Graph::count_match(OptId s, OptId p, OptId o) const {
  size_t n = 0;
  match(s, p, o, [&](const CodedTriple&) { ++n; });
  return n;
}

Dataset::Dataset(std::string base_iri) : base_(std::move(base_iri)) {
  graphs_[asserted_graph()];
  graphs_[inferred_graph()];
  prefixes_["rdf"] = vocab::kRdfNs;
  prefixes_["rdfs"] = vocab::kRdfsNs;
  prefixes_["owl"] = vocab::kOwlNs;
  prefixes_["xsd"] = vocab::kXsdNs;
  prefixes_["clb"] = base_;
  prefixes_[""] = base_;
}

void Dataset::register_prefix(const std::string& prefix, const std::string& ns) {
  prefixes_[prefix] = ns;
}

Term Dataset::resolve_prefixed(const std::string& prefixed_name) const {
  auto colon = prefixed_name.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorKind::Parse, "not a prefixed name: " + prefixed_name);
  std::string prefix = prefixed_name.substr(0, colon);
  auto it = prefixes_.find(prefix);
  if (it == prefixes_.end())
    throw Error(ErrorKind::NotFound, "unknown prefix: " + prefix);
  return Term::iri(it->second + prefixed_name.substr(colon + 1));
}

Graph& Dataset::graph(const std::string& graph_iri) { return graphs_[graph_iri]; }

const Graph* Dataset::find_graph(const std::string& graph_iri) const {
  auto it = graphs_.find(graph_iri);
  return it == graphs_.end() ? nullptr : &it->second;
}

std::vector<std::string> Dataset::graph_names() const {
  std::vector<std::string> names;
  names.reserve(graphs_.size());
  for (const auto& [name, _] : graphs_) names.push_back(name);
  return names;
}

bool Dataset::insert(const std::string& graph_iri, const Triple& t) {
  if (t.s.is_literal())
    throw Error(ErrorKind::Validation, "triple subject must not be a literal");
  if (!t.p.is_iri())
    throw Error(ErrorKind::Validation, "triple predicate must be an IRI");
  CodedTriple coded{pool_.intern(t.s), pool_.intern(t.p), pool_.intern(t.o)};
  return graph(graph_iri).insert(coded);
}

std::vector<Triple> Dataset::match(const std::optional<std::string>& graph_iri,
                                   const std::optional<Term>& s, const std::optional<Term>& p,
                                   const std::optional<Term>& o) const {
  // A bound term absent from the pool cannot match anything.
  OptId si, pi, oi;
  if (s) {
    si = pool_.find(*s);
    if (!si) return {};
  }
  if (p) {
    pi = pool_.find(*p);
    if (!pi) return {};
  }
  if (o) {
    oi = pool_.find(*o);
    if (!oi) return {};
  }
  std::vector<Triple> out;
  match_coded(graph_iri, si, pi, oi, [&](const CodedTriple& t) { out.push_back(decode(t)); });
  return out;
}

void Dataset::match_coded(const std::optional<std::string>& graph_iri, OptId s, OptId p, OptId o,
                          const std::function<void(const CodedTriple&)>& emit) const {
  if (graph_iri) {
    if (const Graph* g = find_graph(*graph_iri)) g->match(s, p, o, emit);
    return;
  }
  if (graphs_.size() == 1) {
    graphs_.begin()->second.match(s, p, o, emit);
    return;
  }
  // Union over graphs with duplicates collapsed.
  std::vector<CodedTriple> seen;
  for (const auto& [_, g] : graphs_) g.match(s, p, o, [&](const CodedTriple& t) { seen.push_back(t); });
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (const auto& t : seen) emit(t);
}

size_t Dataset::count_match_coded(const std::optional<std::string>& graph_iri, OptId s, OptId p,
                                  OptId o) const {
  size_t n = 0;
  match_coded(graph_iri, s, p, o, [&](const CodedTriple&) { ++n; });
  return n;
}

Triple Dataset::decode(const CodedTriple& t) const {
  return Triple{pool_.term(t.s), pool_.term(t.p), pool_.term(t.o)};
}

size_t Dataset::total_triples() const {
  size_t n = 0;
  for (const auto& [_, g] : graphs_) n += g.size();
  return n;
}

}  // namespace pheno::rdf
