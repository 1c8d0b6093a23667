#include "owl/reasoner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "support/error.hpp"

namespace pheno::owl {

using rdf::Term;
namespace vocab = rdf::vocab;

namespace {

using Bits = std::vector<uint64_t>;

size_t words_for(size_t n) { return (n + 63) / 64; }
bool bit_test(const Bits& b, size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
void bit_set(Bits& b, size_t i) { b[i / 64] |= uint64_t(1) << (i % 64); }

class Materializer {
 public:
  Materializer(const Ontology& ont, rdf::Dataset& ds) : ont_(ont), ds_(ds) {}

  InferenceResult run() {
    reject_complement();
    build_expression_table();
    collect_abox();
    size_bitsets();
    seed_asserted();
    InferenceResult result;
    result.iterations = fixpoint();
    harvest(result);
    return result;
  }

 private:
  struct Node {
    ClassExpr::Kind kind;
    std::string name;  // Named iri or property
    uint32_t n = 0;
    std::vector<int> ops;
  };

  void reject_complement() {
    for (const Axiom& ax : ont_.axioms) {
      for (const ClassExpr& e : ax.exprs) {
        if (e.contains_complement()) {
          std::string context = "axiom " + ax.key();
          if (!ax.exprs.empty() && ax.exprs[0].kind() == ClassExpr::Kind::Named)
            context = "class <" + ax.exprs[0].iri() + ">";
          throw Error(ErrorKind::Validation,
                      "materialization rejected: ComplementOf reachable from " + context +
                          "; express negation as a query-time NOT EXISTS instead");
        }
      }
    }
  }

  int intern(const ClassExpr& e) {
    std::string key = e.normalized().key();
    auto it = by_key_.find(key);
    if (it != by_key_.end()) return it->second;

    Node node;
    node.kind = e.kind();
    switch (e.kind()) {
      case ClassExpr::Kind::Named:
        node.name = e.iri();
        break;
      case ClassExpr::Kind::Union:
      case ClassExpr::Kind::Intersection:
        for (const auto& op : e.operands()) node.ops.push_back(intern(op));
        break;
      case ClassExpr::Kind::Some:
      case ClassExpr::Kind::MinCard:
        node.name = e.property();
        node.n = e.kind() == ClassExpr::Kind::Some ? 1 : e.cardinality();
        node.ops.push_back(intern(e.filler()));
        break;
      case ClassExpr::Kind::Complement:
        throw Error(ErrorKind::Internal, "complement survived rejection check");
    }
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    by_key_.emplace(std::move(key), id);
    if (e.kind() == ClassExpr::Kind::Named) named_id_.emplace(e.iri(), id);
    return id;
  }

  void build_expression_table() {
    for (const auto& c : ont_.declared_classes) intern(ClassExpr::named(c));
    for (const Axiom& ax : ont_.axioms) {
      switch (ax.kind) {
        case Axiom::Kind::SubClassOf:
          edges_.emplace_back(intern(ax.exprs[0]), intern(ax.exprs[1]));
          break;
        case Axiom::Kind::EquivalentClasses: {
          int a = intern(ax.exprs[0]), b = intern(ax.exprs[1]);
          edges_.emplace_back(a, b);
          edges_.emplace_back(b, a);
          break;
        }
        case Axiom::Kind::ClassAssertion:
          seeded_assertions_.emplace_back(ax.iris[0], intern(ax.exprs[0]));
          break;
        default:
          break;
      }
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  void collect_abox() {
    std::set<std::string> indiv;
    auto type_id = ds_.pool().find(Term::iri(vocab::kRdfType));

    // class assertions from the dataset: x rdf:type C with C declared
    if (type_id) {
      ds_.match_coded(std::nullopt, std::nullopt, *type_id, std::nullopt,
                      [&](const rdf::CodedTriple& t) {
                        const Term& s = ds_.pool().term(t.s);
                        const Term& o = ds_.pool().term(t.o);
                        if (!s.is_iri() || !o.is_iri()) return;
                        if (!ont_.declared_classes.contains(o.value())) return;
                        dataset_types_.emplace_back(s.value(), o.value());
                        indiv.insert(s.value());
                      });
    }

    // property assertions from the dataset, declared properties only
    for (const auto& prop : ont_.declared_properties) {
      auto pid = ds_.pool().find(Term::iri(prop));
      if (!pid) continue;
      ds_.match_coded(std::nullopt, std::nullopt, *pid, std::nullopt,
                      [&](const rdf::CodedTriple& t) {
                        const Term& s = ds_.pool().term(t.s);
                        const Term& o = ds_.pool().term(t.o);
                        if (!s.is_iri() || !o.is_iri()) return;
                        prop_assertions_.emplace_back(prop, s.value(), o.value());
                        indiv.insert(s.value());
                        indiv.insert(o.value());
                      });
    }

    for (const Axiom& ax : ont_.axioms) {
      if (ax.kind == Axiom::Kind::ClassAssertion) {
        indiv.insert(ax.iris[0]);
      } else if (ax.kind == Axiom::Kind::PropertyAssertion) {
        prop_assertions_.emplace_back(ax.iris[0], ax.iris[1], ax.iris[2]);
        indiv.insert(ax.iris[1]);
        indiv.insert(ax.iris[2]);
      }
    }

    individuals_.assign(indiv.begin(), indiv.end());
    for (uint32_t i = 0; i < individuals_.size(); ++i) indiv_index_[individuals_[i]] = i;

    std::sort(prop_assertions_.begin(), prop_assertions_.end());
    prop_assertions_.erase(std::unique(prop_assertions_.begin(), prop_assertions_.end()),
                           prop_assertions_.end());
  }

  void size_bitsets() {
    words_ = words_for(individuals_.size());
    member_.assign(nodes_.size(), Bits(words_, 0));

    for (const auto& [prop, x, y] : prop_assertions_) {
      uint32_t xi = indiv_index_.at(x), yi = indiv_index_.at(y);
      auto& mask = pred_mask_[prop][yi];
      if (mask.empty()) mask.assign(words_, 0);
      bit_set(mask, xi);
      succ_lists_[prop][xi].push_back(yi);
    }
  }

  void seed_asserted() {
    for (const auto& [x, cls] : dataset_types_) {
      auto it = named_id_.find(cls);
      if (it != named_id_.end()) bit_set(member_[it->second], indiv_index_.at(x));
    }
    for (const auto& [x, expr_id] : seeded_assertions_)
      bit_set(member_[expr_id], indiv_index_.at(x));
  }

  // Jacobi-style rounds of the monotone consequence operator; every round
  // re-derives from the current state, so the result is order-independent.
  int fixpoint() {
    int iterations = 0;
    Bits tmp(words_, 0);
    bool changed = true;
    while (changed) {
      ++iterations;
      changed = false;

      for (size_t id = 0; id < nodes_.size(); ++id) {
        const Node& node = nodes_[id];
        switch (node.kind) {
          case ClassExpr::Kind::Named:
            break;
          case ClassExpr::Kind::Union:
            tmp.assign(words_, 0);
            for (int op : node.ops)
              for (size_t w = 0; w < words_; ++w) tmp[w] |= member_[op][w];
            changed |= merge(member_[id], tmp);
            break;
          case ClassExpr::Kind::Intersection: {
            tmp.assign(words_, ~uint64_t(0));
            for (int op : node.ops)
              for (size_t w = 0; w < words_; ++w) tmp[w] &= member_[op][w];
            changed |= merge(member_[id], tmp);
            break;
          }
          case ClassExpr::Kind::Some:
          case ClassExpr::Kind::MinCard: {
            if (node.n <= 1) {
              tmp.assign(words_, 0);
              auto masks = pred_mask_.find(node.name);
              if (masks != pred_mask_.end()) {
                const Bits& filler = member_[node.ops[0]];
                for (const auto& [y, mask] : masks->second) {
                  if (!bit_test(filler, y)) continue;
                  for (size_t w = 0; w < words_; ++w) tmp[w] |= mask[w];
                }
              }
              changed |= merge(member_[id], tmp);
            } else {
              changed |= apply_min_card(static_cast<int>(id), node);
            }
            break;
          }
          case ClassExpr::Kind::Complement:
            break;
        }
      }

      for (const auto& [from, to] : edges_) changed |= merge(member_[to], member_[from]);
    }
    return iterations;
  }

  bool apply_min_card(int id, const Node& node) {
    auto lists = succ_lists_.find(node.name);
    if (lists == succ_lists_.end()) return false;
    const Bits& filler = member_[node.ops[0]];
    bool changed = false;
    for (const auto& [x, ys] : lists->second) {
      if (bit_test(member_[id], x)) continue;
      uint32_t count = 0;
      for (uint32_t y : ys)
        if (bit_test(filler, y)) ++count;
      if (count >= node.n) {
        bit_set(member_[id], x);
        changed = true;
      }
    }
    return changed;
  }

  static bool merge(Bits& into, const Bits& from) {
    bool changed = false;
    for (size_t w = 0; w < into.size(); ++w) {
      uint64_t added = from[w] & ~into[w];
      if (added) {
        into[w] |= added;
        changed = true;
      }
    }
    return changed;
  }

  void harvest(InferenceResult& result) {
    // memberships already asserted (as triples in the asserted graph) are not
    // novel; everything else derived for a named class is
    std::set<std::pair<std::string, std::string>> asserted;
    auto type_id = ds_.pool().find(Term::iri(vocab::kRdfType));
    if (type_id) {
      if (const rdf::Graph* g = ds_.find_graph(ds_.asserted_graph())) {
        g->match(std::nullopt, *type_id, std::nullopt, [&](const rdf::CodedTriple& t) {
          const Term& s = ds_.pool().term(t.s);
          const Term& o = ds_.pool().term(t.o);
          if (s.is_iri() && o.is_iri()) asserted.emplace(s.value(), o.value());
        });
      }
    }
    for (const Axiom& ax : ont_.axioms) {
      if (ax.kind == Axiom::Kind::ClassAssertion &&
          ax.exprs[0].kind() == ClassExpr::Kind::Named)
        asserted.emplace(ax.iris[0], ax.exprs[0].iri());
    }

    const std::string inferred_graph = ds_.inferred_graph();
    for (const auto& [cls, id] : named_id_) {
      const Bits& bits = member_[id];
      for (uint32_t i = 0; i < individuals_.size(); ++i) {
        if (!bit_test(bits, i)) continue;
        if (asserted.contains({individuals_[i], cls})) continue;
        result.inferred.emplace_back(individuals_[i], cls);
        ds_.insert(inferred_graph,
                   rdf::Triple{Term::iri(individuals_[i]), Term::iri(vocab::kRdfType),
                               Term::iri(cls)});
      }
    }
    std::sort(result.inferred.begin(), result.inferred.end());

    // disjointness report over the final memberships
    for (const Axiom& ax : ont_.axioms) {
      if (ax.kind != Axiom::Kind::DisjointClasses) continue;
      for (size_t a = 0; a < ax.iris.size(); ++a) {
        for (size_t b = a + 1; b < ax.iris.size(); ++b) {
          auto ia = named_id_.find(ax.iris[a]);
          auto ib = named_id_.find(ax.iris[b]);
          if (ia == named_id_.end() || ib == named_id_.end()) continue;
          for (uint32_t i = 0; i < individuals_.size(); ++i) {
            if (bit_test(member_[ia->second], i) && bit_test(member_[ib->second], i))
              result.inconsistencies.push_back({individuals_[i], ax.iris[a], ax.iris[b]});
          }
        }
      }
    }
    std::sort(result.inconsistencies.begin(), result.inconsistencies.end());
    result.inconsistencies.erase(
        std::unique(result.inconsistencies.begin(), result.inconsistencies.end()),
        result.inconsistencies.end());
  }

  const Ontology& ont_;
  rdf::Dataset& ds_;

  std::vector<Node> nodes_;
  std::map<std::string, int> by_key_;
  std::map<std::string, int> named_id_;
  std::vector<std::pair<int, int>> edges_;

  std::vector<std::pair<std::string, int>> seeded_assertions_;   // (individual, expr id)
  std::vector<std::pair<std::string, std::string>> dataset_types_;
  std::vector<std::tuple<std::string, std::string, std::string>> prop_assertions_;

  std::vector<std::string> individuals_;
  std::map<std::string, uint32_t> indiv_index_;

  size_t words_ = 0;
  std::vector<Bits> member_;
  std::map<std::string, std::map<uint32_t, Bits>> pred_mask_;  // p -> y -> x mask
  std::map<std::string, std::map<uint32_t, std::vector<uint32_t>>> succ_lists_;
};

}  // namespace

InferenceResult materialize(const Ontology& ontology, rdf::Dataset& ds) {
  return Materializer(ontology, ds).run();
}

bool entails(const Ontology& ontology, const rdf::Dataset& ds, const std::string& individual_iri,
             const std::string& class_iri) {
  if (!ontology.declared_classes.contains(class_iri))
    throw Error(ErrorKind::NotFound, "class not declared: <" + class_iri + ">");
  auto matches = ds.match(std::nullopt, Term::iri(individual_iri),
                          Term::iri(vocab::kRdfType), Term::iri(class_iri));
  return !matches.empty();
}

std::vector<Inconsistency> check_disjointness(const Ontology& ontology, const rdf::Dataset& ds) {
  std::vector<Inconsistency> out;
  auto members_of = [&](const std::string& cls) {
    std::set<std::string> members;
    for (const auto& t :
         ds.match(std::nullopt, std::nullopt, Term::iri(vocab::kRdfType), Term::iri(cls)))
      if (t.s.is_iri()) members.insert(t.s.value());
    return members;
  };
  for (const Axiom& ax : ontology.axioms) {
    if (ax.kind != Axiom::Kind::DisjointClasses) continue;
    std::vector<std::set<std::string>> member_sets;
    member_sets.reserve(ax.iris.size());
    for (const auto& c : ax.iris) member_sets.push_back(members_of(c));
    for (size_t a = 0; a < ax.iris.size(); ++a)
      for (size_t b = a + 1; b < ax.iris.size(); ++b)
        for (const auto& x : member_sets[a])
          if (member_sets[b].contains(x)) out.push_back({x, ax.iris[a], ax.iris[b]});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace pheno::owl
