#include "sparql/eval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "support/csv.hpp"
#include "support/error.hpp"

namespace pheno::sparql {

using rdf::OptId;
using rdf::Term;
using rdf::TermId;

namespace {

struct Slot {
  int var = -1;                  // >= 0: variable index
  std::optional<Term> constant;  // resolved constant term
};

struct ResolvedPattern {
  Slot s, p, o;
};

class Evaluator {
 public:
  Evaluator(const Query& q, const rdf::Dataset& ds) : q_(q), ds_(ds) {}

  std::vector<SolutionRow> run() {
    resolve();
    auto rows = eval_bgp(where_, {});

    for (const auto& neg : negations_) {
      std::vector<std::vector<OptId>> kept;
      for (auto& row : rows)
        if (!exists(neg, row)) kept.push_back(std::move(row));
      rows = std::move(kept);
    }

    return project(rows);
  }

 private:
  int var_index(const std::string& name) {
    auto it = var_index_.find(name);
    if (it != var_index_.end()) return it->second;
    int idx = static_cast<int>(var_names_.size());
    var_names_.push_back(name);
    var_index_.emplace(name, idx);
    return idx;
  }

  Term resolve_pname(const std::string& text) const {
    auto colon = text.find(':');
    std::string prefix = text.substr(0, colon);
    auto it = q_.prefixes.find(prefix);
    if (it != q_.prefixes.end()) return Term::iri(it->second + text.substr(colon + 1));
    // fall back to dataset-registered prefixes
    return ds_.resolve_prefixed(text);
  }

  Slot resolve_slot(const PatternTerm& t) {
    Slot slot;
    if (const auto* v = std::get_if<Variable>(&t)) {
      slot.var = var_index(v->name);
    } else if (const auto* term = std::get_if<Term>(&t)) {
      slot.constant = *term;
    } else {
      slot.constant = resolve_pname(std::get<PrefixedName>(t).text);
    }
    return slot;
  }

  void resolve() {
    for (const auto& p : q_.where.patterns)
      where_.push_back({resolve_slot(p.s), resolve_slot(p.p), resolve_slot(p.o)});
    for (const auto& neg : q_.negations) {
      std::vector<ResolvedPattern> block;
      for (const auto& p : neg.patterns)
        block.push_back({resolve_slot(p.s), resolve_slot(p.p), resolve_slot(p.o)});
      negations_.push_back(std::move(block));
    }
  }

  OptId constant_id(const Slot& slot) const {
    return slot.constant ? ds_.pool().find(*slot.constant) : std::nullopt;
  }

  // Static greedy join order: prefer patterns with the most bound slots,
  // then the smallest constant-only cardinality estimate.
  std::vector<size_t> join_order(const std::vector<ResolvedPattern>& patterns,
                                 std::set<int> bound_vars) const {
    std::vector<size_t> order;
    std::vector<bool> used(patterns.size(), false);
    auto slot_bound = [&](const Slot& s) {
      return s.constant.has_value() || (s.var >= 0 && bound_vars.contains(s.var));
    };
    for (size_t step = 0; step < patterns.size(); ++step) {
      size_t best = patterns.size();
      int best_bound = -1;
      size_t best_card = 0;
      for (size_t i = 0; i < patterns.size(); ++i) {
        if (used[i]) continue;
        const auto& p = patterns[i];
        int bound = int(slot_bound(p.s)) + int(slot_bound(p.p)) + int(slot_bound(p.o));
        size_t card = 0;
        if (best == patterns.size() || bound >= best_bound) {
          bool dead = false;
          OptId si, pi, oi;
          for (auto [slot, id] : {std::pair{&p.s, &si}, {&p.p, &pi}, {&p.o, &oi}}) {
            if (slot->constant) {
              *id = ds_.pool().find(*slot->constant);
              if (!*id) dead = true;
            }
          }
          card = dead ? 0 : ds_.count_match_coded(std::nullopt, si, pi, oi);
        }
        if (best == patterns.size() || bound > best_bound ||
            (bound == best_bound && card < best_card)) {
          best = i;
          best_bound = bound;
          best_card = card;
        }
      }
      used[best] = true;
      order.push_back(best);
      const auto& p = patterns[best];
      for (const Slot* s : {&p.s, &p.p, &p.o})
        if (s->var >= 0) bound_vars.insert(s->var);
    }
    return order;
  }

  // Extends `rows` pattern by pattern via index lookups.
  std::vector<std::vector<OptId>> eval_bgp(const std::vector<ResolvedPattern>& patterns,
                                           std::vector<OptId> seed) {
    seed.resize(var_names_.size());
    std::vector<std::vector<OptId>> rows{std::move(seed)};

    std::set<int> bound;
    for (size_t i = 0; i < rows[0].size(); ++i)
      if (rows[0][i]) bound.insert(static_cast<int>(i));

    for (size_t idx : join_order(patterns, bound)) {
      const auto& pattern = patterns[idx];
      std::vector<std::vector<OptId>> next;
      for (const auto& row : rows) extend(pattern, row, next);
      rows = std::move(next);
      if (rows.empty()) break;
    }
    return rows;
  }

  void extend(const ResolvedPattern& pattern, const std::vector<OptId>& row,
              std::vector<std::vector<OptId>>& out) {
    OptId s, p, o;
    bool dead = false;
    auto fix = [&](const Slot& slot, OptId& id) {
      if (slot.constant) {
        id = ds_.pool().find(*slot.constant);
        if (!id) dead = true;
      } else if (slot.var >= 0 && row[slot.var]) {
        id = row[slot.var];
      }
    };
    fix(pattern.s, s);
    fix(pattern.p, p);
    fix(pattern.o, o);
    if (dead) return;

    ds_.match_coded(std::nullopt, s, p, o, [&](const rdf::CodedTriple& t) {
      std::vector<OptId> extended = row;
      auto bind = [&](const Slot& slot, TermId value) {
        if (slot.var < 0) return true;
        auto& cell = extended[slot.var];
        if (cell) return *cell == value;  // repeated variable within pattern
        cell = value;
        return true;
      };
      if (bind(pattern.s, t.s) && bind(pattern.p, t.p) && bind(pattern.o, t.o))
        out.push_back(std::move(extended));
    });
  }

  bool exists(const std::vector<ResolvedPattern>& block, const std::vector<OptId>& row) {
    // anti-join probe: any extension of the row matching the whole block
    return exists_rec(block, 0, row);
  }

  bool exists_rec(const std::vector<ResolvedPattern>& block, size_t idx,
                  const std::vector<OptId>& row) {
    if (idx == block.size()) return true;
    const auto& pattern = block[idx];
    OptId s, p, o;
    bool dead = false;
    auto fix = [&](const Slot& slot, OptId& id) {
      if (slot.constant) {
        id = ds_.pool().find(*slot.constant);
        if (!id) dead = true;
      } else if (slot.var >= 0 && row[slot.var]) {
        id = row[slot.var];
      }
    };
    fix(pattern.s, s);
    fix(pattern.p, p);
    fix(pattern.o, o);
    if (dead) return false;

    bool found = false;
    ds_.match_coded(std::nullopt, s, p, o, [&](const rdf::CodedTriple& t) {
      if (found) return;
      std::vector<OptId> extended = row;
      auto bind = [&](const Slot& slot, TermId value) {
        if (slot.var < 0) return true;
        auto& cell = extended[slot.var];
        if (cell) return *cell == value;
        cell = value;
        return true;
      };
      if (bind(pattern.s, t.s) && bind(pattern.p, t.p) && bind(pattern.o, t.o) &&
          exists_rec(block, idx + 1, extended))
        found = true;
    });
    return found;
  }

  std::vector<SolutionRow> project(const std::vector<std::vector<OptId>>& rows) {
    std::vector<SolutionRow> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
      SolutionRow sr;
      for (const auto& name : q_.projected) {
        auto it = var_index_.find(name);
        // parse_query guarantees projected vars occur in WHERE
        sr.bindings.emplace(name, ds_.pool().term(*row[it->second]));
      }
      out.push_back(std::move(sr));
    }

    auto row_key = [&](const SolutionRow& r) {
      std::vector<Term> key;
      key.reserve(q_.projected.size());
      for (const auto& name : q_.projected) key.push_back(r.bindings.at(name));
      return key;
    };
    std::sort(out.begin(), out.end(), [&](const SolutionRow& a, const SolutionRow& b) {
      return row_key(a) < row_key(b);
    });
    if (q_.distinct) out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const Query& q_;
  const rdf::Dataset& ds_;

  std::vector<std::string> var_names_;
  std::map<std::string, int> var_index_;
  std::vector<ResolvedPattern> where_;
  std::vector<std::vector<ResolvedPattern>> negations_;
};

std::string term_text(const Term& t) {
  if (t.is_blank()) return "_:" + t.value();
  return t.value();
}

}  // namespace

std::vector<SolutionRow> evaluate(const Query& query, const rdf::Dataset& ds) {
  return Evaluator(query, ds).run();
}

std::string results_to_csv(const Query& query, const std::vector<SolutionRow>& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < query.projected.size(); ++i) {
    if (i) out << ",";
    out << query.projected[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < query.projected.size(); ++i) {
      if (i) out << ",";
      out << util::csv_escape(term_text(row.bindings.at(query.projected[i])));
    }
    out << "\n";
  }
  return out.str();
}

std::string results_to_json_lines(const Query& query, const std::vector<SolutionRow>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& name : query.projected) obj[name] = term_text(row.bindings.at(name));
    out << obj.dump() << "\n";
  }
  return out.str();
}

}  // namespace pheno::sparql
