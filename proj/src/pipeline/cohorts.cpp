#include "pipeline/cohorts.hpp"

#include <algorithm>
#include <sstream>

#include "sparql/eval.hpp"
#include "support/csv.hpp"
#include "support/error.hpp"

namespace pheno::pipeline {

std::vector<Cohort> extract_cohorts(const std::vector<NamedQuery>& queries,
                                    const rdf::Dataset& ds, const std::string& base,
                                    bool verify_partition) {
  std::vector<Cohort> cohorts;
  for (const NamedQuery& nq : queries) {
    Cohort cohort;
    cohort.name = nq.cohort;
    for (const auto& row : sparql::evaluate(nq.query, ds)) {
      const rdf::Term& term = row.bindings.begin()->second;
      if (!term.is_iri()) continue;
      if (auto id = patient_id_from_iri(base, term.value())) cohort.members.insert(*id);
    }
    cohorts.push_back(std::move(cohort));
  }

  if (verify_partition) {
    std::vector<std::string> problems;
    for (size_t a = 0; a < cohorts.size(); ++a) {
      for (size_t b = a + 1; b < cohorts.size(); ++b) {
        for (const auto& id : cohorts[a].members) {
          if (cohorts[b].members.contains(id))
            problems.push_back("patient " + id + " in both " + cohorts[a].name + " and " +
                               cohorts[b].name);
        }
      }
    }

    std::set<std::string> all_subjects;
    for (const auto& t : ds.match(std::nullopt, std::nullopt,
                                  rdf::Term::iri(rdf::vocab::kRdfType),
                                  rdf::Term::iri(base + "subject"))) {
      if (auto id = patient_id_from_iri(base, t.s.value())) all_subjects.insert(*id);
    }
    std::set<std::string> covered;
    for (const auto& c : cohorts) covered.insert(c.members.begin(), c.members.end());
    for (const auto& id : all_subjects)
      if (!covered.contains(id)) problems.push_back("patient " + id + " in no cohort");

    if (!problems.empty()) {
      std::string msg = "cohorts do not partition the subjects:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw Error(ErrorKind::Consistency, msg);
    }
  }

  return cohorts;
}

std::string cohorts_to_csv(const std::vector<Cohort>& cohorts) {
  std::vector<const Cohort*> sorted;
  sorted.reserve(cohorts.size());
  for (const auto& c : cohorts) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(),
            [](const Cohort* a, const Cohort* b) { return a->name < b->name; });

  std::ostringstream out;
  out << "cohort_name,patient_id\n";
  for (const Cohort* c : sorted)
    for (const auto& id : c->members)
      out << util::csv_escape(c->name) << "," << util::csv_escape(id) << "\n";
  return out.str();
}

}  // namespace pheno::pipeline
