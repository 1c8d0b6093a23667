#include "pipeline/ingest.hpp"

#include <set>

#include "pipeline/compiler.hpp"
#include "pipeline/csv_inputs.hpp"
#include "support/strings.hpp"

namespace pheno::pipeline {

using rdf::Term;
using rdf::Triple;
namespace vocab = rdf::vocab;

namespace {

// The ontology's code individuals carry their terminology and code in the
// IRI (<base><TERMINOLOGY>_<code>), so the known-code set can be rebuilt
// from a reloaded ontology without the original codelists.
std::set<std::string> known_code_iris(const owl::Ontology& ontology, const std::string& base) {
  std::set<std::string> codes;
  for (const auto& ax : ontology.axioms) {
    if (ax.kind != owl::Axiom::Kind::ClassAssertion) continue;
    const std::string& iri = ax.iris[0];
    if (!iri.starts_with(base)) continue;
    std::string local = iri.substr(base.size());
    auto underscore = local.find('_');
    if (underscore == std::string::npos) continue;
    if (parse_terminology(local.substr(0, underscore))) codes.insert(iri);
  }
  return codes;
}

}  // namespace

IngestReport ingest_ehr(const std::vector<EhrRecord>& records, rdf::Dataset& ds,
                        const owl::Ontology& ontology, const std::string& base) {
  IngestReport report;
  report.rows_read = records.size();

  const std::string graph = ds.asserted_graph();
  const std::set<std::string> known = known_code_iris(ontology, base);

  Term type = Term::iri(vocab::kRdfType);
  Term subject_class = Term::iri(base + "subject");
  Term obtained = Term::iri(base + "obtained");
  Term event_class = Term::iri(base + "event");
  Term event_subject = Term::iri(base + "event_subject");
  Term event_code = Term::iri(base + "event_code");
  Term event_date = Term::iri(base + "event_date");

  std::set<std::string> patients;
  for (const EhrRecord& r : records) {
    std::string patient = patient_iri(base, r.patient_id);
    if (patients.insert(r.patient_id).second)
      ds.insert(graph, Triple{Term::iri(patient), type, subject_class});

    std::string code = code_individual_iri(base, r.terminology, r.code);
    if (!known.contains(code)) {
      ++report.rows_unmatched;
      continue;
    }
    ++report.rows_matched;

    Term patient_term = Term::iri(patient);
    Term code_term = Term::iri(code);
    ds.insert(graph, Triple{patient_term, obtained, code_term});

    // one event node per distinct (patient, code, date); the date stays a
    // typed literal, never consulted by the logic
    std::string event = base + "event_" + util::percent_encode(r.patient_id) + "_" +
                        terminology_name(r.terminology) + "_" + util::percent_encode(r.code) +
                        "_" + r.date;
    Term event_term = Term::iri(event);
    ds.insert(graph, Triple{event_term, type, event_class});
    ds.insert(graph, Triple{event_term, event_subject, patient_term});
    ds.insert(graph, Triple{event_term, event_code, code_term});
    ds.insert(graph, Triple{event_term, event_date, Term::literal(r.date, vocab::kXsdDate)});
  }

  report.patients = patients.size();
  return report;
}

IngestReport ingest_ehr_file(const std::string& path, rdf::Dataset& ds,
                             const owl::Ontology& ontology, const std::string& base) {
  std::vector<RowDiagnostic> diagnostics;
  size_t rows_read = 0;
  std::vector<EhrRecord> records = read_ehr_csv(path, diagnostics, &rows_read);

  IngestReport report = ingest_ehr(records, ds, ontology, base);
  report.rows_read = rows_read;
  report.rows_malformed = diagnostics.size();
  report.diagnostics = std::move(diagnostics);
  return report;
}

}  // namespace pheno::pipeline
