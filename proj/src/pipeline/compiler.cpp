#include "pipeline/compiler.hpp"

#include <algorithm>

#include "sparql/parser.hpp"
#include "support/error.hpp"
#include "support/strings.hpp"

namespace pheno::pipeline {

using owl::Axiom;
using owl::ClassExpr;
using owl::Ontology;

std::string core_class_iri(const std::string& base, const std::string& name) {
  return base + name;
}

std::string phenotype_code_class(const std::string& base, const std::string& phenotype) {
  return base + "phenotype_" + phenotype + "_code";
}

std::string component_code_class(const std::string& base, const std::string& component) {
  return base + component + "_code";
}

std::string category_code_class(const std::string& base, const std::string& component,
                                int category) {
  return base + component + "_" + std::to_string(category) + "_code";
}

std::string subject_with_component_class(const std::string& base, const std::string& component) {
  return base + "subject_with_" + component + "_code";
}

std::string subject_with_category_class(const std::string& base, const std::string& component,
                                        int category) {
  return base + "subject_with_" + component + "_" + std::to_string(category) + "_code";
}

std::string code_individual_iri(const std::string& base, Terminology terminology,
                                const std::string& code) {
  return base + terminology_name(terminology) + "_" + util::percent_encode(code);
}

std::string patient_iri(const std::string& base, const std::string& patient_id) {
  return base + "patient_" + util::percent_encode(patient_id);
}

std::optional<std::string> patient_id_from_iri(const std::string& base, const std::string& iri) {
  std::string prefix = base + "patient_";
  if (!iri.starts_with(prefix)) return std::nullopt;
  return util::percent_decode(iri.substr(prefix.size()));
}

Ontology emit_core(const std::string& base, const std::string& phenotype_name) {
  Ontology ont;
  ont.iri = base;
  for (const char* name : {"subject", "code", "component", "category"})
    ont.declare_class(core_class_iri(base, name));
  ont.declare_property(base + "obtained");

  std::string scaffold = phenotype_code_class(base, phenotype_name);
  ont.declare_class(scaffold);
  ont.add(Axiom::subclass_of(ClassExpr::named(scaffold),
                             ClassExpr::named(core_class_iri(base, "code"))));
  return ont;
}

void ingest_codelist(const std::vector<CodelistEntry>& entries, const std::string& component,
                     const std::string& base, Ontology& ontology,
                     std::map<std::string, std::set<int>>& categories,
                     std::vector<std::string>& warnings) {
  std::string comp_class = component_code_class(base, component);
  ontology.declare_class(comp_class);

  // component class sits under the phenotype code scaffold
  std::string scaffold;
  for (const auto& c : ontology.declared_classes)
    if (c.starts_with(base + "phenotype_") && c.ends_with("_code")) scaffold = c;
  if (scaffold.empty())
    throw Error(ErrorKind::Compile, "structural core missing phenotype code scaffold");
  ontology.add(Axiom::subclass_of(ClassExpr::named(comp_class), ClassExpr::named(scaffold)));

  std::map<std::pair<Terminology, std::string>, int> seen;  // code -> category
  for (const CodelistEntry& e : entries) {
    if (e.component != component)
      throw Error(ErrorKind::Compile, "codelist row for component '" + e.component +
                                          "' in the codelist of '" + component + "'");

    auto key = std::make_pair(e.terminology, e.code);
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (it->second != e.category)
        throw Error(ErrorKind::Compile,
                    "code " + terminology_name(e.terminology) + " " + e.code +
                        " appears in categories " + std::to_string(it->second) + " and " +
                        std::to_string(e.category) + " of component " + component);
      warnings.push_back("duplicate code " + terminology_name(e.terminology) + " " + e.code +
                         " in component " + component + " category " +
                         std::to_string(e.category));
      continue;
    }
    seen.emplace(key, e.category);

    std::string cat_class = category_code_class(base, component, e.category);
    if (categories[component].insert(e.category).second) {
      ontology.declare_class(cat_class);
      ontology.add(Axiom::subclass_of(ClassExpr::named(cat_class), ClassExpr::named(comp_class)));
    }

    std::string individual = code_individual_iri(base, e.terminology, e.code);
    ontology.add(Axiom::class_assertion(ClassExpr::named(cat_class), individual));
    if (!e.description.empty()) ontology.labels[individual] = e.description;
  }
  categories[component];  // component is known even when its codelist is empty
}

namespace {

struct LogicCompiler {
  const PhenotypeDef& def;
  Ontology& ont;
  const std::map<std::string, std::set<int>>& categories;
  std::map<std::string, const LogicExpr*> class_exprs;
  std::set<std::string> visiting;
  std::set<std::string> done;

  void check_atom(const std::string& component, int category, bool component_only) const {
    auto it = categories.find(component);
    if (it == categories.end())
      throw Error(ErrorKind::Compile,
                  def.source_path + ": logic references unknown component: " + component);
    if (!component_only && !it->second.contains(category))
      throw Error(ErrorKind::Compile, def.source_path + ": logic references unknown category " +
                                          std::to_string(category) + " of component " +
                                          component);
  }

  ClassExpr compile_expr(const LogicExpr& e) {
    switch (e.kind) {
      case LogicExpr::Kind::CategoryAtom:
        check_atom(e.name, e.category, false);
        return ClassExpr::named(subject_with_category_class(def.base_iri, e.name, e.category));
      case LogicExpr::Kind::ComponentAtom:
        check_atom(e.name, 0, true);
        return ClassExpr::named(subject_with_component_class(def.base_iri, e.name));
      case LogicExpr::Kind::ClassRef: {
        auto it = class_exprs.find(e.name);
        if (it == class_exprs.end())
          throw Error(ErrorKind::Compile,
                      def.source_path + ": logic references unknown class: " + e.name);
        compile_class(e.name);  // cycle detection
        return ClassExpr::named(def.base_iri + e.name);
      }
      case LogicExpr::Kind::Union: {
        std::vector<ClassExpr> ops = compile_operands(e.args);
        if (ops.size() == 1) return ops.front();
        return ClassExpr::union_of(std::move(ops));
      }
      case LogicExpr::Kind::Intersection:
        return ClassExpr::intersection_of(compile_operands(e.args));
    }
    throw Error(ErrorKind::Internal, "unhandled logic expression kind");
  }

  std::vector<ClassExpr> compile_operands(const std::vector<LogicExpr>& args) {
    std::vector<ClassExpr> ops;
    ops.reserve(args.size());
    for (const auto& a : args) ops.push_back(compile_expr(a));
    std::sort(ops.begin(), ops.end(),
              [](const ClassExpr& a, const ClassExpr& b) { return a.key() < b.key(); });
    return ops;
  }

  void compile_class(const std::string& name) {
    if (done.contains(name)) return;
    if (!visiting.insert(name).second)
      throw Error(ErrorKind::Compile,
                  def.source_path + ": cyclic logic class definition involving " + name);

    const LogicExpr& expr = *class_exprs.at(name);
    std::string class_iri = def.base_iri + name;
    ont.declare_class(class_iri);

    // An empty union has no sufficient condition: the class stays declared
    // but undefined, hence provably empty under materialization.
    bool empty_union = expr.kind == LogicExpr::Kind::Union && expr.args.empty();
    if (!empty_union) {
      ClassExpr compiled = compile_expr(expr);
      ont.add(Axiom::equivalent(ClassExpr::named(class_iri), compiled));
      if (compiled.kind() == ClassExpr::Kind::Union) {
        for (const auto& op : compiled.operands())
          ont.add(Axiom::subclass_of(op, ClassExpr::named(class_iri)));
      }
    }

    visiting.erase(name);
    done.insert(name);
  }
};

std::string cohort_query_text(const PhenotypeDef& def, const CohortDefinition& cohort) {
  std::string text;
  text += "PREFIX rdf: <" + std::string(rdf::vocab::kRdfNs) + ">\n";
  text += "PREFIX clb: <" + def.base_iri + ">\n";
  text += "SELECT ?subject\n";
  text += "WHERE { ?subject rdf:type clb:" + cohort.include_class + " .\n";
  for (const auto& exclude : cohort.exclude_classes)
    text += "FILTER NOT EXISTS { ?subject rdf:type clb:" + exclude + " . }\n";
  text += "}\n";
  return text;
}

}  // namespace

std::vector<NamedQuery> compile_logic(const PhenotypeDef& def, Ontology& ontology,
                                      const std::map<std::string, std::set<int>>& categories) {
  const std::string& base = def.base_iri;
  std::string subject_class = core_class_iri(base, "subject");
  std::string obtained = base + "obtained";

  // subject_with_* definitions for every component and category present, so
  // both compiled cohorts and ad-hoc queries can rely on them
  for (const auto& [component, cats] : categories) {
    ontology.add(Axiom::equivalent(
        ClassExpr::named(subject_with_component_class(base, component)),
        ClassExpr::intersection_of(
            {ClassExpr::named(subject_class),
             ClassExpr::some(obtained,
                             ClassExpr::named(component_code_class(base, component)))})));
    ontology.declare_class(subject_with_component_class(base, component));
    for (int cat : cats) {
      ontology.add(Axiom::equivalent(
          ClassExpr::named(subject_with_category_class(base, component, cat)),
          ClassExpr::intersection_of(
              {ClassExpr::named(subject_class),
               ClassExpr::some(obtained,
                               ClassExpr::named(category_code_class(base, component, cat)))})));
      ontology.declare_class(subject_with_category_class(base, component, cat));
    }
  }

  LogicCompiler lc{def, ontology, categories, {}, {}, {}};
  for (const auto& cls : def.logic_classes) {
    if (!lc.class_exprs.emplace(cls.name, &cls.expr).second)
      throw Error(ErrorKind::Compile, def.source_path + ": duplicate logic class " + cls.name);
  }
  for (const auto& cls : def.logic_classes) lc.compile_class(cls.name);

  for (const auto& group : def.disjoint_classes) {
    std::vector<std::string> iris;
    for (const auto& name : group) {
      std::string iri = base + name;
      if (!ontology.declared_classes.contains(iri))
        throw Error(ErrorKind::Compile,
                    def.source_path + ": disjoint_classes references unknown class " + name);
      iris.push_back(std::move(iri));
    }
    ontology.add(Axiom::disjoint(std::move(iris)));
  }

  // cohort queries follow the shape of the published type-1 example:
  // include class as the type pattern, one NOT EXISTS block per exclusion
  std::vector<NamedQuery> queries;
  for (const auto& cohort : def.cohorts) {
    auto check_class = [&](const std::string& name) {
      if (!ontology.declared_classes.contains(base + name))
        throw Error(ErrorKind::Compile, def.source_path + ": cohort " + cohort.name +
                                            " references unknown class " + name);
    };
    check_class(cohort.include_class);
    for (const auto& x : cohort.exclude_classes) check_class(x);

    NamedQuery nq;
    nq.cohort = cohort.name;
    nq.text = cohort_query_text(def, cohort);
    nq.query = sparql::parse_query(nq.text);
    queries.push_back(std::move(nq));
  }

  ontology.validate();
  return queries;
}

CompiledPhenotype compile_phenotype(
    const PhenotypeDef& def, const std::map<std::string, std::vector<CodelistEntry>>& codelists) {
  CompiledPhenotype out;
  out.def = def;
  out.ontology = emit_core(def.base_iri, def.name);

  for (const auto& component : def.components) {
    auto it = codelists.find(component.name);
    if (it == codelists.end())
      throw Error(ErrorKind::Compile,
                  def.source_path + ": no codelist loaded for component " + component.name);
    ingest_codelist(it->second, component.name, def.base_iri, out.ontology, out.categories,
                    out.warnings);
  }

  out.queries = compile_logic(out.def, out.ontology, out.categories);
  return out;
}

}  // namespace pheno::pipeline
