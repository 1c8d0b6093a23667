#include "pipeline/definition.hpp"

#include <cctype>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "rdf/term.hpp"
#include "support/error.hpp"
#include "support/strings.hpp"

namespace pheno::pipeline {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::Compile, path + ": " + message);
}

// Component and class names feed the generated class-name grammar
// <component>_<category>_code; forbidding a trailing _<digits> run keeps
// distinct (component, category) pairs from colliding.
bool valid_component_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  auto last_underscore = name.rfind('_');
  if (last_underscore != std::string::npos && last_underscore + 1 < name.size()) {
    bool all_digits = true;
    for (size_t i = last_underscore + 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) all_digits = false;
    if (all_digits) return false;
  }
  return true;
}

bool valid_class_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

LogicExpr parse_expr(const json& node, const std::string& path) {
  if (!node.is_object()) schema_error(path, "logic expression must be an object");
  LogicExpr e;
  if (node.contains("union")) {
    // an empty union is allowed: it compiles to a declared class with no
    // sufficient condition (provably empty)
    e.kind = LogicExpr::Kind::Union;
    for (const auto& child : node.at("union")) e.args.push_back(parse_expr(child, path));
    return e;
  }
  if (node.contains("intersection")) {
    e.kind = LogicExpr::Kind::Intersection;
    for (const auto& child : node.at("intersection")) e.args.push_back(parse_expr(child, path));
    if (e.args.size() < 2) schema_error(path, "\"intersection\" needs at least 2 operands");
    return e;
  }
  if (node.contains("class")) {
    e.kind = LogicExpr::Kind::ClassRef;
    e.name = node.at("class").get<std::string>();
    return e;
  }
  if (node.contains("component")) {
    e.name = node.at("component").get<std::string>();
    if (node.contains("category")) {
      e.kind = LogicExpr::Kind::CategoryAtom;
      e.category = node.at("category").get<int>();
      if (e.category < 1) schema_error(path, "category must be >= 1");
    } else {
      e.kind = LogicExpr::Kind::ComponentAtom;
    }
    return e;
  }
  schema_error(path, "logic expression needs one of: union, intersection, class, component");
}

EvidenceAtom parse_atom(const json& node, const std::string& path) {
  if (!node.is_object() || !node.contains("component") || !node.contains("category"))
    schema_error(path, "evidence atom needs \"component\" and \"category\"");
  return EvidenceAtom{node.at("component").get<std::string>(),
                      node.at("category").get<int>()};
}

}  // namespace

PhenotypeDef parse_definition(const std::string& json_text, const std::string& source_path) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Compile, source_path + ": " + e.what());
  }

  PhenotypeDef def;
  def.source_path = source_path;
  try {
    def.name = doc.at("name").get<std::string>();
    if (!valid_component_name(def.name))
      schema_error(source_path, "invalid phenotype name: " + def.name);

    def.base_iri = doc.value("base_iri", std::string(rdf::vocab::kDefaultBase));
    if (!rdf::is_absolute_iri(def.base_iri))
      schema_error(source_path, "base_iri must be an absolute IRI");

    std::set<std::string> component_names;
    for (const auto& c : doc.at("components")) {
      ComponentDef cd;
      cd.name = c.at("name").get<std::string>();
      if (!valid_component_name(cd.name))
        schema_error(source_path,
                     "invalid component name (letters/digits/underscores, must not end in "
                     "_<digits>): " + cd.name);
      if (!component_names.insert(cd.name).second)
        schema_error(source_path, "duplicate component: " + cd.name);
      cd.codelist_path = c.at("codelist").get<std::string>();
      auto src = parse_source(c.value("source", "GPRD"));
      if (!src) schema_error(source_path, "unknown source for component " + cd.name);
      cd.source = *src;
      def.components.push_back(std::move(cd));
    }
    if (def.components.empty()) schema_error(source_path, "at least one component required");

    std::set<std::string> class_names;
    if (doc.contains("logic_classes")) {
      for (const auto& lc : doc.at("logic_classes")) {
        LogicClassDef lcd;
        lcd.name = lc.at("name").get<std::string>();
        if (!valid_class_name(lcd.name))
          schema_error(source_path, "invalid logic class name: " + lcd.name);
        if (!class_names.insert(lcd.name).second)
          schema_error(source_path, "duplicate logic class: " + lcd.name);
        lcd.expr = parse_expr(lc.at("expr"), source_path);
        def.logic_classes.push_back(std::move(lcd));
      }
    }

    std::set<std::string> cohort_names;
    for (const auto& c : doc.at("cohorts")) {
      CohortDefinition cd;
      cd.name = c.at("name").get<std::string>();
      if (!valid_class_name(cd.name))
        schema_error(source_path, "invalid cohort name: " + cd.name);
      if (!cohort_names.insert(cd.name).second)
        schema_error(source_path, "duplicate cohort: " + cd.name);
      cd.include_class = c.at("include").get<std::string>();
      for (const auto& x : c.value("exclude", json::array()))
        cd.exclude_classes.push_back(x.get<std::string>());
      def.cohorts.push_back(std::move(cd));
    }
    if (def.cohorts.empty()) schema_error(source_path, "at least one cohort required");

    def.disjoint_cohorts = doc.value("disjoint_cohorts", false);

    for (const auto& group : doc.value("disjoint_classes", json::array())) {
      std::vector<std::string> names;
      for (const auto& n : group) names.push_back(n.get<std::string>());
      if (names.size() < 2)
        schema_error(source_path, "disjoint_classes groups need at least 2 classes");
      def.disjoint_classes.push_back(std::move(names));
    }

    if (doc.contains("oracle")) {
      const auto& o = doc.at("oracle");
      OracleSpec spec;
      for (const auto& a : o.at("type1_evidence")) spec.type1_evidence.push_back(parse_atom(a, source_path));
      for (const auto& a : o.at("type2_evidence")) spec.type2_evidence.push_back(parse_atom(a, source_path));
      const auto& cohorts = o.at("cohorts");
      spec.type1_cohort = cohorts.at("type1").get<std::string>();
      spec.type2_cohort = cohorts.at("type2").get<std::string>();
      spec.unspecified_cohort = cohorts.at("unspecified").get<std::string>();
      spec.non_diabetic_cohort = cohorts.at("non_diabetic").get<std::string>();
      for (const std::string* name : {&spec.type1_cohort, &spec.type2_cohort,
                                      &spec.unspecified_cohort, &spec.non_diabetic_cohort}) {
        if (!cohort_names.contains(*name))
          schema_error(source_path, "oracle references unknown cohort: " + *name);
      }
      def.oracle = std::move(spec);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Compile, source_path + ": " + e.what());
  }

  return def;
}

PhenotypeDef load_definition(const std::string& path) {
  PhenotypeDef def = parse_definition(util::read_file(path), path);
  // codelist paths are relative to the definition file
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  for (auto& c : def.components) {
    std::filesystem::path p(c.codelist_path);
    if (p.is_relative()) c.codelist_path = (dir / p).string();
  }
  return def;
}

}  // namespace pheno::pipeline
