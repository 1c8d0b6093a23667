#pragma once

#include <string>
#include <vector>

#include "pipeline/compiler.hpp"
#include "pipeline/types.hpp"
#include "rdf/dataset.hpp"

namespace pheno::pipeline {

// Runs the compiled cohort queries over the materialized dataset. With
// verify_partition set, checks that the cohorts are pairwise disjoint and
// jointly cover all subjects; a violation throws Error(Consistency) listing
// the offending patients.
std::vector<Cohort> extract_cohorts(const std::vector<NamedQuery>& queries,
                                    const rdf::Dataset& ds, const std::string& base,
                                    bool verify_partition);

// Combined CSV, header cohort_name,patient_id, sorted. Deterministic.
std::string cohorts_to_csv(const std::vector<Cohort>& cohorts);

}  // namespace pheno::pipeline
