#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "subprod/abelian.hpp"

namespace subprod::testing {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceSizes {
  std::int64_t classifier_max_order = 8;
  std::vector<FiniteAbelianGroup> theta_groups;
  int poly_instances = 500;
  int reduction_instances = 200;
  int transform_pairs = 50;
  double classifier_limit = 60, poly_limit = 120, reduction_limit = 300, hardness_limit = 600;

  static AcceptanceSizes full();
  /// Same checks on fewer random draws and smaller groups.
  static AcceptanceSizes reduced();
};

/// Runs criteria 1-8 and returns one result per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceSizes& sizes, std::uint64_t seed = 20261019);

/// "[PASS] 3 poly solver vs oracle: ... (1.2 s)"
std::string format_result(const CriterionResult& r);

}  // namespace subprod::testing
