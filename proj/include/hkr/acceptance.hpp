#pragma once

#include <string>
#include <vector>

#include "hkr/report.hpp"

namespace hkr {
namespace accept {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the full acceptance suite (criteria 1..10). max_dim bounds the
/// dimension budget of the homological computations.
std::vector<CriterionResult> run_all(long max_dim = 20000);

/// Deterministic JSON report for a suite run.
rep::Json report_json(const std::vector<CriterionResult>& results);

}  // namespace accept
}  // namespace hkr
