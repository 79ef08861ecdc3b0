#pragma once

#include <string>
#include <vector>

namespace nonlocal {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

//! Number of acceptance criteria.
constexpr int acceptance_count = 13;

//! Runs one criterion (1-based id).
CriterionResult run_criterion(int id);
//! Runs the listed criteria (all when empty).
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});
//! "[PASS] 5 operator route agreement: ..." style line.
std::string format_result(const CriterionResult& r);

} // namespace nonlocal
