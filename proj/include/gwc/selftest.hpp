#pragma once

#include <string>
#include <vector>

namespace gwc {

constexpr unsigned long kDefaultSeed = 20240611;

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double limit = 0;
    std::string detail;
};

// Runs acceptance criteria 1-9. A criterion passes only if its checks hold and it
// finishes within its time limit.
std::vector<CriterionResult> run_acceptance(unsigned long seed = kDefaultSeed);

std::string format_result(const CriterionResult& r);

}  // namespace gwc
