#pragma once

#include <string>
#include <vector>

namespace dds::verify {

struct CheckResult {
    std::string name;
    double measured = 0.0;   // measured deviation (or probed value)
    double tolerance = 0.0;  // allowed deviation (0 for boolean checks)
    bool pass = false;
};

// Cross-path and identity checks: two independent computation routes must
// land on the same value.
std::vector<CheckResult> run_identities();

// Published golden constants reproduced within their stated tolerances.
std::vector<CheckResult> run_golden();

std::vector<CheckResult> run_all();

} // namespace dds::verify
