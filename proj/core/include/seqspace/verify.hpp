#pragma once

#include <string>
#include <vector>

namespace seqspace {

struct AcResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Named checks runnable individually (CLI `verify --case <name>`) or as the
/// full suite. Ids run 1..9.
std::vector<std::string> acceptance_case_names();
AcResult run_acceptance_case(int id);
AcResult run_acceptance_case(const std::string& name);
std::vector<AcResult> run_acceptance_suite();

}  // namespace seqspace
