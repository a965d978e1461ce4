#pragma once

#include <string>
#include <vector>

namespace psint {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool slow = false;
    bool ran = false;  // false when skipped; pass is then meaningless
    bool pass = false;
    std::string detail;
};

struct AcceptanceOptions {
    std::string data_dir = "data";  // holds zeros_10k.txt / zeros_100k.txt
    std::string filter;             // substring of the criterion name; empty = all
    bool include_slow = true;
};

int criteria_count();

// runs every criterion (subject to filter / slow gating); a criterion that
// throws is reported as failed, the others still run
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);

}  // namespace psint
