#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfhe {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every acceptance criterion, printing one PASS/FAIL line per criterion
// to `out` as it goes. Returns the full result list.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qfhe
