#pragma once

#include <string>
#include <vector>

namespace sinhmodel {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string summary;                // one line with the gated numbers
    std::vector<std::string> details;   // reported values, including soft diagnostics
    double seconds = 0.0;
};

constexpr int kCriterionCount = 12;

// Runs acceptance criterion id in 1..12. Exceptions inside a criterion turn into a failed result.
CriterionResult run_criterion(int id);

// "[PASS] criterion 3  title  summary (0.01 s)"
std::string format_result_line(const CriterionResult& r);

}  // namespace sinhmodel
