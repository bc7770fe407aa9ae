#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace sinhmodel {

struct ExpansionTerm {
    std::string label;
    double exponent = 0.0;    // power of N
    double coefficient = 0.0;
    int log_power = 0;        // power of ln N, for the N ln N and ln N terms
    double value = 0.0;       // coefficient * N^exponent * (ln N)^log_power
};

struct ExpansionReport {
    std::vector<ExpansionTerm> terms;
    int truncation_order = 0;
    std::string error_order_label = "o(1)";
    double N = 0.0;

    void add(std::string label, double exponent, double coefficient, int log_power = 0) {
        const double v = coefficient * std::pow(N, exponent) * std::pow(std::log(N), log_power);
        terms.push_back({std::move(label), exponent, coefficient, log_power, v});
    }
    double total() const {
        double s = 0.0;
        for (const auto& t : terms) s += t.value;
        return s;
    }
};

}  // namespace sinhmodel
