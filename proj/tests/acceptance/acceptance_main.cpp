#include <cstdio>
#include <cstdlib>
#include <exception>
#include <vector>

#include "CLI11.hpp"
#include "sinhmodel/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"sinhmodel acceptance criteria"};
    int criterion = 0;
    bool quiet = false;
    app.add_option("--criterion", criterion, "criterion 1..12; all when omitted")->check(CLI::Range(1, 12));
    app.add_flag("--quiet", quiet, "print only the pass/fail lines");
    CLI11_PARSE(app, argc, argv);

    std::vector<int> ids;
    if (criterion) ids.push_back(criterion);
    else
        for (int i = 1; i <= sinhmodel::kCriterionCount; ++i) ids.push_back(i);

    int failed = 0;
    for (int id : ids) {
        const auto r = sinhmodel::run_criterion(id);
        if (!quiet)
            for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
        std::printf("%s\n", sinhmodel::format_result_line(r).c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
