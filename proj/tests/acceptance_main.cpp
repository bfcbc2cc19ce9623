// Acceptance suite: runs every bundled criterion and prints one line per
// row. Exit code 0 only when everything passes inside the time budget.
#include <cstdio>

#include "rispaces/suite.hpp"

int main() {
    rispaces::SuiteResult s = rispaces::run_paper_suite();
    std::fputs(rispaces::suite_to_table(s).c_str(), stdout);
    if (!s.all_pass()) return 1;
    if (s.wall_seconds >= 120.0) {
        std::fprintf(stderr, "time budget exceeded: %.1f s\n", s.wall_seconds);
        return 1;
    }
    return 0;
}
