#ifndef RISPACES_SUITE_HPP
#define RISPACES_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rispaces {

struct SuiteRow {
    std::string id;           // statement key, usable with --filter
    std::string description;
    std::string input_digest;
    double value = 0;
    double err_bound = 0;
    double target = 0;
    double tol = 0;
    bool pass = false;
};

struct SuiteResult {
    std::uint64_t seed = 0;
    std::vector<SuiteRow> rows;
    double wall_seconds = 0;
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

// Runs the bundled reproduction suite. `filter` is a glob over row ids
// (empty means everything). Deterministic for a fixed seed.
SuiteResult run_paper_suite(std::uint64_t seed = 20240901, const std::string& filter = "");

std::string suite_to_csv(const SuiteResult& s);
std::string suite_to_table(const SuiteResult& s);

} // namespace rispaces

#endif
