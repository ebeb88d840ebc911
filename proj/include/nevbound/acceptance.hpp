#pragma once

// Acceptance suite: fourteen criteria with pinned tolerances and runtime budgets.
// Every random draw derives from the seed, so verdicts are reproducible.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace nevbound {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget = 0.0;  // runtime limit in seconds, 0 when none is pinned
};

struct AcceptanceOptions {
    std::uint64_t seed = 0;
    std::vector<int> only;  // criterion ids to run; empty runs all
};

int acceptance_criterion_count();

// Runs the criteria in order. A criterion that throws is reported as failed with the message.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

// "PASS 01 name: detail [1.23 s / 10 s]"
std::string format_result(const CriterionResult& r);

// Prints one line per criterion as it finishes and a summary line; returns true if all passed.
bool run_acceptance_report(std::ostream& out, const AcceptanceOptions& options = {});

}  // namespace nevbound
