// Acceptance gate: one line per criterion A1..A9; exit 0 iff all pass.
#include <cstdio>

#include "nlsist/pipelines.hpp"

int main() {
    nlsist::ExperimentReport rep = nlsist::run_acceptance();
    for (const nlsist::ReportRow& r : rep.rows)
        std::printf("%-3s %s  %s  (value=%.6g, threshold=%.6g)\n    %s\n", r.id.c_str(),
                    r.passed ? "PASS" : "FAIL", r.what.c_str(), r.value, r.threshold,
                    r.detail.c_str());
    for (const std::string& e : rep.errors) std::printf("error: %s\n", e.c_str());
    std::printf("acceptance: %s\n", rep.all_passed ? "ALL PASS" : "FAILED");
    return rep.all_passed ? 0 : 1;
}
