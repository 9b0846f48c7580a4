#ifndef MULCM_VERIFY_HPP
#define MULCM_VERIFY_HPP

#include <cstdint>
#include <cstdio>

namespace mulcm {

struct VerifyConfig {
    uint64_t s0_scan_limit = 1000000;   // criterion 3 (11000000 behind full_scan)
    bool full_scan = false;
    uint64_t maxima_limit = 2000000;    // criterion 4
    double euler_M = 1e5;               // criterion 5
    bool full_m = false;                // criteria 6 and 7's re-derivation
    int threshold_J = 80;               // criterion 7
    FILE* out = stdout;
};

struct VerifyResult {
    int criteria_pass = 0;
    int criteria_fail_expected = 0;  // documented source-literal defects
    int criteria_fail = 0;           // anything else
    bool clean() const { return criteria_fail == 0; }
};

// Runs the acceptance suite, one PASS/FAIL line per criterion.  Sub-checks
// that fail because a source literal is demonstrably off are marked FAIL*
// and counted separately; see NOTES.md for the analyses.
VerifyResult run_acceptance(const VerifyConfig& cfg);

}  // namespace mulcm

#endif
