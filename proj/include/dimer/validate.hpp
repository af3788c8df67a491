#pragma once

#include <string>
#include <vector>

namespace dimer {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// each check pins its own tolerances; detail reports the measured worst case
SuiteResult check_counting();
SuiteResult check_spectral();
SuiteResult check_reference_roots();
SuiteResult check_green_master();
SuiteResult check_coefficient_solve();
SuiteResult check_uniform_degeneration();
SuiteResult check_window_agreement();  // large cylinder, sparse LU
SuiteResult check_cor1_asymptotics();
SuiteResult check_exponential_rates();
SuiteResult check_reality_and_unity();

// fast: algebraic and small-window suites; full adds the cylinder comparison and the integral checks
std::vector<SuiteResult> run_suites(bool full);

}  // namespace dimer
