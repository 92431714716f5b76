#pragma once

/**
 * @file verify.hpp
 * @brief Check suites shared by the `verify` command and the acceptance binary.
 */

#include <string>
#include <utility>
#include <vector>

#include "ffk/fermat_model.hpp"

namespace ffk::verify {

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct SuiteResult {
    std::string id;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    /// Wall-clock limit in seconds; 0 means none.
    double time_limit = 0.0;

    bool within_time() const { return time_limit <= 0.0 || seconds < time_limit; }
    bool pass() const;
    /// "name: detail" of the first failing check, or of the time overrun.
    std::string first_failure() const;
};

/// The (p, m) pairs every suite runs on.
const std::vector<std::pair<long, long>>& parameter_list();

/// Census, validate(), transversality and the cusp bijection.
std::vector<Check> fiber_checks(const fermat::FermatModel& model);
/// Checks on the V_D family: the characterising pairings, closed
/// squares, closed cross terms with V_S, and reproduction by solve_gauge.
/// `printed` selects the displayed representatives and closed forms.
std::vector<Check> representative_checks(const fermat::FermatModel& model, const fermat::Cusp& cusp, bool printed);
/// V_S, U_S, G_S and beta_S identities at one cusp.
std::vector<Check> cusp_checks(const fermat::FermatModel& model, const fermat::Cusp& cusp);
/// beta_S, G_S^2, V_S^2, min semipositivity and the geometric value agree at >= 3 cusps.
Check cusp_independence(const fermat::FermatModel& model);

SuiteResult polynomial_suite();
SuiteResult configuration_suite();
SuiteResult divisor_suite();
SuiteResult beta_suite();
SuiteResult bounds_suite(long scan_max_N = 100000);
SuiteResult fundamental_cycle_suite();
SuiteResult mutation_suite();

/// Suite names accepted by `verify --suite`: all, polynomial, fiber, divisor, bounds.
std::vector<SuiteResult> run_suites(const std::string& name);

}  // namespace ffk::verify
