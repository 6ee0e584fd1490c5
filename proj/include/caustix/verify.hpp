#pragma once

#include <string>
#include <vector>

namespace caustix {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
    std::string id;    // stable identifier, e.g. "C09"
    std::string name;  // short human-readable label
    CheckStatus status = CheckStatus::Skip;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    std::string suite;
    unsigned long long seed = 0;
    std::vector<CheckResult> checks;
    bool overall_pass = true;  // true iff no check failed
};

// Known check ids for a suite name ("core", "caustics", "dynamics",
// "locking", "all"). Throws std::invalid_argument for unknown suites.
std::vector<std::string> suite_check_ids(const std::string& suite);

// Runs every check of the suite, each guarded by a wall-clock timeout
// (timed-out checks are marked failed, never hang the runner).
VerifyReport run_suite(const std::string& suite, unsigned long long seed,
                       int threads = 4, double per_check_timeout_s = 300.0);

// Runs a single check by id (e.g. "C09"). Throws std::invalid_argument for
// unknown ids.
CheckResult run_check(const std::string& id, unsigned long long seed,
                      int threads = 4, double per_check_timeout_s = 300.0);

const char* check_status_name(CheckStatus status);

// Fixed-width human-readable table of the report.
std::string verify_table(const VerifyReport& report);

// JSON rendering of the report.
std::string verify_json(const VerifyReport& report);

}  // namespace caustix
