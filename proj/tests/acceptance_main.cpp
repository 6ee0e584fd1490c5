// Acceptance runner: one line per numerical check, exit 1 if any fails.

#include <cstdio>
#include <string>
#include <vector>

#include "caustix/verify.hpp"

int main(int argc, char** argv) {
    std::string suite = "all";
    std::vector<std::string> only;
    unsigned long long seed = 1;
    int threads = 4;
    double timeout_s = 360.0;

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const bool has_next = i + 1 < argc;
        if (arg == "--only" && has_next) {
            only.emplace_back(argv[++i]);
        } else if (arg == "--suite" && has_next) {
            suite = argv[++i];
        } else if (arg == "--seed" && has_next) {
            seed = std::stoull(argv[++i]);
        } else if (arg == "--threads" && has_next) {
            threads = std::stoi(argv[++i]);
        } else if (arg == "--timeout" && has_next) {
            timeout_s = std::stod(argv[++i]);
        } else {
            std::fprintf(stderr,
                         "usage: acceptance [--suite NAME] [--only ID]... "
                         "[--seed N] [--threads N] [--timeout S]\n");
            return 2;
        }
    }

    std::vector<caustix::CheckResult> results;
    try {
        if (!only.empty()) {
            for (const auto& id : only)
                results.push_back(caustix::run_check(id, seed, threads, timeout_s));
        } else {
            results = caustix::run_suite(suite, seed, threads, timeout_s).checks;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    bool all_pass = true;
    for (const auto& c : results) {
        if (c.status == caustix::CheckStatus::Fail) all_pass = false;
        std::printf("%s %s: %s  measured=%.10g expected=%.10g tol=%.3g (%.2fs)\n",
                    c.id.c_str(), c.name.c_str(), check_status_name(c.status),
                    c.measured, c.expected, c.tolerance, c.seconds);
        if (!c.detail.empty()) std::printf("    %s\n", c.detail.c_str());
    }
    std::printf("%s\n", all_pass ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
