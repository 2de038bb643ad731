// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance runner: executes the numbered verification criteria
// and prints one pass/fail line per check. With an argument it runs a single
// criterion; with none it runs all of them.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "blockdpp/verify.hpp"

int main(int argc, char** argv) {
    using blockdpp::VerifyResult;
    int first = 1, last = blockdpp::acceptance_criteria_count();
    if (argc > 1) {
        first = last = std::atoi(argv[1]);
        if (first < 1 || first > blockdpp::acceptance_criteria_count()) {
            std::fprintf(stderr, "usage: %s [criterion 1..%d]\n", argv[0],
                         blockdpp::acceptance_criteria_count());
            return 2;
        }
    }
    const int threads = []() {
        if (const char* env = std::getenv("BLOCKDPP_THREADS")) return std::atoi(env);
        return 1;
    }();

    int failures = 0;
    for (int c = first; c <= last; ++c) {
        for (const VerifyResult& r : blockdpp::run_acceptance_criterion(c, threads)) {
            std::printf("[%s] %-42s observed=%.6g tolerance=%.6g (%.2fs)\n",
                        r.pass ? "PASS" : "FAIL", r.id.c_str(), r.observed, r.tolerance,
                        r.seconds);
            if (!r.pass) ++failures;
        }
    }
    if (failures > 0) std::printf("%d criterion check(s) failed\n", failures);
    return failures > 0 ? 1 : 0;
}
