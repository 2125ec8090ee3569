// Acceptance suite: runs every top-level criterion and prints one pass/fail
// line per criterion. The whole run must finish single-threaded inside the
// five-minute budget, and the operator identity suite inside ten seconds.

#include "subalign/selftest.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = subalign::run_selftest(&std::cout);
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool pass = subalign::all_passed(results);

    for (const auto& result : results) {
        if (result.name == "operator-identities" && result.seconds >= 10.0) {
            std::printf("FAIL  operator-identities-runtime  (%.2f s >= 10 s)\n", result.seconds);
            pass = false;
        }
    }

    const bool within_budget = total < 300.0;
    std::printf("%s  runtime-budget  (%.2f s %s 300 s, single-threaded)\n",
                within_budget ? "PASS" : "FAIL", total, within_budget ? "<" : ">=");
    pass = pass && within_budget;

    return pass ? 0 : 1;
}
