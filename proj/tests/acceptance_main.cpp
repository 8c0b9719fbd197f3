#include <cstdlib>
#include <iostream>

#include "hkr/acceptance.hpp"

int main() {
    using namespace hkr;
    const char* env = std::getenv("HKRLAB_BUDGET");
    long budget = env ? std::atol(env) : 20000;
    bool all_pass = true;
    auto first = accept::run_all(budget);
    for (const auto& r : first) {
        all_pass = all_pass && r.pass;
        std::cout << "criterion " << r.index << " (" << r.name << "): "
                  << (r.pass ? "pass" : "fail") << " -- " << r.detail << "\n";
    }
    // Determinism: a second full run must serialize byte-identically.
    auto second = accept::run_all(budget);
    bool deterministic = rep::emit(accept::report_json(first)) ==
                         rep::emit(accept::report_json(second));
    all_pass = all_pass && deterministic;
    std::cout << "criterion 11 (deterministic byte-identical reports): "
              << (deterministic ? "pass" : "fail") << "\n";
    return all_pass ? 0 : 1;
}
