#include <cstdlib>
#include <iostream>
#include <string>

#include "gwc/selftest.hpp"

int main(int argc, char** argv) {
    unsigned long seed = gwc::kDefaultSeed;
    if (argc > 1) seed = std::strtoul(argv[1], nullptr, 10);
    bool all = true;
    for (const auto& r : gwc::run_acceptance(seed)) {
        std::cout << gwc::format_result(r) << "\n";
        all &= r.pass;
    }
    return all ? 0 : 1;
}
