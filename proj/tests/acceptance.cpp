#include <cstdio>
#include <cstdlib>
#include <string>

#include "torsionlab/selftest.hpp"

int main(int argc, char** argv)
{
    std::uint64_t seed = torsionlab::selftest::kDefaultSeed;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    int failed = 0;
    for (const auto& name : torsionlab::selftest::suite_names()) {
        const auto r = torsionlab::selftest::run_suite(name, seed);
        std::printf("[%s] criterion %2d %-20s %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        failed += !r.passed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(torsionlab::selftest::suite_names().size()) - failed,
                torsionlab::selftest::suite_names().size());
    return failed ? 1 : 0;
}
