#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "morphic/verify.hpp"

using namespace morphic;

// One line per acceptance criterion; exit status 1 if any fails.
int main(int argc, char** argv) {
    VerifyScale scale = VerifyScale::quick;
    if (argc > 1 && std::strcmp(argv[1], "full") == 0) scale = VerifyScale::full;
    unsigned failed = 0;
    for (unsigned id = 1; id <= kCriterionCount; ++id) {
        const CriterionReport r = run_criterion(id, scale);
        std::printf("[%s] criterion %2u: %s | observed: %s | tolerance: %s | %.2f s\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.title.c_str(), r.observed.c_str(), r.tolerance.c_str(), r.seconds);
        std::fflush(stdout);
        failed += r.passed ? 0 : 1;
    }
    std::printf("%u of %u criteria passed\n", kCriterionCount - failed, kCriterionCount);
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
