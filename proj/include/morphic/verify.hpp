#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace morphic {

enum class VerifyScale { quick, full };
VerifyScale parse_verify_scale(std::string_view name);

struct CriterionReport {
    unsigned id = 0;
    std::string title;
    std::string expected;
    std::string observed;
    std::string tolerance;
    bool passed = false;
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<CriterionReport> criteria;
    bool passed() const;
    std::string str() const;
};

inline constexpr unsigned kCriterionCount = 13;

/// Runs one acceptance criterion (1..13). Every numeric tolerance and runtime
/// budget is multiplied by tolerance_scale; exact identities are unaffected.
CriterionReport run_criterion(unsigned id, VerifyScale scale = VerifyScale::quick, double tolerance_scale = 1.0);

VerifyReport run_verify_suite(VerifyScale scale = VerifyScale::quick, double tolerance_scale = 1.0);

}  // namespace morphic
