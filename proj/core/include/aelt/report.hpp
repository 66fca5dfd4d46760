#pragma once

#include <map>
#include <string>

#include "aelt/util.hpp"

namespace aelt {

enum class CheckStatus { pass, fail, inconclusive };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

// Pass/fail evidence for one hypothesis check. worst_margin < -tolerance
// means fail; the witness is the sample point achieving the worst margin.
struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::inconclusive;
    double worst_margin = 0.0;
    double witness_t = 0.0;
    Vec witness_x;
    Vec witness_v;
    long samples_used = 0;
    std::string notes;
    std::map<std::string, double> details;

    bool passed() const { return status == CheckStatus::pass; }
};

}  // namespace aelt
