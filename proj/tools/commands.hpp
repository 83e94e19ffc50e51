#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace framelet::cli {

enum Exit : int { kPass = 0, kFail = 1, kHypothesis = 2, kParse = 3 };

struct ConstructArgs {
    std::string mask, dual_mask, dilation, balancing, output;
    bool scalar = false;
};

struct VerifyArgs {
    std::string bank;
    std::vector<std::string> conditions;   // empty: all
    std::uint64_t seed = 1;
};

struct TransformArgs {
    std::string bank, data, output;
    int levels = 1;
    bool compact = false;
    std::uint64_t seed = 1;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err);
int cmd_transform(const TransformArgs& a, std::ostream& out, std::ostream& err);
int cmd_report(const std::string& bank, std::ostream& out, std::ostream& err);

// FRAMELET_SEED wins over the flag when set and numeric.
std::uint64_t effective_seed(std::uint64_t flag);

}  // namespace framelet::cli
