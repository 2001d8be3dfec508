#pragma once

#include "mixedbf/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mixedbf {
namespace verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Options {
    uint64_t seed = 1;
    // test hook: run the suite with tampered lambda constants
    std::optional<std::pair<Rat, Rat>> lambda_override;
};

// The exact identity suite behind the verify command: every check is a
// symbolic identity in rational arithmetic (no quadrature).
std::vector<CheckResult> run_symbolic_suite(const Options& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace verify
}  // namespace mixedbf
