#pragma once

#include <string>
#include <vector>

namespace ssp {

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;  // filled on failure
};

// Fast invariant suite behind the CLI selftest command: transform round trips,
// filter algebra, combinator identities, schedule monotonicity, the single-step
// inversion identity, RNG stream separation, and grid format round trips.
std::vector<SelftestResult> run_selftest();

}  // namespace ssp
