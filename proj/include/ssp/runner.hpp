#pragma once

#include <iosfwd>

#include "ssp/config.hpp"

namespace ssp {

// Executes the configured command, writing grids, CSV tables, and a JSON
// manifest into cfg.output_dir. Returns the process exit code: 0 on success,
// 2 for configuration problems (including missing input files), 3 for runtime
// failures, 4 when the selftest suite reports a failing check. Diagnostics go
// to `log`.
int run_command(const RunConfig& cfg, std::ostream& log);

}  // namespace ssp
