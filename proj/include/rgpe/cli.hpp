#pragma once
#include <iosfwd>
#include <vector>
#include "rgpe/config.hpp"
#include "rgpe/io.hpp"

namespace rgpe {

// Entry point behind the rgpe binary; callable in-process for tests.
// Subcommands:
//   run    --config FILE [--output DIR]
//   verify --config FILE [--suites a,b,...] [--output DIR] [--corrupt-propagator]
//   oracle --config FILE --t TIME
// Returns the exit-status contract value (see errors.hpp).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err,
               bool corrupt_propagator = false);
int cmd_oracle(const RunConfig& config, double t, std::ostream& out, std::ostream& err);

// The five verification suites behind `verify`, exposed individually so other
// harnesses can compose them. Each returns one row per check.
std::vector<CheckResult> suite_conservation(const RunConfig& config);
std::vector<CheckResult> suite_operators(const RunConfig& config);
std::vector<CheckResult> suite_oracle(const RunConfig& config);
std::vector<CheckResult> suite_picard(const RunConfig& config);
std::vector<CheckResult> suite_strichartz(const RunConfig& config);

} // namespace rgpe
