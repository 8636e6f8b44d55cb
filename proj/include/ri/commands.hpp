#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ri/io_json.hpp"

namespace ri {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationError = 1;
inline constexpr int kExitVerificationFailure = 2;

struct CommandOptions {
    NumericMode mode = NumericMode::Auto;
    std::uint64_t seed = 42;
    std::uint64_t samples = 100000;
    std::string grid; // "x1min,x1max,x2min,x2max,points", geometric spacing
    std::string out;  // CSV destination for grids
    bool strict_prebasis = false;
};

int cmd_shapley(const InputDocument& doc, const CommandOptions& opts,
                std::ostream& out);
int cmd_resolution(const InputDocument& doc, const CommandOptions& opts,
                   std::ostream& out);
int cmd_verify(const InputDocument& doc, const CommandOptions& opts,
               std::ostream& out);
int cmd_montecarlo(const InputDocument& doc, const CommandOptions& opts,
                   std::ostream& out);

/// Full argv-level entry point (also used by the CLI tests). Streams the
/// report to `out` and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace ri
