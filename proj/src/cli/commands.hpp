#pragma once

#include <iosfwd>
#include <string>

#include "cli/config.hpp"
#include "cli/report_writer.hpp"

namespace bsq::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kNoContraction = 2, kConfigError = 3 };

/// Settings shared by every command, read from the `run` section.
struct RunOptions {
    std::string output_dir = "out";
    Format format = Format::csv;
    long seed = 1;
    long workers = 1;

    static RunOptions from(const Config& cfg);
};

int cmd_solve(const Config& cfg, std::ostream& log);
int cmd_bilinear_sweep(const Config& cfg, std::ostream& log);
int cmd_illposed_sweep(const Config& cfg, std::ostream& log);
int cmd_checks(const Config& cfg, std::ostream& log);

}  // namespace bsq::cli
