#pragma once

#include "config.hpp"
#include "record.hpp"

#include <string>
#include <vector>

namespace pfqed::cli {

inline constexpr char const* leading_order_caveat =
    "note: all results are leading order in alpha; O(alpha^(3/2)) corrections are not modeled";

struct CommandOutput
{
    std::vector<Record> rows;
    std::vector<std::string> summary; ///< human-readable lines
};

/// Names accepted as the command of a RunConfig.
std::vector<std::string> const& command_names();

/// Runs cfg.command. Library errors propagate unchanged.
CommandOutput run_command(RunConfig const& cfg);

Record shift_report_record(ShiftReport const& r);

} // namespace pfqed::cli
