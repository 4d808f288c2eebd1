#pragma once

#include "record.hpp"

#include <pfqed/shifts.hpp>
#include <pfqed/spectral.hpp>
#include <pfqed/units.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfqed::cli {

/// Bad command line or config file. Carries the file line when known.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct SweepRanges
{
    std::vector<double> beta_z;
    std::vector<double> Lambda;
    std::vector<double> alpha;
    bool binding{false}; ///< also evaluate the full binding energy per point
};

struct RunConfig
{
    std::string command;
    Params params{};
    GridConfig grid{};
    bool extrapolate{true};
    double tol{1e-10};
    TTermOptions t{};

    // Per-command inputs.
    double e{0.0};
    std::array<double, 3> P{0.0, 0.0, 0.0};
    int n{2};
    int l{0};
    SweepRanges sweep{};

    std::string out_path; ///< empty: standard output
    Format format{Format::csv};

    /// Throws ConfigError when a value is out of range.
    void validate() const;

    LevelConfig level_config() const;
};

/// Reads an INI file into cfg. Unknown sections or keys and malformed values
/// raise ConfigError naming file, line and key.
void load_config_file(std::string const& path, RunConfig& cfg);

/// "a,b,c", "lo:hi:n" (linear) or "lo:hi:n:log".
std::vector<double> parse_range(std::string const& text);

/// "x,y,z" or a single magnitude placed on the z axis.
std::array<double, 3> parse_momentum(std::string const& text);

Format parse_format(std::string const& text);

} // namespace pfqed::cli
