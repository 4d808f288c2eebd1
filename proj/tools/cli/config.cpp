#include "config.hpp"

#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace pfqed::cli {

namespace {

std::string trim(std::string s)
{
    auto const not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        parts.push_back(trim(item));
    }
    return parts;
}

double to_double(std::string const& s)
{
    try {
        return boost::lexical_cast<double>(trim(s));
    } catch (boost::bad_lexical_cast const&) {
        throw ConfigError("'" + s + "' is not a number");
    }
}

int to_int(std::string const& s)
{
    try {
        return boost::lexical_cast<int>(trim(s));
    } catch (boost::bad_lexical_cast const&) {
        throw ConfigError("'" + s + "' is not an integer");
    }
}

bool to_bool(std::string const& s)
{
    std::string v = trim(s);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("'" + s + "' is not a boolean");
}

/// Line of every "section.key" in the file, for diagnostics.
std::map<std::string, int> key_lines(std::string const& path)
{
    std::map<std::string, int> lines;
    std::ifstream in(path);
    std::string line;
    std::string section;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string const t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#') {
            continue;
        }
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            lines.emplace(section, no);
            continue;
        }
        auto const eq = t.find('=');
        if (eq != std::string::npos) {
            lines.emplace(section + "." + trim(t.substr(0, eq)), no);
        }
    }
    return lines;
}

using Setter = std::function<void(RunConfig&, std::string const&)>;

std::map<std::string, std::map<std::string, Setter>> const& setters()
{
    static std::map<std::string, std::map<std::string, Setter>> const table = {
        {"params",
         {
             {"m", [](RunConfig& c, std::string const& v) { c.params.m = to_double(v); }},
             {"m0", [](RunConfig& c, std::string const& v) { c.params.m0 = to_double(v); }},
             {"alpha", [](RunConfig& c, std::string const& v) { c.params.alpha = to_double(v); }},
             {"beta", [](RunConfig& c, std::string const& v) { c.params.beta = to_double(v); }},
             {"Z", [](RunConfig& c, std::string const& v) { c.params.Z = to_double(v); }},
             {"Lambda", [](RunConfig& c, std::string const& v) { c.params.Lambda = to_double(v); }},
             {"beta_z_limit", [](RunConfig& c, std::string const& v) { c.params.beta_z_limit = to_double(v); }},
         }},
        {"constants",
         {
             {"rest_energy_eV",
              [](RunConfig& c, std::string const& v) { c.params.constants.rest_energy_eV = to_double(v); }},
             {"eV_to_MHz", [](RunConfig& c, std::string const& v) { c.params.constants.eV_to_MHz = to_double(v); }},
         }},
        {"grid",
         {
             {"n", [](RunConfig& c, std::string const& v) { c.grid.n = static_cast<std::size_t>(to_int(v)); }},
             {"r_max", [](RunConfig& c, std::string const& v) { c.grid.r_max = to_double(v); }},
             {"r0", [](RunConfig& c, std::string const& v) { c.grid.r0 = to_double(v); }},
             {"extrapolate", [](RunConfig& c, std::string const& v) { c.extrapolate = to_bool(v); }},
         }},
        {"quadrature",
         {
             {"tol", [](RunConfig& c, std::string const& v) { c.tol = to_double(v); }},
         }},
        {"tterm",
         {
             {"mode",
              [](RunConfig& c, std::string const& v) {
                  try {
                      c.t.mode = t_mode_from_string(trim(v));
                  } catch (std::exception const& e) {
                      throw ConfigError(e.what());
                  }
              }},
             {"lmax", [](RunConfig& c, std::string const& v) { c.t.l_max = to_int(v); }},
             {"eta_rel", [](RunConfig& c, std::string const& v) { c.t.eta_rel = to_double(v); }},
             {"lmax_tol", [](RunConfig& c, std::string const& v) { c.t.l_max_tol = to_double(v); }},
             {"tol", [](RunConfig& c, std::string const& v) { c.t.tol = to_double(v); }},
         }},
        {"input",
         {
             {"e", [](RunConfig& c, std::string const& v) { c.e = to_double(v); }},
             {"P", [](RunConfig& c, std::string const& v) { c.P = parse_momentum(v); }},
             {"n", [](RunConfig& c, std::string const& v) { c.n = to_int(v); }},
             {"l", [](RunConfig& c, std::string const& v) { c.l = to_int(v); }},
         }},
        {"sweep",
         {
             {"beta_z", [](RunConfig& c, std::string const& v) { c.sweep.beta_z = parse_range(v); }},
             {"Lambda", [](RunConfig& c, std::string const& v) { c.sweep.Lambda = parse_range(v); }},
             {"alpha", [](RunConfig& c, std::string const& v) { c.sweep.alpha = parse_range(v); }},
             {"binding", [](RunConfig& c, std::string const& v) { c.sweep.binding = to_bool(v); }},
         }},
        {"output",
         {
             {"path", [](RunConfig& c, std::string const& v) { c.out_path = trim(v); }},
             {"format", [](RunConfig& c, std::string const& v) { c.format = parse_format(v); }},
         }},
    };
    return table;
}

} // namespace

std::vector<double> parse_range(std::string const& text)
{
    std::string const t = trim(text);
    if (t.find(':') == std::string::npos) {
        std::vector<double> out;
        for (auto const& p : split(t, ',')) {
            out.push_back(to_double(p));
        }
        if (out.empty()) {
            throw ConfigError("empty value list");
        }
        return out;
    }
    auto const parts = split(t, ':');
    if (parts.size() != 3 && parts.size() != 4) {
        throw ConfigError("range '" + text + "' must be lo:hi:n or lo:hi:n:log");
    }
    double const lo = to_double(parts[0]);
    double const hi = to_double(parts[1]);
    int const n = to_int(parts[2]);
    bool const log = parts.size() == 4;
    if (log && parts[3] != "log") {
        throw ConfigError("range '" + text + "': the fourth field may only be 'log'");
    }
    if (n < 1) {
        throw ConfigError("range '" + text + "' needs at least one point");
    }
    if (log && !(lo > 0 && hi > 0)) {
        throw ConfigError("range '" + text + "': log spacing needs positive ends");
    }
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        double const t01 = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        out.push_back(log ? lo * std::pow(hi / lo, t01) : lo + (hi - lo) * t01);
    }
    return out;
}

std::array<double, 3> parse_momentum(std::string const& text)
{
    auto const parts = split(text, ',');
    if (parts.size() == 1) {
        return {0.0, 0.0, to_double(parts[0])};
    }
    if (parts.size() == 3) {
        return {to_double(parts[0]), to_double(parts[1]), to_double(parts[2])};
    }
    throw ConfigError("momentum '" + text + "' must be a magnitude or x,y,z");
}

Format parse_format(std::string const& text)
{
    std::string const t = trim(text);
    if (t == "csv") {
        return Format::csv;
    }
    if (t == "json") {
        return Format::json;
    }
    throw ConfigError("unknown format '" + text + "' (expected csv or json)");
}

void load_config_file(std::string const& path, RunConfig& cfg)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(path, tree);
    } catch (pt::ini_parser_error const& e) {
        std::ostringstream os;
        os << path;
        if (e.line() > 0) {
            os << ":" << e.line();
        }
        os << ": " << e.message();
        throw ConfigError(os.str());
    }
    auto const lines = key_lines(path);
    auto where = [&](std::string const& key) {
        auto const it = lines.find(key);
        std::ostringstream os;
        os << path;
        if (it != lines.end()) {
            os << ":" << it->second;
        }
        os << ": [" << key.substr(0, key.find('.')) << "]";
        if (key.find('.') != std::string::npos) {
            os << " " << key.substr(key.find('.') + 1);
        }
        return os.str();
    };

    auto const& table = setters();
    for (auto const& [section, body] : tree) {
        auto const sec = table.find(section);
        if (sec == table.end()) {
            if (body.empty() && !body.data().empty()) {
                throw ConfigError(where("." + section) + ": key outside of any section");
            }
            throw ConfigError(where(section) + ": unknown section");
        }
        for (auto const& [key, node] : body) {
            std::string const full = section + "." + key;
            auto const s = sec->second.find(key);
            if (s == sec->second.end()) {
                throw ConfigError(where(full) + ": unknown key");
            }
            try {
                s->second(cfg, node.data());
            } catch (ConfigError const& e) {
                throw ConfigError(where(full) + ": " + e.what());
            }
        }
    }
}

void RunConfig::validate() const
{
    try {
        params.validate();
    } catch (std::exception const& e) {
        throw ConfigError(e.what());
    }
    if (!(tol > 0) || !(t.tol > 0)) {
        throw ConfigError("tolerances must be positive");
    }
    if (grid.n < 16) {
        throw ConfigError("grid n must be at least 16");
    }
    if (!(grid.r_max > 0) || !(grid.r0 > 0)) {
        throw ConfigError("grid r_max and r0 must be positive");
    }
    if (t.l_max < 0) {
        throw ConfigError("lmax must be non-negative");
    }
}

LevelConfig RunConfig::level_config() const
{
    LevelConfig c;
    c.grid = grid;
    c.tol = tol;
    c.t = t;
    c.extrapolate = extrapolate;
    return c;
}

} // namespace pfqed::cli
