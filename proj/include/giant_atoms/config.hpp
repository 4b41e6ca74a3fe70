// config.hpp — INI run configuration with strict key checking and the
// conversion from laboratory units to the dimensionless g = 1 frame used by
// the simulator.
//
// Units: gamma_mhz and omega0_mhz are angular frequencies divided by 2*pi, in
// MHz. Noise rates gamma_ex_mhz / gamma_phi_mhz are plain rates in 1/us, so
// 0.01 MHz means 1e4 s^-1. The exchange rate g equals the tap strength gamma.

#pragma once

#include "giant_atoms/couplings.hpp"
#include "giant_atoms/dynamics.hpp"
#include "giant_atoms/protocols.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace giant_atoms {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    // [layout]
    std::string layout_kind{"reference-3"};  // reference-3 | reference-5 | file
    std::string layout_file;

    // [units]
    double gamma_mhz{4.0};
    double omega0_mhz{2000.0};
    int df_n{2};

    // [noise]
    double gamma_ex_mhz{0.01};
    double gamma_phi_mhz{0.02};

    // [model]
    std::string model{"effective"};
    std::optional<double> chi_over_g;  // full model: |chi_hub|/g, fixes omega0 = 8 |chi|

    // [solver]
    double reltol{1e-9};
    double abstol{1e-12};
    long max_steps{200000};

    // [sweep]
    std::string sweep_target{"cczs"};
    double ex_min{0.0}, ex_max{2e-3};
    int ex_points{5};
    double phi_min{0.0}, phi_max{2e-3};
    int phi_points{5};

    // [scan]  frequencies in units of omega0
    double scan_min{1.0}, scan_max{2.0};
    int scan_samples{1024};

    // [output]
    std::string format{"csv"};
    int digits{17};

    bool operator==(const RunConfig&) const = default;

    // ---- derived quantities, dimensionless with g = 1
    double g_rad_per_s() const { return 2.0 * std::numbers::pi * gamma_mhz * 1e6; }
    double omega0_over_g() const { return chi_over_g ? 8.0 * *chi_over_g : omega0_mhz / gamma_mhz; }
    double ex_over_g() const { return gamma_ex_mhz * 1e6 / g_rad_per_s(); }
    double phi_over_g() const { return gamma_phi_mhz * 1e6 / g_rad_per_s(); }
    double to_ns(double t_dimless) const { return t_dimless / g_rad_per_s() * 1e9; }

    SolverOptions solver() const { return {reltol, abstol, max_steps}; }
    ModelKind model_kind() const { return parse_model_kind(model); }

    SweepGrid grid() const {
        return {SweepGrid::linspace(ex_min, ex_max, static_cast<std::size_t>(ex_points)),
                SweepGrid::linspace(phi_min, phi_max, static_cast<std::size_t>(phi_points))};
    }

    void validate() const {
        auto fail = [](const std::string& key, const std::string& why) { throw ConfigError(key + ": " + why); };
        if (layout_kind != "reference-3" && layout_kind != "reference-5" && layout_kind != "file") {
            fail("layout.kind", "expected reference-3, reference-5 or file");
        }
        if (layout_kind == "file" && layout_file.empty()) fail("layout.file", "required when layout.kind = file");
        if (!(gamma_mhz > 0.0)) fail("units.gamma_mhz", "must be positive");
        if (!(omega0_mhz > 0.0)) fail("units.omega0_mhz", "must be positive");
        if (df_n < 1) fail("units.df_n", "must be >= 1");
        if (!(gamma_ex_mhz >= 0.0)) fail("noise.gamma_ex_mhz", "must be non-negative");
        if (!(gamma_phi_mhz >= 0.0)) fail("noise.gamma_phi_mhz", "must be non-negative");
        if (model != "effective" && model != "full") fail("model.kind", "expected effective or full");
        if (chi_over_g && !(*chi_over_g > 0.0)) fail("model.chi_over_g", "must be positive");
        if (!(reltol > 0.0)) fail("solver.reltol", "must be positive");
        if (!(abstol > 0.0)) fail("solver.abstol", "must be positive");
        if (max_steps < 1) fail("solver.max_steps", "must be positive");
        static const std::set<std::string> targets{"cczs", "div", "iswap", "cz", "ghz3", "ghz5"};
        if (!targets.count(sweep_target)) fail("sweep.target", "unknown target '" + sweep_target + "'");
        if (ex_points < 1) fail("sweep.ex_points", "grid is empty");
        if (phi_points < 1) fail("sweep.phi_points", "grid is empty");
        if (!(ex_min >= 0.0) || !(ex_max >= ex_min)) fail("sweep.ex_min", "need 0 <= ex_min <= ex_max");
        if (!(phi_min >= 0.0) || !(phi_max >= phi_min)) fail("sweep.phi_min", "need 0 <= phi_min <= phi_max");
        if (!(scan_max > scan_min) || !(scan_min >= 0.0)) fail("scan.min", "need 0 <= min < max");
        if (scan_samples < 2) fail("scan.samples", "need at least 2 samples");
        if (format != "csv" && format != "json") fail("output.format", "expected csv or json");
        if (digits < 1 || digits > 17) fail("output.digits", "must be in 1..17");
    }
};

namespace detail {

// Shortest text that parses back to the same double.
inline std::string exact(double v) { return fmt::format("{}", v); }

template <class T>
T parse_value(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T v{};
    in >> v;
    if (in.fail() || !(in >> std::ws).eof()) throw ConfigError(key + ": cannot parse '" + text + "'");
    return v;
}

}  // namespace detail

inline boost::property_tree::ptree to_ptree(const RunConfig& c) {
    using detail::exact;
    boost::property_tree::ptree t;
    t.put("layout.kind", c.layout_kind);
    if (!c.layout_file.empty()) t.put("layout.file", c.layout_file);
    t.put("units.gamma_mhz", exact(c.gamma_mhz));
    t.put("units.omega0_mhz", exact(c.omega0_mhz));
    t.put("units.df_n", c.df_n);
    t.put("noise.gamma_ex_mhz", exact(c.gamma_ex_mhz));
    t.put("noise.gamma_phi_mhz", exact(c.gamma_phi_mhz));
    t.put("model.kind", c.model);
    if (c.chi_over_g) t.put("model.chi_over_g", exact(*c.chi_over_g));
    t.put("solver.reltol", exact(c.reltol));
    t.put("solver.abstol", exact(c.abstol));
    t.put("solver.max_steps", c.max_steps);
    t.put("sweep.target", c.sweep_target);
    t.put("sweep.ex_min", exact(c.ex_min));
    t.put("sweep.ex_max", exact(c.ex_max));
    t.put("sweep.ex_points", c.ex_points);
    t.put("sweep.phi_min", exact(c.phi_min));
    t.put("sweep.phi_max", exact(c.phi_max));
    t.put("sweep.phi_points", c.phi_points);
    t.put("scan.min", exact(c.scan_min));
    t.put("scan.max", exact(c.scan_max));
    t.put("scan.samples", c.scan_samples);
    t.put("output.format", c.format);
    t.put("output.digits", c.digits);
    return t;
}

inline std::string to_ini(const RunConfig& c) {
    std::ostringstream out;
    boost::property_tree::write_ini(out, to_ptree(c));
    return out.str();
}

// Unknown sections or keys are errors; missing keys keep their defaults.
inline RunConfig from_ptree(const boost::property_tree::ptree& t) {
    RunConfig c;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto str = [](std::string& dst) -> Setter { return [&dst](const std::string&, const std::string& v) { dst = v; }; };
    auto num = [](auto& dst) -> Setter {
        return [&dst](const std::string& k, const std::string& v) {
            dst = detail::parse_value<std::remove_reference_t<decltype(dst)>>(k, v);
        };
    };
    const std::map<std::string, Setter> keys{
        {"layout.kind", str(c.layout_kind)},
        {"layout.file", str(c.layout_file)},
        {"units.gamma_mhz", num(c.gamma_mhz)},
        {"units.omega0_mhz", num(c.omega0_mhz)},
        {"units.df_n", num(c.df_n)},
        {"noise.gamma_ex_mhz", num(c.gamma_ex_mhz)},
        {"noise.gamma_phi_mhz", num(c.gamma_phi_mhz)},
        {"model.kind", str(c.model)},
        {"model.chi_over_g",
         [&c](const std::string& k, const std::string& v) { c.chi_over_g = detail::parse_value<double>(k, v); }},
        {"solver.reltol", num(c.reltol)},
        {"solver.abstol", num(c.abstol)},
        {"solver.max_steps", num(c.max_steps)},
        {"sweep.target", str(c.sweep_target)},
        {"sweep.ex_min", num(c.ex_min)},
        {"sweep.ex_max", num(c.ex_max)},
        {"sweep.ex_points", num(c.ex_points)},
        {"sweep.phi_min", num(c.phi_min)},
        {"sweep.phi_max", num(c.phi_max)},
        {"sweep.phi_points", num(c.phi_points)},
        {"scan.min", num(c.scan_min)},
        {"scan.max", num(c.scan_max)},
        {"scan.samples", num(c.scan_samples)},
        {"output.format", str(c.format)},
        {"output.digits", num(c.digits)},
    };
    for (const auto& [section, body] : t) {
        static const std::set<std::string> sections{"layout", "units", "noise", "model",
                                                    "solver", "sweep", "scan", "output"};
        if (!body.data().empty() || !sections.count(section)) {
            throw ConfigError(section + (body.empty() ? ": key outside of any section" : ": unknown section"));
        }
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            const auto it = keys.find(full);
            if (it == keys.end()) throw ConfigError(full + ": unknown key");
            it->second(full, value.data());
        }
    }
    c.validate();
    return c;
}

inline RunConfig parse_ini(const std::string& text) {
    boost::property_tree::ptree t;
    std::istringstream in(text);
    try {
        boost::property_tree::read_ini(in, t);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax error: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    return from_ptree(t);
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ini(ss.str());
}

// Layout file: one atom per line, whitespace-separated tap positions in units
// of the waveguide cell; '#' starts a comment.
inline std::vector<std::vector<double>> read_layout_positions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("layout.file: cannot open '" + path + "'");
    std::vector<std::vector<double>> atoms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<double> taps;
        std::string tok;
        while (ls >> tok) taps.push_back(detail::parse_value<double>("layout.file line " + std::to_string(lineno), tok));
        if (!taps.empty()) atoms.push_back(std::move(taps));
    }
    if (atoms.empty()) throw ConfigError("layout.file: no atoms in '" + path + "'");
    return atoms;
}

// Coupling layout in the g = 1 frame (tap strength 1, omega0 from the config).
// Reference layouts are verified on construction; file layouts are not, so
// that `validate` can report what is wrong with them.
inline CouplingLayout make_layout(const RunConfig& c) {
    const auto wg = WaveguideParams::from_omega0(c.omega0_over_g());
    if (c.layout_kind == "reference-3") return reference_layout(3, 1.0, wg);
    if (c.layout_kind == "reference-5") return reference_layout(5, 1.0, wg);
    try {
        return CouplingLayout::uniform(wg, read_layout_positions(c.layout_file), 1.0);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("layout.file: ") + e.what());
    }
}

inline SimulationContext make_context(const RunConfig& c, std::optional<CouplingLayout> layout = std::nullopt) {
    SimulationContext ctx;
    ctx.model = c.model_kind();
    ctx.n = c.df_n;
    ctx.solver = c.solver();
    if (ctx.model == ModelKind::Full) ctx.layout = layout ? std::move(layout) : std::optional(make_layout(c));
    return ctx;
}

}  // namespace giant_atoms
