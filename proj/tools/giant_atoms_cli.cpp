// giant-atoms: command-line front end.
//
// Exit codes: 0 ok, 1 validation failure, 2 usage or config error,
// 3 numerical failure.

#include "giant_atoms/giant_atoms.hpp"
#include "giant_atoms/testing.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace giant_atoms;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kValidation = 1, kUsage = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config_path;
    std::optional<std::size_t> jobs;
    std::optional<std::string> format;
    std::string out;
    std::optional<std::string> model;
    std::optional<int> digits;
};

// Config file first, flags override.
RunConfig resolve(const Globals& g) {
    RunConfig c = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
    if (g.format) c.format = *g.format;
    if (g.model) c.model = *g.model;
    if (g.digits) c.digits = *g.digits;
    c.validate();
    return c;
}

std::size_t jobs_of(const Globals& g) { return g.jobs.value_or(default_jobs()); }

// Writes to --out when given, otherwise stdout.
class Sink {
public:
    explicit Sink(const std::string& path, bool binary = false) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
        if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

// Reference layouts follow the atom count the task needs; file layouts are
// used as given.
CouplingLayout layout_for(const RunConfig& c, std::size_t atoms) {
    if (c.layout_kind == "file") return make_layout(c);
    RunConfig r = c;
    r.layout_kind = atoms > 3 ? "reference-5" : c.layout_kind;
    return make_layout(r);
}

SimulationContext context_for(const RunConfig& c, std::size_t atoms) {
    SimulationContext ctx = make_context(c, c.model_kind() == ModelKind::Full
                                                ? std::optional(layout_for(c, atoms))
                                                : std::nullopt);
    return ctx;
}

void emit_table(std::ostream& out, const RunConfig& c, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json o;
            for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = io::rounded(r[i], c.digits);
            arr.push_back(o);
        }
        out << arr.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << io::num(r[i], c.digits);
        out << '\n';
    }
}

void emit_report(std::ostream& out, const RunConfig& c, const json& report) {
    if (c.format == "json") {
        out << report.dump(2) << '\n';
        return;
    }
    out << "key,value\n";
    for (const auto& [k, v] : report.items()) {
        if (v.is_number_float()) {
            out << k << ',' << io::num(v.get<double>(), c.digits) << '\n';
        } else if (v.is_string()) {
            out << k << ',' << v.get<std::string>() << '\n';
        } else {
            out << k << ',' << v.dump() << '\n';
        }
    }
}

// ------------------------------------------------------------- commands

int cmd_couplings(const Globals& g) {
    const RunConfig c = resolve(g);
    const CouplingLayout layout = make_layout(c);
    const double w0 = layout.waveguide.omega0();
    const std::size_t n = layout.size();
    std::vector<std::string> header{"omega_over_omega0"};
    for (std::size_t k = 0; k < n; ++k) header.push_back(fmt::format("gamma_ind_{}", k + 1));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) header.push_back(fmt::format("g_{}{}", j + 1, k + 1));
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) header.push_back(fmt::format("gamma_coll_{}{}", j + 1, k + 1));
    }
    std::vector<std::vector<double>> rows;
    for (double x : SweepGrid::linspace(c.scan_min, c.scan_max, static_cast<std::size_t>(c.scan_samples))) {
        const auto p = coupling_profile(layout, x * w0);
        std::vector<double> r{x};
        for (double v : p.gamma_ind) r.push_back(v);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) r.push_back(p.g[j][k]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) r.push_back(p.gamma_coll[j][k]);
        }
        rows.push_back(std::move(r));
    }
    Sink sink(g.out);
    emit_table(sink.stream(), c, header, rows);
    return kOk;
}

int cmd_df_scan(const Globals& g, double tol) {
    const RunConfig c = resolve(g);
    const CouplingLayout layout = make_layout(c);
    const double w0 = layout.waveguide.omega0();
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < layout.size(); ++k) {
        for (double w : find_df_frequencies(layout, k, c.scan_min * w0, c.scan_max * w0, tol)) {
            const double eighths = std::round(8.0 * w / w0);
            rows.push_back({static_cast<double>(k + 1), w / w0, std::floor(eighths / 8.0),
                            eighths - 8.0 * std::floor(eighths / 8.0), individual_decay(layout, k, w)});
        }
    }
    Sink sink(g.out);
    emit_table(sink.stream(), c, {"atom", "omega_over_omega0", "n", "m", "gamma_ind"}, rows);
    return kOk;
}

int cmd_gate(const Globals& g, const std::string& kind_name) {
    const RunConfig c = resolve(g);
    const GateKind kind = parse_gate_kind(kind_name);
    const SimulationContext ctx = context_for(c, gate_arity(kind));
    const auto noise = NoiseParams::uniform(gate_arity(kind), c.ex_over_g(), c.phi_over_g());
    const GateFidelity r = simulate_gate(kind, 1.0, noise, ctx, jobs_of(g));
    json report;
    report["gate"] = std::string(to_string(kind));
    report["model"] = c.model;
    report["duration_ns"] = io::rounded(c.to_ns(r.duration), c.digits);
    report["gamma_ex_over_g"] = io::rounded(c.ex_over_g(), c.digits);
    report["gamma_phi_over_g"] = io::rounded(c.phi_over_g(), c.digits);
    report["process_fidelity"] = io::rounded(r.process_fidelity, c.digits);
    report["average_fidelity"] = io::rounded(r.average_fidelity, c.digits);
    report["leakage"] = io::rounded(r.leakage, c.digits);
    json pre = json::array(), post = json::array();
    for (double v : r.frames.pre) pre.push_back(io::rounded(v, c.digits));
    for (double v : r.frames.post) post.push_back(io::rounded(v, c.digits));
    report["virtual_z_pre"] = pre;
    report["virtual_z_post"] = post;
    Sink sink(g.out);
    emit_report(sink.stream(), c, report);
    return kOk;
}

int cmd_choi(const Globals& g, const std::string& kind_name, bool binary) {
    const RunConfig c = resolve(g);
    const GateKind kind = parse_gate_kind(kind_name);
    const SimulationContext ctx = context_for(c, gate_arity(kind));
    const auto noise = NoiseParams::uniform(gate_arity(kind), c.ex_over_g(), c.phi_over_g());
    const GateChannel ch = gate_channel(kind, 1.0, noise, ctx);
    const ChoiMatrix phi = reconstruct_choi(ch.model, ch.duration, ch.reg, ctx.solver, jobs_of(g));
    if (binary) {
        if (g.out.empty()) throw UsageError("--binary needs --out");
        Sink sink(g.out, true);
        io::write_choi_binary(sink.stream(), phi);
        return kOk;
    }
    Sink sink(g.out);
    if (c.format == "json") {
        json re = json::array(), im = json::array();
        for (Eigen::Index r = 0; r < phi.matrix.rows(); ++r) {
            json rr = json::array(), ii = json::array();
            for (Eigen::Index k = 0; k < phi.matrix.cols(); ++k) {
                rr.push_back(io::rounded(phi.matrix(r, k).real(), c.digits));
                ii.push_back(io::rounded(phi.matrix(r, k).imag(), c.digits));
            }
            re.push_back(rr);
            im.push_back(ii);
        }
        sink.stream() << json{{"d", phi.d}, {"re", re}, {"im", im}}.dump() << '\n';
    } else {
        io::write_choi_csv(sink.stream(), phi, c.digits);
    }
    return kOk;
}

std::function<double(double, double)> sweep_evaluator(const std::string& target, const SimulationContext& ctx) {
    if (target == "ghz3") return [ctx](double x, double y) { return ghz_fidelity_at(3, x, y, ctx); };
    if (target == "ghz5") return [ctx](double x, double y) { return ghz_fidelity_at(5, x, y, ctx); };
    const GateKind kind = parse_gate_kind(target);
    return [ctx, kind](double x, double y) { return gate_process_fidelity_at(kind, x, y, ctx); };
}

int cmd_sweep(const Globals& g, const std::optional<std::string>& target_flag) {
    RunConfig c = resolve(g);
    if (target_flag) c.sweep_target = *target_flag;
    c.validate();
    const std::size_t atoms = c.sweep_target == "ghz5" ? 5 : 3;
    const SimulationContext ctx = context_for(c, atoms);
    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult r = noise_sweep_and_fit(c.sweep_target, c.grid(), sweep_evaluator(c.sweep_target, ctx), jobs_of(g));
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    {
        Sink sink(g.out);
        if (c.format == "json") {
            sink.stream() << io::sweep_json(r, c.digits).dump(2) << '\n';
        } else {
            io::write_sweep_csv(sink.stream(), r, c.digits);
        }
    }
    const std::string fit = io::fit_json(r, c.digits).dump(2);
    if (g.out.empty()) {
        std::cerr << fit << '\n';
    } else {
        if (c.format == "csv") {
            std::ofstream(g.out + ".fit.json") << fit << '\n';
        }
        const std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        json meta{{"generated_utc", stamp}, {"jobs", jobs_of(g)}, {"wall_seconds", wall}, {"config", to_ini(c)}};
        std::ofstream(g.out + ".meta.json") << meta.dump(2) << '\n';
    }
    if (r.nonlinear) {
        std::cerr << fmt::format("warning: fit residual rms {:.3g} exceeds {:.0e}; grid may leave the linear regime\n",
                                 r.rms_residual, kLinearityThreshold);
    }
    return kOk;
}

int cmd_ghz(const Globals& g, int n) {
    const RunConfig c = resolve(g);
    if (n != 3 && n != 5) throw UsageError("ghz: size must be 3 or 5");
    const auto nq = static_cast<std::size_t>(n);
    const SimulationContext ctx = context_for(c, nq);
    const Circuit circ = n == 3 ? ghz3_circuit(1.0) : ghz5_circuit(1.0);
    const QutritRegister reg(nq);
    const DensityMatrix rho = simulate_circuit(circ, NoiseParams::uniform(nq, c.ex_over_g(), c.phi_over_g()), ctx);
    double comp = 0.0;
    for (auto i : reg.computational_indices()) comp += rho(i, i).real();
    json report;
    report["n"] = n;
    report["model"] = c.model;
    report["duration_ns"] = io::rounded(c.to_ns(simulated_duration(circ, ctx.model)), c.digits);
    report["gamma_ex_over_g"] = io::rounded(c.ex_over_g(), c.digits);
    report["gamma_phi_over_g"] = io::rounded(c.phi_over_g(), c.digits);
    report["fidelity"] = io::rounded(state_fidelity(rho, ghz_ket(reg)), c.digits);
    report["leakage"] = io::rounded(1.0 - comp, c.digits);
    Sink sink(g.out);
    emit_report(sink.stream(), c, report);
    return kOk;
}

struct Check {
    std::string name;
    double value;
    double tolerance;
    bool passed;
};

int cmd_validate(const Globals& g) {
    const RunConfig c = resolve(g);
    std::vector<Check> checks;
    auto below = [&](std::string name, double value, double tol) { checks.push_back({std::move(name), value, tol, value < tol}); };

    const CouplingLayout layout = make_layout(c);
    for (const auto& lc : verify_chain_layout(layout, 1.0, {c.df_n}).checks) {
        checks.push_back({lc.name, lc.value, lc.tolerance, lc.passed});
    }

    std::mt19937_64 rng(20240501);
    double oracle = 0.0;
    for (int i = 0; i < 5; ++i) {
        const auto m = testing::random_model(9, 3, 0.3, rng);
        const DensityMatrix rho0 = testing::random_density(9, rng);
        const DensityMatrix a = evolve(m, rho0, 1.5, c.solver());
        oracle = std::max(oracle, (a - evolve_superop_oracle(m, rho0, 1.5)).cwiseAbs().maxCoeff());
    }
    below("solver matches superoperator exponential", oracle, 1e-8);

    SimulationContext eff;
    eff.solver = c.solver();
    for (auto k : {GateKind::CCZS, GateKind::DIV, GateKind::ISWAP}) {
        const auto r = simulate_gate(k, 1.0, NoiseParams::uniform(gate_arity(k), 0, 0), eff, jobs_of(g));
        below(fmt::format("noiseless {} process infidelity", to_string(k)), 1.0 - r.process_fidelity, 1e-9);
    }
    below("noiseless GHZ-3 infidelity", 1.0 - ghz_fidelity_at(3, 0, 0, eff), 1e-9);

    std::vector<std::vector<double>> leakage_rows;
    if (c.model_kind() == ModelKind::Full) {
        double prev = 1.0;
        bool monotone = true;
        for (double ratio : {12.5, 25.0, 50.0, 100.0}) {
            SimulationContext full = eff;
            full.model = ModelKind::Full;
            full.n = c.df_n;
            full.layout = reference_layout(3, 1.0, WaveguideParams::from_omega0(8.0 * ratio));
            const auto r = simulate_gate(GateKind::CCZS, 1.0, NoiseParams::uniform(3, 0, 0), full, jobs_of(g));
            leakage_rows.push_back({ratio, r.leakage, r.process_fidelity});
            monotone = monotone && r.leakage < prev;
            prev = r.leakage;
        }
        checks.push_back({"full-model CCZS leakage falls with |chi|/g", monotone ? 0.0 : 1.0, 0.5, monotone});
    }

    Sink sink(g.out);
    auto& out = sink.stream();
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& ch : checks) {
            arr.push_back({{"check", ch.name}, {"value", io::rounded(ch.value, c.digits)},
                           {"tolerance", ch.tolerance}, {"passed", ch.passed}});
        }
        json doc{{"checks", arr}};
        if (!leakage_rows.empty()) {
            json lt = json::array();
            for (const auto& r : leakage_rows) lt.push_back({{"chi_over_g", r[0]}, {"leakage", r[1]}, {"process_fidelity", r[2]}});
            doc["leakage_trend"] = lt;
        }
        out << doc.dump(2) << '\n';
    } else {
        out << "check,value,tolerance,result\n";
        for (const auto& ch : checks) {
            out << '"' << ch.name << "\"," << io::num(ch.value, c.digits) << ',' << io::num(ch.tolerance, 3) << ','
                << (ch.passed ? "PASS" : "FAIL") << '\n';
        }
        if (!leakage_rows.empty()) {
            out << "\nchi_over_g,leakage,process_fidelity\n";
            for (const auto& r : leakage_rows) {
                out << io::num(r[0], c.digits) << ',' << io::num(r[1], c.digits) << ',' << io::num(r[2], c.digits) << '\n';
            }
        }
    }
    for (const auto& ch : checks) {
        if (!ch.passed) {
            std::cerr << "validation failed: " << ch.name << '\n';
            return kValidation;
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Giant-atom waveguide QED gate simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config_path, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("--jobs", g.jobs, "worker threads (default: logical cores)")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--model", g.model, "gate model")->check(CLI::IsMember({"effective", "full"}));
    app.add_option("--digits", g.digits, "significant digits in numeric output")->check(CLI::Range(1, 17));

    int rc = kOk;
    auto* couplings = app.add_subcommand("couplings", "tabulate decay rates and couplings over a frequency range");
    couplings->callback([&] { rc = cmd_couplings(g); });

    double df_tol = kDfDecayTolerance;
    auto* df = app.add_subcommand("df-scan", "locate decoherence-free frequencies of every atom");
    df->add_option("--tol", df_tol, "decay threshold in units of gamma")->check(CLI::PositiveNumber);
    df->callback([&] { rc = cmd_df_scan(g, df_tol); });

    std::string gate_kind;
    auto* gate = app.add_subcommand("gate", "simulate one gate and report fidelities");
    gate->add_option("kind", gate_kind)->required()->check(CLI::IsMember({"cczs", "div", "iswap", "cz"}));
    gate->callback([&] { rc = cmd_gate(g, gate_kind); });

    std::string choi_kind;
    bool choi_binary = false;
    auto* choi = app.add_subcommand("choi", "dump the projected Choi matrix of a gate");
    choi->add_option("kind", choi_kind)->required()->check(CLI::IsMember({"cczs", "div", "iswap", "cz"}));
    choi->add_flag("--binary", choi_binary, "write the binary format (needs --out)");
    choi->callback([&] { rc = cmd_choi(g, choi_kind, choi_binary); });

    std::optional<std::string> sweep_target;
    auto* sweep = app.add_subcommand("sweep", "noise sweep with affine fidelity fit");
    sweep->add_option("--target", sweep_target, "cczs|div|iswap|cz|ghz3|ghz5");
    sweep->callback([&] { rc = cmd_sweep(g, sweep_target); });

    int ghz_n = 3;
    auto* ghz = app.add_subcommand("ghz", "prepare a GHZ state and report its fidelity");
    ghz->add_option("size", ghz_n, "3 or 5")->check(CLI::IsMember({3, 5}));
    ghz->callback([&] { rc = cmd_ghz(g, ghz_n); });

    auto* validate = app.add_subcommand("validate", "run self-checks and print a pass/fail table");
    validate->callback([&] { rc = cmd_validate(g); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConsistencyError& e) {
        std::cerr << "layout error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return rc;
}
