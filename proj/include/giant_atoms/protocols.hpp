// protocols.hpp — GHZ circuits, decoherence-free frequency schedules, circuit
// simulation in the effective or transmon model, and noise sweeps with affine
// fidelity fits.

#pragma once

#include "giant_atoms/algebra.hpp"
#include "giant_atoms/couplings.hpp"
#include "giant_atoms/dynamics.hpp"
#include "giant_atoms/gates.hpp"
#include "giant_atoms/parallel.hpp"
#include "giant_atoms/tomography.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace giant_atoms {

// ---------------------------------------------------------- single qubit

namespace qubit_gates {

inline Eigen::Matrix2cd x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
inline Eigen::Matrix2cd z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}
inline Eigen::Matrix2cd h() {
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix2cd m;
    m << r, r, r, -r;
    return m;
}
inline Eigen::Matrix2cd s() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, cplx(0, 1);
    return m;
}
inline Eigen::Matrix2cd sdg() { return s().adjoint(); }
inline Eigen::Matrix2cd rz(double theta) {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, std::polar(1.0, theta);
    return m;
}

}  // namespace qubit_gates

struct QubitOp {
    std::size_t atom{0};
    Eigen::Matrix2cd u;
    std::string name;
};

using QubitLayer = std::vector<QubitOp>;

// Either an instantaneous ideal layer or a timed multi-qubit gate.
struct Segment {
    std::variant<QubitLayer, GateSpec> content;

    bool timed() const { return std::holds_alternative<GateSpec>(content); }
    const GateSpec& gate() const { return std::get<GateSpec>(content); }
    const QubitLayer& layer() const { return std::get<QubitLayer>(content); }
};

struct Circuit {
    std::size_t n_atoms{0};
    std::vector<Segment> segments;

    void add_layer(QubitLayer layer) { segments.push_back({std::move(layer)}); }
    void add_gate(GateSpec g) { segments.push_back({std::move(g)}); }

    double duration() const {
        double t = 0.0;
        for (const auto& s : segments) {
            if (s.timed()) t += s.gate().duration;
        }
        return t;
    }
};

// CCZS maps |1>|+>|0> to (|100> - |011>)/sqrt2; X1 Z1 then yields GHZ-3.
inline Circuit ghz3_circuit(double g) {
    using namespace qubit_gates;
    Circuit c{3, {}};
    c.add_layer({{0, x(), "x"}, {1, h(), "h"}});
    c.add_gate(GateSpec::make(GateKind::CCZS, {0, 1, 2}, g));
    c.add_layer({{0, x(), "x"}, {0, z(), "z"}});
    return c;
}

// After CCZS(123) and the X1 Z1 layer the state is GHZ on atoms 1-3;
// iSWAP(3,4) gives (|00000> - i|11010>)/sqrt2, X3 then CCZS(3,4,5) with hub 4
// gives (|00100> + i|11011>)/sqrt2, and X3 S1^dagger finish GHZ-5.
inline Circuit ghz5_circuit(double g) {
    using namespace qubit_gates;
    Circuit c{5, {}};
    c.add_layer({{0, x(), "x"}, {1, h(), "h"}});
    c.add_gate(GateSpec::make(GateKind::CCZS, {0, 1, 2}, g));
    c.add_layer({{0, x(), "x"}, {0, z(), "z"}});
    c.add_gate(GateSpec::make(GateKind::ISWAP, {2, 3}, g));
    c.add_layer({{2, x(), "x"}});
    c.add_gate(GateSpec::make(GateKind::CCZS, {2, 3, 4}, g));
    c.add_layer({{2, x(), "x"}, {0, sdg(), "sdg"}});
    return c;
}

// ------------------------------------------------------------- scheduling

class SchedulingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Transmon anharmonicities used by the schedule: the hub's 1->2 line must sit
// one DF step (omega0/8) below its 0->1 line; end atoms sit further away.
struct AnharmonicityPlan {
    double hub_over_omega0{-0.125};
    double end_over_omega0{-0.25};

    double chi(std::size_t atom, double omega0) const {
        return (is_hub(atom) ? hub_over_omega0 : end_over_omega0) * omega0;
    }
};

struct SegmentSchedule {
    double t_start{0.0};
    double t_end{0.0};
    std::vector<std::size_t> participants;
    std::vector<DfPoint> points;  // per atom
};

struct FrequencySchedule {
    std::vector<SegmentSchedule> segments;  // one per timed circuit segment
    double omega0{0.0};
    std::vector<double> chi;  // per atom
};

inline constexpr double kParkingDetuning = 0.125;  // in units of omega0

// Required DF points per participant for one gate.
inline std::vector<DfPoint> participant_points(const GateSpec& gate, const WaveguideParams& wg, int n) {
    std::vector<DfPoint> out;
    switch (gate.kind) {
        case GateKind::CCZS:
            out = {df_point(wg, n, 2), df_point(wg, n, 3), df_point(wg, n, 2)};
            break;
        case GateKind::DIV:
            out = {df_point(wg, n, 2), df_point(wg, n, 2), df_point(wg, n, 2)};
            break;
        case GateKind::ISWAP:
            out = {df_point(wg, n, 2), df_point(wg, n, 2)};
            break;
        case GateKind::CZ:
            out = {df_point(wg, n, 2), df_point(wg, n, 3)};
            break;
    }
    return out;
}

// Places every timed gate at its DF frequencies, parks idle atoms on DF points
// at least omega0/8 away from every other transition in the segment, and
// checks decay and coupling conditions at the chosen frequencies.
inline FrequencySchedule build_schedule(const Circuit& circuit, const CouplingLayout& layout, double gamma, int n = 2,
                                        AnharmonicityPlan plan = {}) {
    if (layout.size() != circuit.n_atoms) throw std::invalid_argument("build_schedule: layout/circuit size mismatch");
    if (n < 1) throw std::invalid_argument("build_schedule: DF index n must be >= 1");
    const auto& wg = layout.waveguide;
    const double w0 = wg.omega0();
    const std::size_t N = circuit.n_atoms;

    FrequencySchedule sched;
    sched.omega0 = w0;
    for (std::size_t k = 0; k < N; ++k) sched.chi.push_back(plan.chi(k, w0));

    auto name_atoms = [](const std::vector<std::size_t>& atoms) {
        std::string s;
        for (auto a : atoms) s += (s.empty() ? "" : ",") + std::to_string(a + 1);
        return s;
    };

    double t = 0.0;
    for (const auto& seg : circuit.segments) {
        if (!seg.timed()) continue;
        const GateSpec& gate = seg.gate();
        SegmentSchedule ss;
        ss.t_start = t;
        ss.t_end = t + gate.duration;
        t = ss.t_end;
        ss.participants = gate.atoms;
        ss.points.assign(N, DfPoint{});
        std::vector<bool> placed(N, false);

        if (gate.kind == GateKind::CCZS && !is_hub(gate.atoms[1])) {
            throw SchedulingError("build_schedule: CCZS control atom " + std::to_string(gate.atoms[1] + 1) +
                                  " is not a hub");
        }
        if (gate.kind == GateKind::CZ && !is_hub(gate.atoms[1])) {
            throw SchedulingError("build_schedule: CZ target atom " + std::to_string(gate.atoms[1] + 1) +
                                  " is not a hub");
        }
        const auto pts = participant_points(gate, wg, n);
        for (std::size_t i = 0; i < gate.atoms.size(); ++i) {
            ss.points[gate.atoms[i]] = pts[i];
            placed[gate.atoms[i]] = true;
        }

        std::vector<std::size_t> idle;
        for (std::size_t k = 0; k < N; ++k) {
            if (!placed[k]) idle.push_back(k);
        }

        auto candidates = [&](std::size_t k) {
            std::vector<DfPoint> c;
            for (int dn : {0, 1, -1, 2}) {
                const int nn = n + dn;
                if (nn < 0) continue;
                for (int m : {2, 6, 1, 3, 5, 7}) {
                    if (!is_hub(k) && m != 2 && m != 6) continue;
                    c.push_back(df_point(wg, nn, m));
                }
            }
            return c;
        };
        auto compatible = [&](std::size_t k, const DfPoint& p) {
            for (std::size_t j = 0; j < N; ++j) {
                if (j == k || !placed[j]) continue;
                for (double a : {p.omega, p.omega + sched.chi[k]}) {
                    for (double b : {ss.points[j].omega, ss.points[j].omega + sched.chi[j]}) {
                        if (std::abs(a - b) < kParkingDetuning * w0 * (1.0 - 1e-12)) return false;
                    }
                }
            }
            return true;
        };
        std::function<bool(std::size_t)> place = [&](std::size_t i) {
            if (i == idle.size()) return true;
            const std::size_t k = idle[i];
            for (const auto& p : candidates(k)) {
                if (!compatible(k, p)) continue;
                ss.points[k] = p;
                placed[k] = true;
                if (place(i + 1)) return true;
                placed[k] = false;
            }
            return false;
        };
        if (!place(0)) {
            throw SchedulingError("build_schedule: no parking assignment for idle atoms " + name_atoms(idle) +
                                  " during " + std::string(to_string(gate.kind)) + "(" + name_atoms(gate.atoms) + ")");
        }

        // Decay and coupling conditions at the scheduled frequencies.
        for (std::size_t k = 0; k < N; ++k) {
            const double gi = individual_decay(layout, k, ss.points[k].omega);
            if (std::abs(gi) >= kDfDecayTolerance * gamma) {
                throw SchedulingError("build_schedule: atom " + std::to_string(k + 1) +
                                      " is not decoherence-free at its scheduled frequency");
            }
        }
        const double w_act = df_point(wg, n, 2).omega;
        const auto& a = gate.atoms;
        std::vector<std::pair<std::size_t, std::size_t>> active, parasitic;
        if (gate.kind == GateKind::CCZS || gate.kind == GateKind::DIV) {
            active = {{a[0], a[1]}, {a[1], a[2]}};
            parasitic = {{a[0], a[2]}};
        } else {
            active = {{a[0], a[1]}};
        }
        for (auto [j, k] : active) {
            const double gjk = coherent_coupling(layout, j, k, w_act);
            if (std::abs(std::abs(gjk) - gamma) >= kCouplingTolerance * gamma) {
                throw SchedulingError("build_schedule: active coupling of atoms " + name_atoms({j, k}) +
                                      " differs from gamma");
            }
        }
        for (auto [j, k] : parasitic) {
            if (std::abs(coherent_coupling(layout, j, k, w_act)) >= kCouplingTolerance * gamma) {
                throw SchedulingError("build_schedule: parasitic coupling of atoms " + name_atoms({j, k}) +
                                      " does not vanish");
            }
        }
        sched.segments.push_back(std::move(ss));
    }
    return sched;
}

// ------------------------------------------------------------- simulation

enum class ModelKind { Effective, Full };

inline ModelKind parse_model_kind(std::string_view s) {
    if (s == "effective") return ModelKind::Effective;
    if (s == "full") return ModelKind::Full;
    throw std::invalid_argument("unknown model '" + std::string(s) + "'");
}

inline std::string_view to_string(ModelKind m) { return m == ModelKind::Effective ? "effective" : "full"; }

// Everything a circuit simulation needs besides the circuit and the noise.
struct SimulationContext {
    ModelKind model{ModelKind::Effective};
    std::optional<CouplingLayout> layout;  // required for the full model
    int n{2};
    AnharmonicityPlan anharmonicity{};
    SolverOptions solver{};
};

inline Operator qubit_layer_unitary(const QubitLayer& layer, const QutritRegister& reg) {
    Operator u = Operator::Identity(reg.dim(), reg.dim());
    for (const auto& op : layer) u = embed(reg, lift_qubit_gate(op.u), op.atom) * u;
    return u;
}

namespace detail {

inline std::vector<AtomParams> atom_params(const FrequencySchedule& s, const SegmentSchedule& ss) {
    std::vector<AtomParams> out;
    for (std::size_t k = 0; k < ss.points.size(); ++k) out.push_back({ss.points[k].omega, s.chi[k]});
    return out;
}

inline CouplingLayout sub_layout(const CouplingLayout& layout, const std::vector<std::size_t>& atoms) {
    CouplingLayout sub;
    sub.waveguide = layout.waveguide;
    for (auto a : atoms) sub.atoms.push_back(layout.atoms[a]);
    return sub;
}

// Z frames that map the noiseless transmon gate on its participants onto the
// ideal gate.
inline VirtualZResult full_model_frames(const GateSpec& gate, const CouplingLayout& layout,
                                        const std::vector<AtomParams>& params, double frame, double duration) {
    const CouplingLayout sub = sub_layout(layout, gate.atoms);
    std::vector<AtomParams> sp;
    for (auto a : gate.atoms) sp.push_back(params[a]);
    const QutritRegister reg(gate.atoms.size());
    const Operator h = full_model_hamiltonian(sp, sub, frame);
    const Operator u = (Operator(cplx(0, -duration) * h)).exp();
    const Eigen::MatrixXcd uc = computational_block(u, reg);
    const ChoiMatrix phi =
        choi_from_map(uc.rows(), [&](const Eigen::MatrixXcd& r) -> Eigen::MatrixXcd { return uc * r * uc.adjoint(); });
    return calibrate_virtual_z(phi, gate_matrix(gate.kind), gate.atoms.size());
}

}  // namespace detail

// Runs the circuit from `rho0` (|0...0> when empty). Qubit layers are exact and
// instantaneous; decoherence acts on every atom during timed segments.
inline DensityMatrix simulate_circuit(const Circuit& circuit, const NoiseParams& noise, const SimulationContext& ctx,
                                      std::optional<DensityMatrix> rho0 = std::nullopt) {
    const QutritRegister reg(circuit.n_atoms);
    DensityMatrix rho = rho0 ? *rho0 : pure_density(basis_ket(reg, Labels(circuit.n_atoms, 0)));
    if (rho.rows() != reg.dim()) throw std::invalid_argument("simulate_circuit: initial state has wrong dimension");
    const auto collapse = build_collapse_ops(reg, noise);

    std::optional<FrequencySchedule> sched;
    if (ctx.model == ModelKind::Full) {
        if (!ctx.layout) throw std::invalid_argument("simulate_circuit: full model needs a coupling layout");
        // The layout's tap strength sets the exchange rate, so it doubles as gamma.
        double g = 1.0;
        for (const auto& s : circuit.segments) {
            if (s.timed()) g = s.gate().g;
        }
        sched = build_schedule(circuit, *ctx.layout, g, ctx.n, ctx.anharmonicity);
    }

    std::size_t timed_index = 0;
    for (const auto& seg : circuit.segments) {
        if (!seg.timed()) {
            const Operator u = qubit_layer_unitary(seg.layer(), reg);
            rho = u * rho * u.adjoint();
            continue;
        }
        const GateSpec& gate = seg.gate();
        if (ctx.model == ModelKind::Effective) {
            rho = evolve(LindbladModel{effective_hamiltonian(gate, reg), collapse}, rho, gate.duration, ctx.solver);
            continue;
        }

        const auto& ss = sched->segments[timed_index++];
        const auto params = detail::atom_params(*sched, ss);
        const double frame = df_point(ctx.layout->waveguide, ctx.n, 2).omega;
        const double t = full_model_duration(gate.kind, gate.g);
        const VirtualZResult frames = detail::full_model_frames(gate, *ctx.layout, params, frame, t);

        QubitLayer pre, post;
        for (std::size_t i = 0; i < gate.atoms.size(); ++i) {
            pre.push_back({gate.atoms[i], qubit_gates::rz(frames.pre[i]), "vz"});
            post.push_back({gate.atoms[i], qubit_gates::rz(frames.post[i]), "vz"});
        }
        // Idle atoms only pick up their frame detuning.
        for (std::size_t k = 0; k < circuit.n_atoms; ++k) {
            if (std::find(gate.atoms.begin(), gate.atoms.end(), k) != gate.atoms.end()) continue;
            post.push_back({k, qubit_gates::rz((params[k].omega - frame) * t), "vz"});
        }
        NoiseParams nz = noise;
        nz.gamma_ind.assign(circuit.n_atoms, 0.0);
        for (std::size_t k = 0; k < circuit.n_atoms; ++k) {
            nz.gamma_ind[k] = std::max(0.0, individual_decay(*ctx.layout, k, params[k].omega));
        }
        const Operator u_pre = qubit_layer_unitary(pre, reg);
        const Operator u_post = qubit_layer_unitary(post, reg);
        rho = u_pre * rho * u_pre.adjoint();
        rho = evolve(LindbladModel{full_model_hamiltonian(params, *ctx.layout, frame), build_collapse_ops(reg, nz)},
                     rho, t, ctx.solver);
        rho = u_post * rho * u_post.adjoint();
    }
    return rho;
}

// Duration actually simulated for the circuit under the chosen model.
inline double simulated_duration(const Circuit& circuit, ModelKind model) {
    if (model == ModelKind::Effective) return circuit.duration();
    double t = 0.0;
    for (const auto& s : circuit.segments) {
        if (s.timed()) t += full_model_duration(s.gate().kind, s.gate().g);
    }
    return t;
}

// ---------------------------------------------------------- gate channels

struct GateChannel {
    LindbladModel model;
    double duration{0.0};
    QutritRegister reg{1};
};

// Lindblad model of one gate on a register holding only its participants.
// The full model places them on the first atoms of the layout.
inline GateChannel gate_channel(GateKind kind, double g, const NoiseParams& noise, const SimulationContext& ctx) {
    const std::size_t n = gate_arity(kind);
    std::vector<std::size_t> atoms(n);
    for (std::size_t i = 0; i < n; ++i) atoms[i] = i;
    const GateSpec spec = GateSpec::make(kind, atoms, g);
    GateChannel ch{{}, spec.duration, QutritRegister(n)};
    if (ctx.model == ModelKind::Effective) {
        ch.model = {effective_hamiltonian(spec, ch.reg), build_collapse_ops(ch.reg, noise)};
        return ch;
    }
    if (!ctx.layout) throw std::invalid_argument("gate_channel: full model needs a coupling layout");
    if (ctx.layout->size() < n) throw std::invalid_argument("gate_channel: layout has too few atoms");
    const CouplingLayout sub = detail::sub_layout(*ctx.layout, atoms);
    Circuit c{n, {}};
    c.add_gate(spec);
    const auto sched = build_schedule(c, sub, g, ctx.n, ctx.anharmonicity);
    const auto params = detail::atom_params(sched, sched.segments.front());
    const double frame = df_point(sub.waveguide, ctx.n, 2).omega;
    NoiseParams nz = noise;
    nz.gamma_ind.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) nz.gamma_ind[k] = std::max(0.0, individual_decay(sub, k, params[k].omega));
    ch.duration = full_model_duration(kind, g);
    ch.model = {full_model_hamiltonian(params, sub, frame), build_collapse_ops(ch.reg, nz)};
    return ch;
}

struct GateFidelity {
    double duration{0.0};
    double process_fidelity{0.0};
    double average_fidelity{0.0};
    double leakage{0.0};
    VirtualZResult frames;
};

// Choi reconstruction followed by virtual-Z calibration against the ideal gate.
inline GateFidelity simulate_gate(GateKind kind, double g, const NoiseParams& noise, const SimulationContext& ctx,
                                  std::size_t jobs = 1) {
    const GateChannel ch = gate_channel(kind, g, noise, ctx);
    const ChoiMatrix phi = reconstruct_choi(ch.model, ch.duration, ch.reg, ctx.solver, jobs);
    GateFidelity r;
    r.duration = ch.duration;
    r.frames = calibrate_virtual_z(phi, gate_matrix(kind), gate_arity(kind));
    r.process_fidelity = r.frames.fidelity;
    r.average_fidelity = average_gate_fidelity(r.process_fidelity, phi.d);
    r.leakage = phi.leakage();
    return r;
}

// --------------------------------------------------------------- sweeps

struct SweepGrid {
    std::vector<double> ex;   // Gamma_ex / g
    std::vector<double> phi;  // Gamma_phi / g

    static std::vector<double> linspace(double lo, double hi, std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        return v;
    }
    static SweepGrid standard() { return {linspace(0.0, 2e-3, 5), linspace(0.0, 2e-3, 5)}; }

    std::size_t size() const { return ex.size() * phi.size(); }
};

struct SweepPoint {
    double ex{0.0};
    double phi{0.0};
    double fidelity{0.0};
    double residual{0.0};
};

inline constexpr double kLinearityThreshold = 1e-4;

struct SweepResult {
    std::string target;
    std::vector<SweepPoint> points;  // ex-major order
    double intercept{0.0};
    double c_ex{0.0};
    double c_phi{0.0};
    double rms_residual{0.0};
    bool nonlinear{false};
};

// Least-squares fit F = a - c_ex x - c_phi y over the points.
inline void fit_affine(SweepResult& r) {
    const auto m = static_cast<Eigen::Index>(r.points.size());
    if (m < 3) throw std::invalid_argument("fit_affine: need at least three grid points");
    Eigen::MatrixXd a(m, 3);
    Eigen::VectorXd f(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& p = r.points[static_cast<std::size_t>(i)];
        a(i, 0) = 1.0;
        a(i, 1) = -p.ex;
        a(i, 2) = -p.phi;
        f(i) = p.fidelity;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < 3) throw std::invalid_argument("fit_affine: grid does not determine both coefficients");
    const Eigen::VectorXd c = qr.solve(f);
    r.intercept = c(0);
    r.c_ex = c(1);
    r.c_phi = c(2);
    const Eigen::VectorXd res = f - a * c;
    for (Eigen::Index i = 0; i < m; ++i) r.points[static_cast<std::size_t>(i)].residual = res(i);
    r.rms_residual = std::sqrt(res.squaredNorm() / static_cast<double>(m));
    r.nonlinear = r.rms_residual > kLinearityThreshold;
}

// Evaluates `fidelity(ex, phi)` on every grid point (independent jobs, ordered
// results) and fits the affine model.
inline SweepResult noise_sweep_and_fit(std::string target, const SweepGrid& grid,
                                       const std::function<double(double, double)>& fidelity, std::size_t jobs = 1) {
    if (grid.ex.empty() || grid.phi.empty()) throw std::invalid_argument("noise_sweep_and_fit: empty grid");
    for (double v : grid.ex) {
        if (!(v >= 0.0)) throw std::invalid_argument("noise_sweep_and_fit: negative rate in grid");
    }
    for (double v : grid.phi) {
        if (!(v >= 0.0)) throw std::invalid_argument("noise_sweep_and_fit: negative rate in grid");
    }
    const std::size_t np = grid.phi.size();
    auto f = parallel_map(grid.size(), jobs, [&](std::size_t i) { return fidelity(grid.ex[i / np], grid.phi[i % np]); });
    SweepResult r;
    r.target = std::move(target);
    for (std::size_t i = 0; i < grid.size(); ++i) r.points.push_back({grid.ex[i / np], grid.phi[i % np], f[i], 0.0});
    fit_affine(r);
    return r;
}

// Fidelity evaluators in units where g = 1.
inline double gate_process_fidelity_at(GateKind kind, double ex, double phi, const SimulationContext& ctx) {
    const auto noise = NoiseParams::uniform(gate_arity(kind), ex, phi);
    return simulate_gate(kind, 1.0, noise, ctx).process_fidelity;
}

inline double ghz_fidelity_at(std::size_t n_qubits, double ex, double phi, const SimulationContext& ctx) {
    if (n_qubits != 3 && n_qubits != 5) throw std::invalid_argument("ghz_fidelity_at: only GHZ-3 and GHZ-5");
    const Circuit c = n_qubits == 3 ? ghz3_circuit(1.0) : ghz5_circuit(1.0);
    const QutritRegister reg(n_qubits);
    const DensityMatrix rho = simulate_circuit(c, NoiseParams::uniform(n_qubits, ex, phi), ctx);
    return state_fidelity(rho, ghz_ket(reg));
}

}  // namespace giant_atoms
