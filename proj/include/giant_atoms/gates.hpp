// gates.hpp — target unitaries, resonant effective Hamiltonians and durations
// for the native multi-qubit gates, plus the rotating-frame transmon model.

#pragma once

#include "giant_atoms/algebra.hpp"
#include "giant_atoms/couplings.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace giant_atoms {

enum class GateKind { CCZS, DIV, ISWAP, CZ };

inline std::string_view to_string(GateKind k) {
    switch (k) {
        case GateKind::CCZS: return "cczs";
        case GateKind::DIV: return "div";
        case GateKind::ISWAP: return "iswap";
        case GateKind::CZ: return "cz";
    }
    return "?";
}

inline GateKind parse_gate_kind(std::string_view s) {
    if (s == "cczs") return GateKind::CCZS;
    if (s == "div") return GateKind::DIV;
    if (s == "iswap") return GateKind::ISWAP;
    if (s == "cz") return GateKind::CZ;
    throw std::invalid_argument("unknown gate kind '" + std::string(s) + "'");
}

inline std::size_t gate_arity(GateKind k) {
    return (k == GateKind::CCZS || k == GateKind::DIV) ? 3 : 2;
}

// Time for equal transition rates g: CCZS pi/(sqrt2 g), DIV pi/(2 sqrt2 g),
// iSWAP pi/(2g), CZ pi/g.
inline double gate_duration(GateKind k, double g) {
    if (!(g > 0.0)) throw std::invalid_argument("gate_duration: g must be positive");
    constexpr double pi = std::numbers::pi;
    switch (k) {
        case GateKind::CCZS: return pi / (std::numbers::sqrt2 * g);
        case GateKind::DIV: return pi / (2.0 * std::numbers::sqrt2 * g);
        case GateKind::ISWAP: return pi / (2.0 * g);
        case GateKind::CZ: return pi / g;
    }
    throw std::invalid_argument("gate_duration: unknown gate");
}

// Per-atom decoherence-free assignment (n, m) for a gate segment.
struct FrequencyAssignment {
    std::size_t atom{0};
    int n{0};
    int m{0};
};

// Participants are ordered:
//   CCZS (end, hub, end)  hub is the control and hosts level 2
//   DIV  (end, middle, end)
//   iSWAP (j, k)
//   CZ   (j, k)           k is promoted to level 2 via |11> <-> |02>
struct GateSpec {
    GateKind kind{GateKind::CCZS};
    std::vector<std::size_t> atoms;
    double g{1.0};
    double duration{0.0};
    std::vector<FrequencyAssignment> frequency_config;

    static GateSpec make(GateKind kind, std::vector<std::size_t> atoms, double g) {
        if (atoms.size() != gate_arity(kind)) {
            throw std::invalid_argument("GateSpec: " + std::string(to_string(kind)) + " needs " +
                                        std::to_string(gate_arity(kind)) + " atoms");
        }
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            for (std::size_t j = i + 1; j < atoms.size(); ++j) {
                if (atoms[i] == atoms[j]) throw std::invalid_argument("GateSpec: repeated atom");
            }
        }
        GateSpec s;
        s.kind = kind;
        s.atoms = std::move(atoms);
        s.g = g;
        s.duration = gate_duration(kind, g);
        return s;
    }

    void validate(const QutritRegister& reg) const {
        if (atoms.size() != gate_arity(kind)) throw std::invalid_argument("GateSpec: wrong participant count");
        for (auto a : atoms) reg.check_atom(a);
    }
};

// 3x3 block acting identically on the 1- and 2-excitation sectors of DIV.
inline Eigen::Matrix3cd div_block() {
    const double r = 1.0 / std::numbers::sqrt2;
    const cplx mi(0.0, -r);
    Eigen::Matrix3cd u;
    u << 0.5, mi, -0.5,
         mi, 0.0, mi,
         -0.5, mi, 0.5;
    return u;
}

// Computational-subspace action of the gate on its participants, in binary
// order of the participant bits (first participant most significant).
inline Eigen::MatrixXcd gate_matrix(GateKind kind) {
    using M = Eigen::MatrixXcd;
    switch (kind) {
        case GateKind::CCZS: {
            // bits (a, hub, b); hub = 1 applies CZ-and-SWAP on (a, b)
            M u = M::Zero(8, 8);
            for (int c = 0; c < 8; ++c) {
                const int a = (c >> 2) & 1, h = (c >> 1) & 1, b = c & 1;
                if (h == 0 || (a == 0 && b == 0)) {
                    u(c, c) = 1.0;
                } else if (a == 1 && b == 1) {
                    u(c, c) = -1.0;
                } else {
                    const int swapped = (b << 2) | (h << 1) | a;
                    u(swapped, c) = -1.0;
                }
            }
            return u;
        }
        case GateKind::DIV: {
            M u = M::Zero(8, 8);
            u(0, 0) = 1.0;
            u(7, 7) = 1.0;
            const auto blk = div_block();
            const std::array<int, 3> one{0b100, 0b010, 0b001};
            const std::array<int, 3> two{0b011, 0b101, 0b110};
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    u(one[i], one[j]) = blk(i, j);
                    u(two[i], two[j]) = blk(i, j);
                }
            }
            return u;
        }
        case GateKind::ISWAP: {
            M u = M::Zero(4, 4);
            u(0, 0) = 1.0;
            u(3, 3) = 1.0;
            u(1, 2) = cplx(0.0, -1.0);
            u(2, 1) = cplx(0.0, -1.0);
            return u;
        }
        case GateKind::CZ: {
            M u = M::Identity(4, 4);
            u(3, 3) = -1.0;
            return u;
        }
    }
    throw std::invalid_argument("gate_matrix: unknown gate");
}

// Full qutrit-space unitary: the gate matrix on participant qubit states,
// identity whenever any participant occupies level 2.
inline Operator ideal_unitary(const GateSpec& spec, const QutritRegister& reg) {
    spec.validate(reg);
    const Eigen::MatrixXcd g = gate_matrix(spec.kind);
    const std::size_t p = spec.atoms.size();
    Operator u = Operator::Zero(reg.dim(), reg.dim());
    for (Eigen::Index col = 0; col < reg.dim(); ++col) {
        Labels l = reg.decode(col);
        int in_bits = 0;
        bool leaked = false;
        for (std::size_t i = 0; i < p; ++i) {
            const int q = l[spec.atoms[i]];
            leaked = leaked || q > 1;
            in_bits = (in_bits << 1) | (q & 1);
        }
        if (leaked) {
            u(col, col) = 1.0;
            continue;
        }
        for (int out_bits = 0; out_bits < (1 << p); ++out_bits) {
            const cplx v = g(out_bits, in_bits);
            if (v == cplx(0.0)) continue;
            for (std::size_t i = 0; i < p; ++i) l[spec.atoms[i]] = (out_bits >> (p - 1 - i)) & 1;
            u(reg.encode(l), col) += v;
        }
    }
    return u;
}

// Resonant transition-graph Hamiltonian with rate g on every activated link.
inline Operator effective_hamiltonian(const GateSpec& spec, const QutritRegister& reg) {
    spec.validate(reg);
    Operator h = Operator::Zero(reg.dim(), reg.dim());
    const auto& a = spec.atoms;
    const cplx g = spec.g;
    switch (spec.kind) {
        case GateKind::CCZS:
            add_transition(h, reg, a, {1, 1, 1}, {1, 2, 0}, g);
            add_transition(h, reg, a, {1, 1, 1}, {0, 2, 1}, g);
            add_transition(h, reg, a, {0, 2, 0}, {1, 1, 0}, g);
            add_transition(h, reg, a, {0, 2, 0}, {0, 1, 1}, g);
            break;
        case GateKind::DIV:
            add_transition(h, reg, a, {0, 1, 0}, {1, 0, 0}, g);
            add_transition(h, reg, a, {0, 1, 0}, {0, 0, 1}, g);
            add_transition(h, reg, a, {1, 0, 1}, {0, 1, 1}, g);
            add_transition(h, reg, a, {1, 0, 1}, {1, 1, 0}, g);
            break;
        case GateKind::ISWAP:
            add_transition(h, reg, a, {0, 1}, {1, 0}, g);
            break;
        case GateKind::CZ:
            add_transition(h, reg, a, {1, 1}, {0, 2}, g);
            break;
    }
    return h;
}

// ------------------------------------------------------------ full model

struct AtomParams {
    double omega{0.0};  // 0 -> 1 transition frequency
    double chi{0.0};    // anharmonicity omega_12 - omega_01
};

// Frequency at which the exchange coupling of a pair is evaluated: the mean of
// the closest-lying pair of single-excitation transitions (0->1 or 1->2) of the
// two atoms.
inline double pair_resonance(const AtomParams& a, const AtomParams& b) {
    const std::array<double, 2> ta{a.omega, a.omega + a.chi};
    const std::array<double, 2> tb{b.omega, b.omega + b.chi};
    double best = std::abs(ta[0] - tb[0]);
    double freq = 0.5 * (ta[0] + tb[0]);
    for (double x : ta) {
        for (double y : tb) {
            if (std::abs(x - y) < best - 1e-15 * std::abs(x)) {
                best = std::abs(x - y);
                freq = 0.5 * (x + y);
            }
        }
    }
    return freq;
}

// H = sum_k [delta_k n_k + chi_k/2 n_k(n_k - 1)] + sum_{j<k} g_jk (b_j^+ b_k + h.c.)
// with delta_k = omega_k - frame and g_jk from the coupling geometry.
inline Operator full_model_hamiltonian(const std::vector<AtomParams>& atoms, const CouplingLayout& layout,
                                       double frame_frequency) {
    if (atoms.size() != layout.size()) {
        throw std::invalid_argument("full_model_hamiltonian: atom count does not match layout");
    }
    const QutritRegister reg(atoms.size());
    Operator h = Operator::Zero(reg.dim(), reg.dim());
    for (Eigen::Index idx = 0; idx < reg.dim(); ++idx) {
        const Labels l = reg.decode(idx);
        double e = 0.0;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const double n = l[k];
            e += (atoms[k].omega - frame_frequency) * n + 0.5 * atoms[k].chi * n * (n - 1.0);
        }
        h(idx, idx) = e;
    }
    std::vector<Operator> b;
    for (std::size_t k = 0; k < atoms.size(); ++k) b.push_back(lowering_operator(reg, k));
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        for (std::size_t k = j + 1; k < atoms.size(); ++k) {
            const double g = coherent_coupling(layout, j, k, pair_resonance(atoms[j], atoms[k]));
            if (g == 0.0) continue;
            const Operator hop = b[j].adjoint() * b[k];
            h += g * (hop + hop.adjoint());
        }
    }
    return h;
}

// In the transmon model every CCZS link involves a 1<->2 ladder step and
// carries sqrt(2) g, so the gate closes after pi/(2g).
inline double full_model_duration(GateKind k, double g) {
    if (k == GateKind::CCZS) return gate_duration(k, std::numbers::sqrt2 * g);
    if (k == GateKind::CZ) return gate_duration(k, std::numbers::sqrt2 * g);
    return gate_duration(k, g);
}

}  // namespace giant_atoms
