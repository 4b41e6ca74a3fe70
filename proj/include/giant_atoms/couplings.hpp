// couplings.hpp — waveguide-mediated decay rates and exchange couplings of
// giant atoms with multiple coupling points, decoherence-free frequency search,
// and the braided reference layouts used by the gate protocols.
//
// All rates and frequencies are angular (rad/s or normalized); positions are
// in the same length unit as WaveguideParams::dx.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace giant_atoms {

class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct WaveguideParams {
    double dx{1.0};  // unit cell between neighbouring coupling points
    double v{1.0};   // photon group velocity

    WaveguideParams() = default;
    WaveguideParams(double dx_, double v_) : dx(dx_), v(v_) {
        if (!(dx > 0.0) || !(v > 0.0)) {
            throw std::invalid_argument("WaveguideParams: dx and v must be positive");
        }
    }

    // Builds the waveguide whose fundamental frequency 2*pi*v/dx equals omega0.
    static WaveguideParams from_omega0(double omega0, double dx = 1.0) {
        return WaveguideParams(dx, omega0 * dx / (2.0 * std::numbers::pi));
    }

    double omega0() const noexcept { return 2.0 * std::numbers::pi * v / dx; }
};

struct CouplingPoint {
    double position{0.0};
    double strength{0.0};  // gamma_kn
};

struct GiantAtom {
    std::vector<CouplingPoint> points;
};

struct CouplingLayout {
    WaveguideParams waveguide;
    std::vector<GiantAtom> atoms;

    std::size_t size() const noexcept { return atoms.size(); }

    // Every atom needs at least one tap; positions strictly increasing, strengths >= 0.
    void validate() const {
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const auto& pts = atoms[k].points;
            if (pts.empty()) {
                throw std::invalid_argument("CouplingLayout: atom " + std::to_string(k + 1) +
                                            " has no coupling points");
            }
            for (std::size_t n = 0; n < pts.size(); ++n) {
                if (!(pts[n].strength >= 0.0)) {
                    throw std::invalid_argument("CouplingLayout: negative coupling strength on atom " +
                                                std::to_string(k + 1));
                }
                if (n > 0 && !(pts[n].position > pts[n - 1].position)) {
                    throw std::invalid_argument("CouplingLayout: positions of atom " + std::to_string(k + 1) +
                                                " are not strictly increasing");
                }
            }
        }
    }

    // Builds a layout with uniform strength from per-atom positions in units of dx.
    static CouplingLayout uniform(const WaveguideParams& wg, const std::vector<std::vector<double>>& positions,
                                  double gamma) {
        CouplingLayout layout;
        layout.waveguide = wg;
        for (const auto& atom_pos : positions) {
            GiantAtom atom;
            for (double x : atom_pos) atom.points.push_back({x * wg.dx, gamma});
            layout.atoms.push_back(std::move(atom));
        }
        layout.validate();
        return layout;
    }
};

struct CouplingProfile {
    double omega{0.0};
    std::vector<double> gamma_ind;               // per atom
    std::vector<std::vector<double>> g;          // symmetric, zero diagonal
    std::vector<std::vector<double>> gamma_coll; // symmetric, zero diagonal
};

struct DfPoint {
    int n{0};
    int m{0};
    double omega{0.0};
};

namespace detail {

inline void check_atom(const CouplingLayout& layout, std::size_t k, const char* who) {
    if (k >= layout.atoms.size()) {
        throw std::invalid_argument(std::string(who) + ": atom index " + std::to_string(k) + " out of range");
    }
}

inline void check_pair(const CouplingLayout& layout, std::size_t j, std::size_t k, const char* who) {
    check_atom(layout, j, who);
    check_atom(layout, k, who);
    if (j == k) throw std::invalid_argument(std::string(who) + ": pair needs two distinct atoms");
}

// Sum over tap pairs of sqrt(gamma_jn gamma_km) * f(phase), phase from absolute distance.
// Summed in (min, max) atom order so that pair quantities are exactly symmetric.
template <class F>
double tap_sum(const CouplingLayout& layout, std::size_t j, std::size_t k, double omega, F&& f) {
    if (j > k) std::swap(j, k);
    double acc = 0.0;
    const double scale = omega / layout.waveguide.v;
    for (const auto& p : layout.atoms[j].points) {
        for (const auto& q : layout.atoms[k].points) {
            acc += std::sqrt(p.strength * q.strength) * f(scale * std::abs(p.position - q.position),
                                                          std::abs(p.position - q.position));
        }
    }
    return acc;
}

}  // namespace detail

inline double individual_decay(const CouplingLayout& layout, std::size_t atom, double omega) {
    detail::check_atom(layout, atom, "individual_decay");
    if (omega < 0.0) throw std::invalid_argument("individual_decay: negative frequency");
    return detail::tap_sum(layout, atom, atom, omega, [](double phi, double) { return std::cos(phi); });
}

// d Gamma_ind / d omega, used to polish decoherence-free frequencies.
inline double individual_decay_slope(const CouplingLayout& layout, std::size_t atom, double omega) {
    detail::check_atom(layout, atom, "individual_decay_slope");
    const double inv_v = 1.0 / layout.waveguide.v;
    return detail::tap_sum(layout, atom, atom, omega,
                           [inv_v](double phi, double dist) { return -std::sin(phi) * dist * inv_v; });
}

inline double coherent_coupling(const CouplingLayout& layout, std::size_t j, std::size_t k, double omega) {
    detail::check_pair(layout, j, k, "coherent_coupling");
    return detail::tap_sum(layout, j, k, omega, [](double phi, double) { return 0.5 * std::sin(phi); });
}

inline double collective_decay(const CouplingLayout& layout, std::size_t j, std::size_t k, double omega) {
    detail::check_pair(layout, j, k, "collective_decay");
    return detail::tap_sum(layout, j, k, omega, [](double phi, double) { return std::cos(phi); });
}

inline CouplingProfile coupling_profile(const CouplingLayout& layout, double omega) {
    const std::size_t n = layout.size();
    CouplingProfile p;
    p.omega = omega;
    p.gamma_ind.resize(n);
    p.g.assign(n, std::vector<double>(n, 0.0));
    p.gamma_coll.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        p.gamma_ind[j] = individual_decay(layout, j, omega);
        for (std::size_t k = j + 1; k < n; ++k) {
            p.g[j][k] = p.g[k][j] = coherent_coupling(layout, j, k, omega);
            p.gamma_coll[j][k] = p.gamma_coll[k][j] = collective_decay(layout, j, k, omega);
        }
    }
    return p;
}

inline bool is_df_index(int m) noexcept { return m >= 1 && m <= 7 && m != 4; }

// Closed-form decoherence-free frequency (n + m/8) * omega0.
inline DfPoint df_point(const WaveguideParams& wg, int n, int m) {
    if (n < 0 || !is_df_index(m)) {
        throw std::invalid_argument("df_point: need n >= 0 and m in {1,2,3,5,6,7}");
    }
    return {n, m, (static_cast<double>(n) + static_cast<double>(m) / 8.0) * wg.omega0()};
}

// All frequencies in [omega_lo, omega_hi] where Gamma_ind of `atom` drops below tol.
// Dense scan (>= 512 samples per omega0) locates local minima; each minimum is
// polished by bisection on the analytic slope.
inline std::vector<double> find_df_frequencies(const CouplingLayout& layout, std::size_t atom, double omega_lo,
                                               double omega_hi, double tol) {
    detail::check_atom(layout, atom, "find_df_frequencies");
    if (!(omega_hi > omega_lo) || omega_lo < 0.0) {
        throw std::invalid_argument("find_df_frequencies: empty or negative frequency window");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("find_df_frequencies: tol must be positive");

    const double omega0 = layout.waveguide.omega0();
    const auto samples = static_cast<std::size_t>(
        std::max(64.0, std::ceil(512.0 * (omega_hi - omega_lo) / omega0)) + 1.0);
    const double step = (omega_hi - omega_lo) / static_cast<double>(samples - 1);

    auto gamma = [&](double w) { return individual_decay(layout, atom, w); };
    auto slope = [&](double w) { return individual_decay_slope(layout, atom, w); };

    std::vector<double> grid(samples), values(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        grid[i] = (i + 1 == samples) ? omega_hi : omega_lo + step * static_cast<double>(i);
        values[i] = gamma(grid[i]);
    }

    std::vector<double> found;
    auto accept = [&](double w) {
        if (gamma(w) >= tol) return;
        const double merge = 1e-6 * omega0;
        for (double f : found) {
            if (std::abs(f - w) < merge) return;
        }
        found.push_back(w);
    };

    for (std::size_t i = 0; i < samples; ++i) {
        const bool left_ok = (i == 0) || values[i] <= values[i - 1];
        const bool right_ok = (i + 1 == samples) || values[i] <= values[i + 1];
        if (!(left_ok && right_ok)) continue;

        double a = grid[i == 0 ? 0 : i - 1];
        double b = grid[i + 1 == samples ? i : i + 1];
        double sa = slope(a), sb = slope(b);
        if (sa < 0.0 && sb > 0.0) {
            // slope changes sign from - to +: bisect to the minimum
            for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                if (slope(mid) < 0.0) a = mid; else b = mid;
            }
            const double w = (gamma(a) <= gamma(b)) ? a : b;
            accept(w);
        } else {
            // boundary minimum or flat sample: keep the best sample if it qualifies
            accept(grid[i]);
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

// Outcome of one named geometry property check.
struct LayoutCheck {
    std::string name;
    double value{0.0};      // worst violation, in units of gamma
    double tolerance{0.0};  // in units of gamma
    bool passed{false};
};

struct LayoutReport {
    std::vector<LayoutCheck> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const LayoutCheck& c) { return c.passed; });
    }
    const LayoutCheck* first_failure() const {
        for (const auto& c : checks) {
            if (!c.passed) return &c;
        }
        return nullptr;
    }
};

inline constexpr double kDfDecayTolerance = 1e-10;    // relative to gamma
inline constexpr double kCouplingTolerance = 1e-9;    // relative to gamma

// Hub atoms (those that host the second excited level during CCZS) are the
// even-numbered atoms of a chain: 2 and 4 in 1-based labels.
inline bool is_hub(std::size_t atom) noexcept { return atom % 2 == 1; }

// Verifies the braided-chain properties needed by the gate protocols at
// decoherence-free indices n in `ns`:
//  - end atoms decay-free at m in {2,6}; hubs decay-free at every m;
//  - adjacent exchange coupling equals +gamma at m = 2;
//  - non-adjacent couplings vanish at m = 2 and m = 3;
//  - collective decay of every pair vanishes at m = 2;
//  - no two atoms share a coupling point.
inline LayoutReport verify_chain_layout(const CouplingLayout& layout, double gamma, const std::vector<int>& ns = {1, 2}) {
    LayoutReport report;
    const std::size_t N = layout.size();
    const auto& wg = layout.waveguide;

    auto add = [&](std::string name, double worst, double tol) {
        report.checks.push_back({std::move(name), worst, tol, worst < tol});
    };

    double overlap = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t k = j + 1; k < N; ++k) {
            for (const auto& p : layout.atoms[j].points) {
                for (const auto& q : layout.atoms[k].points) {
                    if (std::abs(p.position - q.position) < 1e-12 * wg.dx) overlap = 1.0;
                }
            }
        }
    }
    add("distinct coupling points", overlap, 0.5);

    double end_df = 0.0, hub_df = 0.0, adjacent = 0.0, parasitic = 0.0, coll = 0.0;
    for (int n : ns) {
        for (std::size_t k = 0; k < N; ++k) {
            if (is_hub(k)) {
                for (int m : {1, 2, 3, 5, 6, 7}) {
                    hub_df = std::max(hub_df, std::abs(individual_decay(layout, k, df_point(wg, n, m).omega)) / gamma);
                }
            } else {
                for (int m : {2, 6}) {
                    end_df = std::max(end_df, std::abs(individual_decay(layout, k, df_point(wg, n, m).omega)) / gamma);
                }
            }
        }
        const double w2 = df_point(wg, n, 2).omega;
        const double w3 = df_point(wg, n, 3).omega;
        for (std::size_t j = 0; j < N; ++j) {
            for (std::size_t k = j + 1; k < N; ++k) {
                if (k == j + 1) {
                    adjacent = std::max(adjacent, std::abs(coherent_coupling(layout, j, k, w2) - gamma) / gamma);
                } else {
                    parasitic = std::max(parasitic, std::abs(coherent_coupling(layout, j, k, w2)) / gamma);
                    parasitic = std::max(parasitic, std::abs(coherent_coupling(layout, j, k, w3)) / gamma);
                }
                coll = std::max(coll, std::abs(collective_decay(layout, j, k, w2)) / gamma);
            }
        }
    }
    add("DF point: end-atom decay at m=2,6", end_df, kDfDecayTolerance);
    if (N > 1) {
        add("DF point: hub decay at m=1,2,3,5,6,7", hub_df, kDfDecayTolerance);
        add("adjacent coupling g = gamma at m=2", adjacent, kCouplingTolerance);
        add("collective decay vanishes at m=2", coll, kCouplingTolerance);
    }
    if (N > 2) add("non-adjacent coupling vanishes at m=2,3", parasitic, kCouplingTolerance);
    return report;
}

// Braided chains: ends take 2 taps, hubs 4 taps, spaced 2*dx. In the 5-atom
// chain the middle atom is an end for both CCZS triples and needs 4 taps so
// that it couples to both hubs with strength gamma.
inline CouplingLayout reference_layout(int n_atoms, double gamma = 1.0,
                                       const WaveguideParams& wg = WaveguideParams{}) {
    std::vector<std::vector<double>> pos;
    if (n_atoms == 3) {
        pos = {{0, 2}, {1, 3, 5, 7}, {4, 6}};
    } else if (n_atoms == 5) {
        pos = {{0, 2}, {1, 3, 5, 7}, {4, 6, 8, 10}, {9, 11, 13, 15}, {12, 14}};
    } else {
        throw std::invalid_argument("reference_layout: n_atoms must be 3 or 5");
    }
    auto layout = CouplingLayout::uniform(wg, pos, gamma);
    const auto report = verify_chain_layout(layout, gamma);
    if (const auto* bad = report.first_failure()) {
        throw ConsistencyError("reference_layout: stored geometry fails check '" + bad->name + "'");
    }
    return layout;
}

}  // namespace giant_atoms
