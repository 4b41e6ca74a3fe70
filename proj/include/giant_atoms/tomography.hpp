// tomography.hpp — Choi-matrix reconstruction on the computational subspace,
// process / average / state fidelities, and virtual-Z frame calibration.
//
// Choi convention: Phi = (1/d) sum_ij |i><j| (input) kron E(|i><j|) (output),
// so a trace-preserving channel has tr Phi = 1. Outputs are projected onto the
// qubit subspace; leakage shows up as tr Phi < 1.

#pragma once

#include "giant_atoms/algebra.hpp"
#include "giant_atoms/dynamics.hpp"
#include "giant_atoms/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace giant_atoms {

struct ChoiMatrix {
    Eigen::MatrixXcd matrix;
    Eigen::Index d{0};  // computational dimension 2^N

    double trace() const { return matrix.trace().real(); }
    double leakage() const { return 1.0 - trace(); }
};

inline constexpr double kChoiNegativityTolerance = 1e-7;

// Choi matrix of rho -> channel(rho) on d-dimensional inputs.
inline ChoiMatrix choi_from_map(Eigen::Index d, const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>& channel) {
    ChoiMatrix c{Eigen::MatrixXcd::Zero(d * d, d * d), d};
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            Eigen::MatrixXcd unit = Eigen::MatrixXcd::Zero(d, d);
            unit(i, j) = 1.0;
            c.matrix.block(i * d, j * d, d, d) = channel(unit) / static_cast<double>(d);
        }
    }
    return c;
}

// Pure Choi state |Omega_U><Omega_U|, |Omega_U> = d^-1/2 sum_i |i> kron U|i>.
inline ChoiMatrix choi_from_unitary(const Eigen::MatrixXcd& u) {
    const Eigen::Index d = u.rows();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) v.segment(i * d, d) = u.col(i);
    v /= std::sqrt(static_cast<double>(d));
    return {v * v.adjoint(), d};
}

// Restriction of a full qutrit-space operator to the computational subspace.
inline Eigen::MatrixXcd computational_block(const Operator& op, const QutritRegister& reg) {
    const auto idx = reg.computational_indices();
    const auto d = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd out(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) out(r, c) = op(idx[r], idx[c]);
    }
    return out;
}

// Propagates every computational matrix unit for `duration` and assembles the
// projected Choi matrix. Matrix units are independent jobs.
inline ChoiMatrix reconstruct_choi(const LindbladModel& model, double duration, const QutritRegister& reg,
                                   SolverOptions opts = {}, std::size_t jobs = 1) {
    if (model.hamiltonian.rows() != reg.dim()) throw std::invalid_argument("reconstruct_choi: model/register mismatch");
    const auto idx = reg.computational_indices();
    const auto d = static_cast<Eigen::Index>(idx.size());
    const LindbladPropagator prop(model, opts);

    auto blocks = parallel_map(static_cast<std::size_t>(d * d), jobs, [&](std::size_t n) {
        const auto i = static_cast<Eigen::Index>(n) / d;
        const auto j = static_cast<Eigen::Index>(n) % d;
        DensityMatrix unit = DensityMatrix::Zero(reg.dim(), reg.dim());
        unit(idx[i], idx[j]) = 1.0;
        const DensityMatrix out = prop.evolve(unit, duration);
        Eigen::MatrixXcd block(d, d);
        for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index b = 0; b < d; ++b) block(a, b) = out(idx[a], idx[b]);
        }
        return block;
    });

    ChoiMatrix c{Eigen::MatrixXcd::Zero(d * d, d * d), d};
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            c.matrix.block(i * d, j * d, d, d) = blocks[static_cast<std::size_t>(i * d + j)] / static_cast<double>(d);
        }
    }
    return c;
}

namespace detail {

// Positive square root of a Hermitian matrix; eigenvalues down to -tol are
// clamped, anything more negative is rejected. Eigenvalues within the
// eigensolver's rounding floor are treated as zero: their square roots would
// otherwise inject ~1e-8 noise into fidelities of rank-deficient matrices.
inline Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a, double tol, const char* who) {
    const Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error(std::string(who) + ": eigendecomposition failed");
    Eigen::VectorXd ev = es.eigenvalues();
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -tol) {
            throw std::domain_error(std::string(who) + ": matrix has eigenvalue " + std::to_string(ev(i)) +
                                    " below the negativity tolerance");
        }
        ev(i) = ev(i) < floor ? 0.0 : std::sqrt(ev(i));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

// Uhlmann fidelity [tr sqrt(sqrt(Phi) Phi0 sqrt(Phi))]^2, evaluated as the
// squared trace norm of sqrt(Phi0) sqrt(Phi).
inline double process_fidelity(const ChoiMatrix& phi, const ChoiMatrix& phi0) {
    if (phi.matrix.rows() != phi0.matrix.rows() || phi.matrix.cols() != phi0.matrix.cols() || phi.d != phi0.d) {
        throw std::invalid_argument("process_fidelity: dimension mismatch");
    }
    const Eigen::MatrixXcd s = detail::psd_sqrt(phi.matrix, kChoiNegativityTolerance, "process_fidelity");
    const Eigen::MatrixXcd s0 = detail::psd_sqrt(phi0.matrix, kChoiNegativityTolerance, "process_fidelity");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s0 * s);
    const double tr = svd.singularValues().sum();
    return tr * tr;
}

// F_ave = (d F + 1) / (d + 1).
inline double average_gate_fidelity(double process_fid, Eigen::Index d) {
    const double dd = static_cast<double>(d);
    return (dd * process_fid + 1.0) / (dd + 1.0);
}

// <psi|rho|psi>
inline double state_fidelity(const DensityMatrix& rho, const Ket& target) {
    if (rho.rows() != target.size()) throw std::invalid_argument("state_fidelity: dimension mismatch");
    return (target.adjoint() * rho * target)(0, 0).real();
}

// ------------------------------------------------------- virtual-Z frames

struct VirtualZResult {
    std::vector<double> pre;   // Z angle per qubit applied before the channel
    std::vector<double> post;  // ... and after
    double fidelity{0.0};
    bool converged{false};
};

// Choi matrix of  rho -> Zpost E(Zpre rho Zpre^+) Zpost^+  with Z(theta) = diag(1, e^{i theta}).
inline ChoiMatrix apply_virtual_z(const ChoiMatrix& phi, const std::vector<double>& pre, const std::vector<double>& post) {
    const Eigen::Index d = phi.d;
    const std::size_t n = pre.size();
    if (post.size() != n || (Eigen::Index{1} << n) != d) throw std::invalid_argument("apply_virtual_z: phase count mismatch");
    Eigen::VectorXcd a(d), b(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        double tp = 0.0, tq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if ((i >> (n - 1 - k)) & 1) {
                tp += pre[k];
                tq += post[k];
            }
        }
        b(i) = std::polar(1.0, tp);
        a(i) = std::polar(1.0, tq);
    }
    ChoiMatrix out = phi;
    for (Eigen::Index r = 0; r < d * d; ++r) {
        const cplx fr = b(r / d) * a(r % d);
        for (Eigen::Index c = 0; c < d * d; ++c) {
            out.matrix(r, c) *= fr * std::conj(b(c / d) * a(c % d));
        }
    }
    return out;
}

// Maximizes process fidelity against `ideal` over 2N frame angles by
// coordinate ascent: 16-point grid per angle, then golden-section refinement.
inline VirtualZResult calibrate_virtual_z(const ChoiMatrix& phi, const Eigen::MatrixXcd& ideal, std::size_t n_qubits,
                                          int max_rounds = 30) {
    if (ideal.rows() != phi.d) throw std::invalid_argument("calibrate_virtual_z: dimension mismatch");
    constexpr double pi = std::numbers::pi;
    const ChoiMatrix phi0 = choi_from_unitary(ideal);
    const Eigen::Index d = phi.d;
    Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) omega.segment(i * d, d) = ideal.col(i);
    omega /= std::sqrt(static_cast<double>(d));

    // Pure target: F = <Omega|Phi'|Omega>.
    std::vector<double> theta(2 * n_qubits, 0.0);
    auto objective = [&](const std::vector<double>& t) {
        const std::vector<double> pre(t.begin(), t.begin() + static_cast<long>(n_qubits));
        const std::vector<double> post(t.begin() + static_cast<long>(n_qubits), t.end());
        const ChoiMatrix c = apply_virtual_z(phi, pre, post);
        return (omega.adjoint() * c.matrix * omega)(0, 0).real();
    };
    auto wrap = [&](double x) { return std::remainder(x, 2.0 * pi); };

    double best = objective(theta);
    bool converged = false;
    for (int round = 0; round < max_rounds && !converged; ++round) {
        const double start = best;
        for (std::size_t p = 0; p < theta.size(); ++p) {
            auto f = [&](double x) {
                auto t = theta;
                t[p] = x;
                return objective(t);
            };
            double x_best = theta[p], f_best = best;
            for (int s = 0; s < 16; ++s) {
                const double x = -pi + 2.0 * pi * s / 16.0;
                const double fx = f(x);
                if (fx > f_best) {
                    f_best = fx;
                    x_best = x;
                }
            }
            const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
            double lo = x_best - 2.0 * pi / 16.0, hi = x_best + 2.0 * pi / 16.0;
            double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
            double f1 = f(x1), f2 = f(x2);
            while (hi - lo > 1e-11) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + invphi * (hi - lo);
                    f2 = f(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - invphi * (hi - lo);
                    f1 = f(x1);
                }
            }
            const double xm = 0.5 * (lo + hi);
            const double fm = f(xm);
            if (fm > f_best) {
                f_best = fm;
                x_best = xm;
            }
            if (f_best > best) {
                best = f_best;
                theta[p] = wrap(x_best);
            }
        }
        converged = (best - start) < 1e-14;
    }

    VirtualZResult r;
    r.pre.assign(theta.begin(), theta.begin() + static_cast<long>(n_qubits));
    r.post.assign(theta.begin() + static_cast<long>(n_qubits), theta.end());
    r.fidelity = process_fidelity(apply_virtual_z(phi, r.pre, r.post), phi0);
    r.converged = converged;
    return r;
}

}  // namespace giant_atoms
