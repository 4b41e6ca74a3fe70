// dynamics.hpp — Lindblad master-equation propagation of multi-qutrit density
// matrices.
//
//   d rho/dt = -i[H, rho] + sum_i (L_i rho L_i^+ - 1/2 {L_i^+ L_i, rho})
//
// The production path integrates rho directly with an adaptive Dormand-Prince
// 8(5,3) scheme using sparse operator products. evolve_superop_oracle builds the
// dim^2 x dim^2 generator and exponentiates it; it exists to check the
// integrator and is restricted to small registers.

#pragma once

#include "giant_atoms/algebra.hpp"
#include "giant_atoms/detail/dop853_tableau.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace giant_atoms {

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double error_estimate, double reached_time)
        : std::runtime_error(what), error_estimate_(error_estimate), reached_time_(reached_time) {}

    double error_estimate() const noexcept { return error_estimate_; }
    double reached_time() const noexcept { return reached_time_; }

private:
    double error_estimate_;
    double reached_time_;
};

class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per-atom rates, all angular (s^-1 or normalized). gamma_ind is the waveguide
// decay at the operating frequency and vanishes at decoherence-free points.
struct NoiseParams {
    std::vector<double> gamma_ex;
    std::vector<double> gamma_phi;
    std::vector<double> gamma_ind;

    static NoiseParams uniform(std::size_t n_atoms, double gamma_ex, double gamma_phi, double gamma_ind = 0.0) {
        return {std::vector<double>(n_atoms, gamma_ex), std::vector<double>(n_atoms, gamma_phi),
                std::vector<double>(n_atoms, gamma_ind)};
    }

    void validate(std::size_t n_atoms) const {
        auto check = [&](const std::vector<double>& v, const char* name) {
            if (!v.empty() && v.size() != n_atoms) {
                throw std::invalid_argument(std::string("NoiseParams: ") + name + " has wrong length");
            }
            for (double r : v) {
                if (!(r >= 0.0)) throw std::invalid_argument(std::string("NoiseParams: negative ") + name);
            }
        };
        check(gamma_ex, "gamma_ex");
        check(gamma_phi, "gamma_phi");
        check(gamma_ind, "gamma_ind");
    }
};

struct LindbladModel {
    Operator hamiltonian;
    std::vector<Operator> collapse_ops;
};

struct SolverOptions {
    double reltol{1e-9};
    double abstol{1e-12};
    long max_steps{200000};
};

// Per atom: sqrt(Gamma_ind + Gamma_ex) b_k and sqrt(2 Gamma_phi)(|1><1| + 2|2><2|)_k.
// Zero-rate operators are omitted.
inline std::vector<Operator> build_collapse_ops(const QutritRegister& reg, const NoiseParams& noise) {
    noise.validate(reg.n_atoms());
    auto rate = [](const std::vector<double>& v, std::size_t k) { return v.empty() ? 0.0 : v[k]; };
    std::vector<Operator> ops;
    for (std::size_t k = 0; k < reg.n_atoms(); ++k) {
        const double decay = rate(noise.gamma_ind, k) + rate(noise.gamma_ex, k);
        if (decay > 0.0) ops.push_back(std::sqrt(decay) * lowering_operator(reg, k));
        const double dephase = rate(noise.gamma_phi, k);
        if (dephase > 0.0) ops.push_back(std::sqrt(2.0 * dephase) * dephasing_operator(reg, k));
    }
    return ops;
}

// Precomputed sparse generator for repeated propagation under one model.
class LindbladPropagator {
public:
    using Sparse = Eigen::SparseMatrix<cplx>;

    explicit LindbladPropagator(const LindbladModel& model, SolverOptions opts = {}) : opts_(opts) {
        const auto& h = model.hamiltonian;
        if (h.rows() != h.cols()) throw std::invalid_argument("LindbladPropagator: Hamiltonian not square");
        if (!is_hermitian(h, 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
            throw std::invalid_argument("LindbladPropagator: Hamiltonian is not Hermitian");
        }
        dim_ = h.rows();
        Operator heff = h;
        for (const auto& l : model.collapse_ops) {
            if (l.rows() != dim_ || l.cols() != dim_) {
                throw std::invalid_argument("LindbladPropagator: collapse operator dimension mismatch");
            }
            heff -= cplx(0.0, 0.5) * (l.adjoint() * l);
            jumps_.push_back(l.sparseView());
            jumps_adj_.push_back(Sparse(l.adjoint().sparseView()));
        }
        heff_ = heff.sparseView();
        heff_adj_ = Sparse(heff.adjoint().sparseView());
    }

    Eigen::Index dim() const noexcept { return dim_; }
    const SolverOptions& options() const noexcept { return opts_; }

    // Writes the generator applied to rho into out; scratch is workspace.
    void derivative(const DensityMatrix& rho, DensityMatrix& out, DensityMatrix& scratch) const {
        out.noalias() = heff_ * rho;
        out.noalias() -= rho * heff_adj_;
        out *= cplx(0.0, -1.0);
        for (std::size_t i = 0; i < jumps_.size(); ++i) {
            scratch.noalias() = jumps_[i] * rho;
            out.noalias() += scratch * jumps_adj_[i];
        }
    }

    DensityMatrix derivative(const DensityMatrix& rho) const {
        DensityMatrix out(dim_, dim_), scratch(dim_, dim_);
        derivative(rho, out, scratch);
        return out;
    }

    // rho(t) from rho(0). Any square matrix is accepted (the generator is
    // linear); Hermitian inputs are re-symmetrized after every accepted step.
    DensityMatrix evolve(const DensityMatrix& rho0, double t) const {
        namespace tab = detail::dop853;
        if (rho0.rows() != dim_ || rho0.cols() != dim_) throw std::invalid_argument("evolve: dimension mismatch");
        if (!(t >= 0.0)) throw std::invalid_argument("evolve: negative duration");
        if (t == 0.0) return rho0;

        const bool hermitian = is_hermitian(rho0, 1e-12);
        DensityMatrix y = rho0;
        std::array<DensityMatrix, tab::kStages> k;
        for (auto& m : k) m.resize(dim_, dim_);
        DensityMatrix stage(dim_, dim_), y_new(dim_, dim_), err5(dim_, dim_), err3(dim_, dim_);
        DensityMatrix scratch(dim_, dim_);

        derivative(y, k[0], scratch);
        double h = initial_step(y, k[0], t);
        double time = 0.0;
        double last_error = 0.0;
        constexpr double safety = 0.9, min_factor = 0.2, max_factor = 10.0;
        constexpr double exponent = -1.0 / 8.0;
        bool step_rejected = false;

        for (long steps = 0;; ++steps) {
            if (steps >= opts_.max_steps) {
                throw IntegrationError("evolve: step budget exhausted", last_error, time);
            }
            const double remaining = t - time;
            if (h >= remaining) h = remaining;
            const double h_min = 10.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(time), t);
            if (h < h_min) {
                throw IntegrationError("evolve: step size underflow", last_error, time);
            }

            for (int s = 1; s < tab::kStages; ++s) {
                stage = y;
                for (int j = 0; j < s; ++j) {
                    if (tab::kA[s][j] != 0.0) stage.noalias() += (h * tab::kA[s][j]) * k[j];
                }
                derivative(stage, k[s], scratch);
            }
            y_new = y;
            err5.setZero();
            err3.setZero();
            for (int s = 0; s < tab::kStages; ++s) {
                if (tab::kB[s] != 0.0) y_new.noalias() += (h * tab::kB[s]) * k[s];
                if (tab::kE5[s] != 0.0) err5.noalias() += tab::kE5[s] * k[s];
                if (tab::kE3[s] != 0.0) err3.noalias() += tab::kE3[s] * k[s];
            }

            // Hairer's combined 5th/3rd order error norm.
            double e5 = 0.0, e3 = 0.0;
            for (Eigen::Index c = 0; c < dim_; ++c) {
                for (Eigen::Index r = 0; r < dim_; ++r) {
                    const double sc = opts_.abstol + opts_.reltol * std::max(std::abs(y(r, c)), std::abs(y_new(r, c)));
                    e5 += std::norm(err5(r, c)) / (sc * sc);
                    e3 += std::norm(err3(r, c)) / (sc * sc);
                }
            }
            double error_norm = 0.0;
            if (e5 > 0.0 || e3 > 0.0) {
                error_norm = h * e5 / std::sqrt((e5 + 0.01 * e3) * static_cast<double>(dim_ * dim_));
            }
            last_error = error_norm;

            if (error_norm < 1.0) {
                double factor = error_norm == 0.0 ? max_factor
                                                  : std::min(max_factor, safety * std::pow(error_norm, exponent));
                if (step_rejected) factor = std::min(1.0, factor);
                time = (h == remaining) ? t : time + h;
                y.swap(y_new);
                if (hermitian) {
                    y_new = 0.5 * (y + y.adjoint());
                    y.swap(y_new);
                }
                if (time >= t) return y;
                derivative(y, k[0], scratch);
                h *= factor;
                step_rejected = false;
            } else {
                h *= std::max(min_factor, safety * std::pow(error_norm, exponent));
                step_rejected = true;
            }
        }
    }

private:
    double rms_scaled(const DensityMatrix& a, const DensityMatrix& y) const {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < dim_; ++c) {
            for (Eigen::Index r = 0; r < dim_; ++r) {
                const double sc = opts_.abstol + opts_.reltol * std::abs(y(r, c));
                acc += std::norm(a(r, c)) / (sc * sc);
            }
        }
        return std::sqrt(acc / static_cast<double>(dim_ * dim_));
    }

    // Hairer-Wanner starting step heuristic.
    double initial_step(const DensityMatrix& y0, const DensityMatrix& f0, double t_end) const {
        const double d0 = rms_scaled(y0, y0);
        const double d1 = rms_scaled(f0, y0);
        if (d1 == 0.0) return t_end;
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * t_end : 0.01 * d0 / d1;
        h0 = std::min(h0, t_end);
        DensityMatrix y1 = y0 + h0 * f0;
        const DensityMatrix f1 = derivative(y1);
        const double d2 = rms_scaled(f1 - f0, y0) / h0;
        double h1;
        if (d1 <= 1e-15 && d2 <= 1e-15) {
            h1 = std::max(1e-6 * t_end, h0 * 1e-3);
        } else {
            h1 = std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
        }
        return std::min({100.0 * h0, h1, t_end});
    }

    SolverOptions opts_;
    Eigen::Index dim_{0};
    Sparse heff_, heff_adj_;
    std::vector<Sparse> jumps_, jumps_adj_;
};

inline DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho0, double t, SolverOptions opts = {}) {
    return LindbladPropagator(model, opts).evolve(rho0, t);
}

// ------------------------------------------------------------------ oracle

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace detail

inline constexpr Eigen::Index kOracleMaxDim = 81;

// Generator acting on column-stacked vec(rho): vec(A X B) = (B^T kron A) vec(X).
inline Eigen::MatrixXcd lindblad_superoperator(const LindbladModel& model) {
    const Eigen::Index d = model.hamiltonian.rows();
    if (d > kOracleMaxDim) throw CapabilityError("lindblad_superoperator: dimension exceeds oracle limit");
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const auto& h = model.hamiltonian;
    Eigen::MatrixXcd gen = cplx(0.0, -1.0) * (detail::kron(id, h) - detail::kron(h.transpose(), id));
    for (const auto& l : model.collapse_ops) {
        const Eigen::MatrixXcd ldl = l.adjoint() * l;
        gen += detail::kron(l.conjugate(), l);
        gen -= 0.5 * detail::kron(id, ldl);
        gen -= 0.5 * detail::kron(ldl.transpose(), id);
    }
    return gen;
}

// exp(t * generator) applied to vec(rho0) (Pade scaling-and-squaring).
inline DensityMatrix evolve_superop_oracle(const LindbladModel& model, const DensityMatrix& rho0, double t) {
    const Eigen::Index d = model.hamiltonian.rows();
    if (d > kOracleMaxDim) throw CapabilityError("evolve_superop_oracle: dimension exceeds oracle limit");
    if (rho0.rows() != d || rho0.cols() != d) throw std::invalid_argument("evolve_superop_oracle: dimension mismatch");
    const Eigen::MatrixXcd prop = (t * lindblad_superoperator(model)).exp();
    const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
    const Eigen::VectorXcd w = prop * v;
    return Eigen::Map<const Eigen::MatrixXcd>(w.data(), d, d);
}

}  // namespace giant_atoms
