// algebra.hpp — multi-qutrit basis conventions and operators.
//
// Basis state |q1 q2 ... qN> has index sum_k q_k 3^(N-k): atom 1 is the most
// significant digit, matching ket labels such as |120>. Library atom indices
// are 0-based; labels and CLI output are 1-based.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace giant_atoms {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;
using Labels = std::vector<int>;

inline constexpr int kLevels = 3;

class QutritRegister {
public:
    explicit QutritRegister(std::size_t n_atoms) : n_(n_atoms) {
        if (n_atoms == 0 || n_atoms > 8) {
            throw std::invalid_argument("QutritRegister: supports 1..8 atoms");
        }
        dim_ = 1;
        for (std::size_t k = 0; k < n_; ++k) dim_ *= kLevels;
    }

    std::size_t n_atoms() const noexcept { return n_; }
    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(dim_); }
    Eigen::Index computational_dim() const noexcept { return Eigen::Index{1} << n_; }

    Eigen::Index encode(const Labels& labels) const {
        if (labels.size() != n_) throw std::invalid_argument("encode: label count mismatch");
        Eigen::Index idx = 0;
        for (int q : labels) {
            if (q < 0 || q >= kLevels) throw std::invalid_argument("encode: level out of range");
            idx = idx * kLevels + q;
        }
        return idx;
    }

    Labels decode(Eigen::Index idx) const {
        if (idx < 0 || idx >= dim()) throw std::invalid_argument("decode: index out of range");
        Labels labels(n_);
        for (std::size_t k = n_; k-- > 0;) {
            labels[k] = static_cast<int>(idx % kLevels);
            idx /= kLevels;
        }
        return labels;
    }

    // "120" -> index
    Eigen::Index index_of(std::string_view label) const {
        Labels l;
        for (char c : label) l.push_back(c - '0');
        return encode(l);
    }

    std::string label_of(Eigen::Index idx) const {
        std::string s;
        for (int q : decode(idx)) s.push_back(static_cast<char>('0' + q));
        return s;
    }

    void check_atom(std::size_t atom) const {
        if (atom >= n_) throw std::invalid_argument("atom index " + std::to_string(atom) + " out of range");
    }

    // Qutrit indices of the 2^N qubit basis states, in binary order
    // (atom 1 most significant).
    std::vector<Eigen::Index> computational_indices() const {
        std::vector<Eigen::Index> out;
        const Eigen::Index d = computational_dim();
        out.reserve(static_cast<std::size_t>(d));
        for (Eigen::Index b = 0; b < d; ++b) {
            Labels l(n_);
            for (std::size_t k = 0; k < n_; ++k) l[k] = static_cast<int>((b >> (n_ - 1 - k)) & 1);
            out.push_back(encode(l));
        }
        return out;
    }

private:
    std::size_t n_;
    std::size_t dim_;
};

// ---------------------------------------------------------------- single-atom

inline Eigen::Matrix3cd lowering_single() {
    Eigen::Matrix3cd b = Eigen::Matrix3cd::Zero();
    b(0, 1) = 1.0;
    b(1, 2) = std::sqrt(2.0);
    return b;
}

inline Eigen::Matrix3cd level_weighted_number() {
    Eigen::Matrix3cd n = Eigen::Matrix3cd::Zero();
    n(1, 1) = 1.0;
    n(2, 2) = 2.0;
    return n;
}

// Lift a 2x2 qubit gate to a qutrit acting trivially on level 2.
inline Eigen::Matrix3cd lift_qubit_gate(const Eigen::Matrix2cd& u) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
    m.topLeftCorner<2, 2>() = u;
    return m;
}

// --------------------------------------------------------------- embeddings

inline Operator embed(const QutritRegister& reg, const Eigen::Matrix3cd& op, std::size_t atom) {
    reg.check_atom(atom);
    const Eigen::Index dim = reg.dim();
    Eigen::Index stride = 1;
    for (std::size_t k = reg.n_atoms() - 1; k > atom; --k) stride *= kLevels;
    Operator out = Operator::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto q = static_cast<int>((col / stride) % kLevels);
        const Eigen::Index base = col - q * stride;
        for (int p = 0; p < kLevels; ++p) {
            const cplx v = op(p, q);
            if (v != cplx(0.0)) out(base + p * stride, col) += v;
        }
    }
    return out;
}

// b_k = sigma_10^- + sqrt(2) sigma_21^- on atom k.
inline Operator lowering_operator(const QutritRegister& reg, std::size_t atom) {
    return embed(reg, lowering_single(), atom);
}

// |1><1| + 2|2><2| on atom k (dimensionless part of the dephasing dissipator).
inline Operator dephasing_operator(const QutritRegister& reg, std::size_t atom) {
    return embed(reg, level_weighted_number(), atom);
}

inline Operator number_operator(const QutritRegister& reg, std::size_t atom) {
    return dephasing_operator(reg, atom);
}

inline Operator projector_computational(const QutritRegister& reg) {
    Operator p = Operator::Zero(reg.dim(), reg.dim());
    for (auto i : reg.computational_indices()) p(i, i) = 1.0;
    return p;
}

inline Ket basis_ket(const QutritRegister& reg, const Labels& labels) {
    Ket v = Ket::Zero(reg.dim());
    v(reg.encode(labels)) = 1.0;
    return v;
}

inline Ket basis_ket(const QutritRegister& reg, std::string_view label) {
    Ket v = Ket::Zero(reg.dim());
    v(reg.index_of(label)) = 1.0;
    return v;
}

// (|0...0> + |1...1>)/sqrt(2)
inline Ket ghz_ket(const QutritRegister& reg) {
    Ket v = Ket::Zero(reg.dim());
    v(reg.encode(Labels(reg.n_atoms(), 0))) = 1.0 / std::sqrt(2.0);
    v(reg.encode(Labels(reg.n_atoms(), 1))) = 1.0 / std::sqrt(2.0);
    return v;
}

inline DensityMatrix pure_density(const Ket& psi) { return psi * psi.adjoint(); }

// Adds value * |to><from| + conj(value) * |from><to| on `atoms`, for every
// configuration of the remaining (spectator) atoms.
inline void add_transition(Operator& h, const QutritRegister& reg, const std::vector<std::size_t>& atoms,
                           const Labels& from, const Labels& to, cplx value) {
    if (from.size() != atoms.size() || to.size() != atoms.size()) {
        throw std::invalid_argument("add_transition: label size mismatch");
    }
    for (auto a : atoms) reg.check_atom(a);
    for (Eigen::Index idx = 0; idx < reg.dim(); ++idx) {
        Labels l = reg.decode(idx);
        bool match = true;
        for (std::size_t i = 0; i < atoms.size(); ++i) match = match && l[atoms[i]] == from[i];
        if (!match) continue;
        for (std::size_t i = 0; i < atoms.size(); ++i) l[atoms[i]] = to[i];
        const Eigen::Index j = reg.encode(l);
        h(j, idx) += value;
        h(idx, j) += std::conj(value);
    }
}

// ---------------------------------------------------------------- checks

inline bool is_hermitian(const Operator& a, double tol = 1e-12) {
    return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() < tol;
}

inline bool is_unitary(const Operator& u, double tol = 1e-10) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Operator::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < tol;
}

// Trace 1, Hermitian and positive semidefinite within the given slack.
inline bool is_density_matrix(const DensityMatrix& rho, double trace_tol = 1e-9, double eig_tol = 1e-8) {
    if (rho.rows() != rho.cols()) return false;
    if (std::abs(rho.trace() - cplx(1.0)) > trace_tol) return false;
    if (!is_hermitian(rho, 1e-10)) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > -eig_tol;
}

// Reduced density matrix over `keep` (0-based, any order; output follows
// ascending atom order).
inline DensityMatrix partial_trace(const DensityMatrix& rho, const QutritRegister& reg, std::vector<std::size_t> keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    if (rho.rows() != reg.dim() || rho.cols() != reg.dim()) {
        throw std::invalid_argument("partial_trace: dimension mismatch");
    }
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (auto a : keep) reg.check_atom(a);

    const QutritRegister kept(keep.size());
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < reg.n_atoms(); ++k) {
        if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);
    }

    auto kept_index = [&](const Labels& l) {
        Eigen::Index i = 0;
        for (auto a : keep) i = i * kLevels + l[a];
        return i;
    };
    auto traced_index = [&](const Labels& l) {
        Eigen::Index i = 0;
        for (auto a : traced) i = i * kLevels + l[a];
        return i;
    };

    DensityMatrix out = DensityMatrix::Zero(kept.dim(), kept.dim());
    std::vector<Labels> labels(static_cast<std::size_t>(reg.dim()));
    for (Eigen::Index i = 0; i < reg.dim(); ++i) labels[static_cast<std::size_t>(i)] = reg.decode(i);
    for (Eigen::Index i = 0; i < reg.dim(); ++i) {
        const auto& li = labels[static_cast<std::size_t>(i)];
        const auto ti = traced_index(li);
        const auto ki = kept_index(li);
        for (Eigen::Index j = 0; j < reg.dim(); ++j) {
            const auto& lj = labels[static_cast<std::size_t>(j)];
            if (traced_index(lj) != ti) continue;
            out(ki, kept_index(lj)) += rho(i, j);
        }
    }
    return out;
}

}  // namespace giant_atoms
