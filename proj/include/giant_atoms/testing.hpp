// testing.hpp — seeded random instances for self-checks (CLI `validate` and
// the test suites).

#pragma once

#include "giant_atoms/algebra.hpp"
#include "giant_atoms/dynamics.hpp"

#include <random>

namespace giant_atoms::testing {

inline Eigen::MatrixXcd random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(nd(rng), nd(rng));
    }
    return m;
}

inline Operator random_hermitian(Eigen::Index dim, std::mt19937_64& rng, double scale = 1.0) {
    const Eigen::MatrixXcd a = random_complex(dim, dim, rng);
    return scale * 0.5 * (a + a.adjoint());
}

// Haar-random pure state.
inline Ket random_ket(Eigen::Index dim, std::mt19937_64& rng) {
    Ket v = random_complex(dim, 1, rng);
    return v / v.norm();
}

// Full-rank random density matrix (Ginibre ensemble).
inline DensityMatrix random_density(Eigen::Index dim, std::mt19937_64& rng) {
    const Eigen::MatrixXcd g = random_complex(dim, dim, rng);
    DensityMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

// Haar-random unitary via QR with phase fix.
inline Operator random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    const Eigen::MatrixXcd z = random_complex(dim, dim, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const cplx d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

// Random Hamiltonian of norm ~1 plus `n_ops` random jump operators of
// strength ~rate.
inline LindbladModel random_model(Eigen::Index dim, std::size_t n_ops, double rate, std::mt19937_64& rng) {
    LindbladModel m;
    m.hamiltonian = random_hermitian(dim, rng, 1.0 / std::sqrt(static_cast<double>(dim)));
    for (std::size_t k = 0; k < n_ops; ++k) {
        m.collapse_ops.push_back(random_complex(dim, dim, rng) * std::sqrt(rate / static_cast<double>(dim)));
    }
    return m;
}

}  // namespace giant_atoms::testing
