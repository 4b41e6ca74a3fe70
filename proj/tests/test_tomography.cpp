#include "giant_atoms/gates.hpp"
#include "giant_atoms/testing.hpp"
#include "giant_atoms/tomography.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace giant_atoms;

namespace {

double trace_overlap(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
    const double d = static_cast<double>(u.rows());
    return std::norm((u.adjoint() * v).trace() / d);
}

ChoiMatrix noisy_gate_choi(GateKind kind, double ex, double phi) {
    const QutritRegister reg(gate_arity(kind));
    std::vector<std::size_t> atoms(reg.n_atoms());
    for (std::size_t k = 0; k < atoms.size(); ++k) atoms[k] = k;
    const auto spec = GateSpec::make(kind, atoms, 1.0);
    const LindbladModel m{effective_hamiltonian(spec, reg),
                          build_collapse_ops(reg, NoiseParams::uniform(reg.n_atoms(), ex, phi))};
    return reconstruct_choi(m, spec.duration, reg);
}

}  // namespace

TEST(Tomography, IdentityChoi) {
    const auto c = choi_from_unitary(Eigen::MatrixXcd::Identity(4, 4));
    EXPECT_NEAR(c.trace(), 1.0, 1e-15);
    EXPECT_NEAR(process_fidelity(c, c), 1.0, 1e-12);
    const auto m = choi_from_map(4, [](const Eigen::MatrixXcd& x) { return x; });
    EXPECT_LT((m.matrix - c.matrix).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Tomography, DepolarizingExample) {
    const double p = 0.1;
    const auto c = choi_from_map(4, [&](const Eigen::MatrixXcd& x) -> Eigen::MatrixXcd {
        return (1 - p) * x + p * x.trace() * Eigen::MatrixXcd::Identity(4, 4) / 4.0;
    });
    EXPECT_NEAR(process_fidelity(c, choi_from_unitary(Eigen::MatrixXcd::Identity(4, 4))), 0.90625, 1e-10);
}

TEST(Tomography, UnitaryPairs) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        const auto u = giant_atoms::testing::random_unitary(8, rng), v = giant_atoms::testing::random_unitary(8, rng);
        const auto cu = choi_from_unitary(u), cv = choi_from_unitary(v);
        EXPECT_NEAR(process_fidelity(cu, cv), trace_overlap(u, v), 1e-9);
        EXPECT_NEAR(process_fidelity(cu, cv), process_fidelity(cv, cu), 1e-9);
        EXPECT_NEAR(process_fidelity(cu, cu), 1.0, 1e-9);
    }
}

TEST(Tomography, ChoiFromMapMatchesUnitary) {
    std::mt19937_64 rng(3);
    const auto u = giant_atoms::testing::random_unitary(4, rng);
    const auto c = choi_from_map(4, [&](const Eigen::MatrixXcd& x) -> Eigen::MatrixXcd { return u * x * u.adjoint(); });
    EXPECT_LT((c.matrix - choi_from_unitary(u).matrix).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Tomography, AverageFidelityRelation) {
    EXPECT_NEAR(average_gate_fidelity(0.0, 8), 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(average_gate_fidelity(1.0, 8), 1.0, 1e-15);
    for (double f : {0.9, 0.99, 0.999}) {
        EXPECT_NEAR(1.0 - average_gate_fidelity(f, 8), 8.0 / 9.0 * (1.0 - f), 1e-15);
    }
}

TEST(Tomography, StateFidelityExamples) {
    const QutritRegister reg(3);
    const Ket ghz = ghz_ket(reg);
    EXPECT_NEAR(state_fidelity(pure_density(ghz), ghz), 1.0, 1e-15);
    EXPECT_NEAR(state_fidelity(pure_density(basis_ket(reg, "000")), ghz), 0.5, 1e-15);
    for (double x : {0.0, 0.1, 1.0, 5.0}) {
        DensityMatrix rho = pure_density(ghz);
        const auto a = reg.index_of("000"), b = reg.index_of("111");
        rho(a, b) *= std::exp(-x);
        rho(b, a) *= std::exp(-x);
        EXPECT_NEAR(state_fidelity(rho, ghz), 0.5 * (1.0 + std::exp(-x)), 1e-14);
    }
}

TEST(Tomography, VirtualZRecoversFrame) {
    std::mt19937_64 rng(17);
    const auto u = giant_atoms::testing::random_unitary(4, rng);
    // Z(0.3) after the ideal gate on the first qubit
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(4, 4);
    z(2, 2) = z(3, 3) = std::polar(1.0, 0.3);
    const auto phi = choi_from_unitary(z * u);
    EXPECT_LT(process_fidelity(phi, choi_from_unitary(u)), 0.99);
    const auto r = calibrate_virtual_z(phi, u, 2);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
    EXPECT_NEAR(r.post[0], -0.3, 1e-5);
    EXPECT_NEAR(r.post[1], 0.0, 1e-5);
    EXPECT_NEAR(r.pre[0], 0.0, 1e-5);
    EXPECT_NEAR(r.pre[1], 0.0, 1e-5);
}

TEST(Tomography, VirtualZComposition) {
    std::mt19937_64 rng(2);
    const auto phi = choi_from_unitary(giant_atoms::testing::random_unitary(4, rng));
    const auto a = apply_virtual_z(apply_virtual_z(phi, {0.1, 0.2}, {0.3, -0.4}), {-0.1, -0.2}, {-0.3, 0.4});
    EXPECT_LT((a.matrix - phi.matrix).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_THROW(apply_virtual_z(phi, {0.1}, {0.1, 0.2}), std::invalid_argument);
}

TEST(Tomography, FidelityFallsWithNoise) {
    const auto ideal = choi_from_unitary(gate_matrix(GateKind::CCZS));
    double prev = 1.0 + 1e-12;
    for (int i = 0; i < 5; ++i) {
        const double x = 5e-4 * i;
        const double f = process_fidelity(noisy_gate_choi(GateKind::CCZS, x, x), ideal);
        EXPECT_LE(f, prev);
        if (i == 0) {
            EXPECT_NEAR(f, 1.0, 1e-9);
        }
        prev = f;
    }
}

TEST(Tomography, TracePreservingChannel) {
    const auto c = noisy_gate_choi(GateKind::ISWAP, 2e-3, 2e-3);
    EXPECT_NEAR(c.trace(), 1.0, 1e-8);
    EXPECT_NEAR(c.leakage(), 0.0, 1e-8);
    EXPECT_LT((c.matrix - c.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Tomography, ReconstructionIndependentOfJobs) {
    const QutritRegister reg(2);
    std::mt19937_64 rng(12);
    const auto m = giant_atoms::testing::random_model(9, 2, 0.1, rng);
    const auto a = reconstruct_choi(m, 1.0, reg, {}, 1);
    const auto b = reconstruct_choi(m, 1.0, reg, {}, 3);
    EXPECT_EQ(a.matrix, b.matrix);
}

TEST(Tomography, HaarAverageMatchesFormula) {
    std::mt19937_64 rng(99);
    const Eigen::Index d = 4;
    const auto u = giant_atoms::testing::random_unitary(d, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(giant_atoms::testing::random_hermitian(d, rng, 0.05));
    Eigen::VectorXcd ph(d);
    for (Eigen::Index i = 0; i < d; ++i) ph(i) = std::polar(1.0, es.eigenvalues()(i));
    const Eigen::MatrixXcd v = u * es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    const auto w = giant_atoms::testing::random_unitary(d, rng);
    const double p = 0.02;
    auto channel = [&](const Eigen::MatrixXcd& x) -> Eigen::MatrixXcd {
        return (1 - p) * v * x * v.adjoint() + p * w * x * w.adjoint();
    };
    const double f_ave = average_gate_fidelity(process_fidelity(choi_from_map(d, channel), choi_from_unitary(u)), d);

    const int samples = 20000;
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Ket psi = giant_atoms::testing::random_ket(d, rng);
        const Ket target = u * psi;
        acc += state_fidelity(channel(pure_density(psi)), target);
    }
    EXPECT_NEAR(acc / samples, f_ave, 3e-4);
}

TEST(Tomography, NegativeChoiRejected) {
    auto c = choi_from_unitary(Eigen::MatrixXcd::Identity(2, 2));
    c.matrix(1, 1) = -1e-3;
    EXPECT_THROW(process_fidelity(c, choi_from_unitary(Eigen::MatrixXcd::Identity(2, 2))), std::domain_error);
    EXPECT_THROW(process_fidelity(c, choi_from_unitary(Eigen::MatrixXcd::Identity(4, 4))), std::invalid_argument);
}
