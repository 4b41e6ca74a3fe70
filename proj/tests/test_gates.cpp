#include "giant_atoms/gates.hpp"
#include "giant_atoms/tomography.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <numbers>

using namespace giant_atoms;

namespace {

// exp(-iHt) from the eigendecomposition of a Hermitian H.
Operator expm_hermitian(const Operator& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd ph(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) ph(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

cplx amp(const QutritRegister& reg, const Operator& u, std::string_view out, std::string_view in) {
    return u(reg.index_of(out), reg.index_of(in));
}

double ns_at(double t_over_g, double gamma_mhz) { return t_over_g / (2.0 * std::numbers::pi * gamma_mhz * 1e6) * 1e9; }

}  // namespace

TEST(Gates, KindNames) {
    for (auto k : {GateKind::CCZS, GateKind::DIV, GateKind::ISWAP, GateKind::CZ}) {
        EXPECT_EQ(parse_gate_kind(to_string(k)), k);
    }
    EXPECT_THROW(parse_gate_kind("toffoli"), std::invalid_argument);
    EXPECT_EQ(gate_arity(GateKind::DIV), 3u);
    EXPECT_EQ(gate_arity(GateKind::ISWAP), 2u);
}

TEST(Gates, SpecValidation) {
    EXPECT_THROW(GateSpec::make(GateKind::CCZS, {0, 1}, 1.0), std::invalid_argument);
    EXPECT_THROW(GateSpec::make(GateKind::CCZS, {0, 1, 1}, 1.0), std::invalid_argument);
    EXPECT_THROW(GateSpec::make(GateKind::CCZS, {0, 1, 2}, 0.0), std::invalid_argument);
    const auto s = GateSpec::make(GateKind::CCZS, {0, 1, 4}, 1.0);
    EXPECT_THROW(ideal_unitary(s, QutritRegister(3)), std::invalid_argument);
}

TEST(Gates, CczsExamples) {
    const QutritRegister reg(3);
    const auto u = ideal_unitary(GateSpec::make(GateKind::CCZS, {0, 1, 2}, 1.0), reg);
    EXPECT_EQ(amp(reg, u, "000", "000"), cplx(1.0));
    EXPECT_EQ(amp(reg, u, "011", "110"), cplx(-1.0));
    EXPECT_EQ(amp(reg, u, "110", "011"), cplx(-1.0));
    EXPECT_EQ(amp(reg, u, "111", "111"), cplx(-1.0));
    EXPECT_EQ(amp(reg, u, "101", "101"), cplx(1.0));
    EXPECT_EQ(amp(reg, u, "020", "020"), cplx(1.0));
    EXPECT_TRUE(is_unitary(u));
}

TEST(Gates, DivExamples) {
    const QutritRegister reg(3);
    const auto u = ideal_unitary(GateSpec::make(GateKind::DIV, {0, 1, 2}, 1.0), reg);
    const double r = 1.0 / std::numbers::sqrt2;
    EXPECT_NEAR(std::abs(amp(reg, u, "100", "100") - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(amp(reg, u, "010", "100") - cplx(0, -r)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(amp(reg, u, "001", "100") + 0.5), 0.0, 1e-15);
    EXPECT_TRUE(is_unitary(u));

    // excitation number is conserved
    const Eigen::MatrixXcd m = gate_matrix(GateKind::DIV);
    for (int r_ = 0; r_ < 8; ++r_) {
        for (int c = 0; c < 8; ++c) {
            if (std::popcount(static_cast<unsigned>(r_)) != std::popcount(static_cast<unsigned>(c))) {
                EXPECT_EQ(m(r_, c), cplx(0.0));
            }
        }
    }
}

TEST(Gates, AllGateMatricesUnitary) {
    for (auto k : {GateKind::CCZS, GateKind::DIV, GateKind::ISWAP, GateKind::CZ}) {
        EXPECT_TRUE(is_unitary(gate_matrix(k))) << to_string(k);
    }
}

TEST(Gates, EffectiveHamiltonianElements) {
    const QutritRegister reg(3);
    const double g = 0.7;
    const auto h = effective_hamiltonian(GateSpec::make(GateKind::CCZS, {0, 1, 2}, g), reg);
    EXPECT_TRUE(is_hermitian(h));
    EXPECT_EQ(h(reg.index_of("020"), reg.index_of("110")), cplx(g));
    EXPECT_EQ(h(reg.index_of("020"), reg.index_of("011")), cplx(g));
    EXPECT_EQ(h(reg.index_of("100"), reg.index_of("010")), cplx(0.0));
    EXPECT_EQ(h(reg.index_of("111"), reg.index_of("120")), cplx(g));
}

TEST(Gates, EvolutionReproducesIdeal) {
    // participants embedded in a larger register, in a non-trivial order
    const QutritRegister reg(4);
    const std::vector<std::pair<GateKind, std::vector<std::size_t>>> cases = {
        {GateKind::CCZS, {3, 1, 0}}, {GateKind::DIV, {0, 2, 3}}, {GateKind::ISWAP, {2, 1}}, {GateKind::CZ, {1, 3}}};
    for (const auto& [kind, atoms] : cases) {
        for (double g : {1.0, 2.5}) {
            const auto spec = GateSpec::make(kind, atoms, g);
            const Operator u = expm_hermitian(effective_hamiltonian(spec, reg), spec.duration);
            const Eigen::MatrixXcd got = computational_block(u, reg);
            const Eigen::MatrixXcd want = computational_block(ideal_unitary(spec, reg), reg);
            EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-9) << to_string(kind) << " g=" << g;
        }
    }
}

TEST(Gates, Durations) {
    constexpr double pi = std::numbers::pi;
    EXPECT_NEAR(gate_duration(GateKind::CCZS, 1.0), pi / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(gate_duration(GateKind::DIV, 1.0), pi / (2 * std::numbers::sqrt2), 1e-15);
    EXPECT_NEAR(gate_duration(GateKind::ISWAP, 2.0), pi / 4, 1e-15);
    EXPECT_NEAR(gate_duration(GateKind::CZ, 1.0), pi, 1e-15);
    EXPECT_NEAR(ns_at(gate_duration(GateKind::CCZS, 1.0), 4.0), 88.39, 0.01);
    EXPECT_NEAR(ns_at(gate_duration(GateKind::ISWAP, 1.0), 4.0), 62.5, 1e-9);
    EXPECT_THROW(gate_duration(GateKind::CCZS, -1.0), std::invalid_argument);
    EXPECT_NEAR(full_model_duration(GateKind::CCZS, 1.0), pi / 2, 1e-15);
}

TEST(Gates, FullModelResonance) {
    const double omega0 = 500.0;
    const auto wg = WaveguideParams::from_omega0(omega0);
    const auto layout = reference_layout(3, 1.0, wg);
    const double w_end = df_point(wg, 2, 2).omega, w_hub = df_point(wg, 2, 3).omega;
    const double chi = w_end - w_hub;  // |110> and |020> degenerate
    const std::vector<AtomParams> atoms{{w_end, -omega0 / 4}, {w_hub, chi}, {w_end, -omega0 / 4}};
    const auto h = full_model_hamiltonian(atoms, layout, w_end);
    const QutritRegister reg(3);
    EXPECT_TRUE(is_hermitian(h));
    const auto i110 = reg.index_of("110"), i020 = reg.index_of("020");
    EXPECT_NEAR(h(i110, i110).real(), h(i020, i020).real(), 1e-9);
    const double g12 = coherent_coupling(layout, 0, 1, pair_resonance(atoms[0], atoms[1]));
    EXPECT_NEAR(std::abs(g12), 1.0, 1e-9);
    EXPECT_NEAR(h(i020, i110).real(), std::numbers::sqrt2 * g12, 1e-12);
    EXPECT_NEAR(pair_resonance(atoms[0], atoms[1]), w_end, 1e-9);
}

TEST(Gates, FullModelRejectsMismatch) {
    const auto layout = reference_layout(3);
    EXPECT_THROW(full_model_hamiltonian({{1.0, -0.1}}, layout, 0.0), std::invalid_argument);
}
