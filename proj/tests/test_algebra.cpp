#include "giant_atoms/algebra.hpp"
#include "giant_atoms/testing.hpp"

#include <gtest/gtest.h>

using namespace giant_atoms;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Algebra, RegisterIndexing) {
    const QutritRegister reg(3);
    EXPECT_EQ(reg.dim(), 27);
    EXPECT_EQ(reg.computational_dim(), 8);
    EXPECT_EQ(reg.index_of("120"), 1 * 9 + 2 * 3 + 0);
    EXPECT_EQ(reg.label_of(reg.index_of("021")), "021");
    for (Eigen::Index i = 0; i < reg.dim(); ++i) EXPECT_EQ(reg.encode(reg.decode(i)), i);
    EXPECT_THROW(QutritRegister(0), std::invalid_argument);
    EXPECT_THROW(reg.encode({0, 3, 0}), std::invalid_argument);
    EXPECT_THROW(reg.check_atom(3), std::invalid_argument);

    const auto comp = reg.computational_indices();
    ASSERT_EQ(comp.size(), 8u);
    EXPECT_EQ(reg.label_of(comp[0b110]), "110");
}

TEST(Algebra, LoweringOperator) {
    const QutritRegister reg(1);
    const Operator b = lowering_operator(reg, 0);
    EXPECT_LT((b * basis_ket(reg, "0")).norm(), 1e-15);
    EXPECT_LT((b * basis_ket(reg, "1") - basis_ket(reg, "0")).norm(), 1e-15);
    EXPECT_LT((b * basis_ket(reg, "2") - std::sqrt(2.0) * basis_ket(reg, "1")).norm(), 1e-15);
}

TEST(Algebra, DephasingOperator) {
    const QutritRegister reg(2);
    const Operator n = dephasing_operator(reg, 1);
    EXPECT_LT((n * basis_ket(reg, "10")).norm(), 1e-15);
    EXPECT_LT((n * basis_ket(reg, "01") - basis_ket(reg, "01")).norm(), 1e-15);
    EXPECT_LT((n * basis_ket(reg, "22") - 2.0 * basis_ket(reg, "22")).norm(), 1e-15);
}

TEST(Algebra, DistinctAtomsCommute) {
    const QutritRegister reg(3);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            if (j == k) continue;
            const Operator bj = lowering_operator(reg, j), bk = lowering_operator(reg, k);
            EXPECT_LT(max_abs(bj * bk - bk * bj), 1e-12);
            EXPECT_LT(max_abs(bj * bk.adjoint() - bk.adjoint() * bj), 1e-12);
        }
    }
}

TEST(Algebra, ComputationalProjector) {
    const QutritRegister one(1);
    const Operator p1 = projector_computational(one);
    EXPECT_LT(max_abs(p1 - Eigen::Vector3cd(1, 1, 0).asDiagonal().toDenseMatrix()), 1e-15);

    const QutritRegister reg(3);
    const Operator p = projector_computational(reg);
    EXPECT_NEAR(p.trace().real(), 8.0, 1e-12);
    EXPECT_LT(max_abs(p * p - p), 1e-15);
    EXPECT_TRUE(is_hermitian(p));
}

TEST(Algebra, PartialTraceOfProduct) {
    std::mt19937_64 rng(7);
    const QutritRegister reg(2);
    const DensityMatrix a = giant_atoms::testing::random_density(3, rng), b = giant_atoms::testing::random_density(3, rng);
    DensityMatrix ab(9, 9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) ab.block(3 * i, 3 * j, 3, 3) = a(i, j) * b;
    }
    EXPECT_LT(max_abs(partial_trace(ab, reg, {0}) - a), 1e-12);
    EXPECT_LT(max_abs(partial_trace(ab, reg, {1}) - b), 1e-12);
    EXPECT_THROW(partial_trace(ab, reg, {}), std::invalid_argument);
}

TEST(Algebra, PartialTraceOfGhz) {
    const QutritRegister reg(3);
    const DensityMatrix rho = pure_density(ghz_ket(reg));
    const DensityMatrix r1 = partial_trace(rho, reg, {0});
    EXPECT_LT(max_abs(r1 - Eigen::Vector3cd(0.5, 0.5, 0).asDiagonal().toDenseMatrix()), 1e-12);
    EXPECT_NEAR(partial_trace(rho, reg, {0, 2}).trace().real(), 1.0, 1e-12);
}

TEST(Algebra, AddTransitionCoversSpectators) {
    const QutritRegister reg(3);
    Operator h = Operator::Zero(reg.dim(), reg.dim());
    add_transition(h, reg, {0, 1}, {1, 0}, {0, 1}, 2.0);
    EXPECT_TRUE(is_hermitian(h));
    for (const char* s : {"0", "1", "2"}) {
        EXPECT_EQ(h(reg.index_of(std::string("01") + s), reg.index_of(std::string("10") + s)), cplx(2.0));
    }
    EXPECT_NEAR(h.cwiseAbs().sum(), 2.0 * 2.0 * 3.0, 1e-15);
}

TEST(Algebra, Predicates) {
    std::mt19937_64 rng(3);
    EXPECT_TRUE(is_unitary(giant_atoms::testing::random_unitary(6, rng)));
    EXPECT_TRUE(is_density_matrix(giant_atoms::testing::random_density(5, rng)));
    EXPECT_FALSE(is_density_matrix(Eigen::MatrixXcd::Identity(3, 3)));
}
