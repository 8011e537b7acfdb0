#include "helpers.hpp"

#include "ncqed/errors.hpp"

#include <doctest.h>

using namespace ncqed;

TEST_CASE("vectorization convention vec(A rho B) = (B^T kron A) vec(rho)") {
    const Eigen::Index d = 6;
    Operator a = Operator::Random(d, d), b = Operator::Random(d, d);
    Operator rho = testing::random_density(d, 1);
    SuperVector lhs = vectorize(a * rho * b);
    SuperVector rhs = kron(b.transpose(), a) * vectorize(rho);
    CHECK((lhs - rhs).norm() < 1e-12);
    CHECK((unvectorize(vectorize(rho), d) - rho).norm() == 0.0);
}

TEST_CASE("SME superoperator matches the matrix form and preserves trace") {
    HilbertSpace space(4);
    auto ops = bare_operators(space);
    DissipationRates r{0.3, 0.2, 0.1};
    Operator rho = testing::random_density(space.dim(), 2);
    Operator direct = sme_apply(DensityMatrix(rho), ops, r);
    Operator viaS = unvectorize(sme_superop(ops, r) * vectorize(rho), space.dim());
    CHECK((direct - viaS).norm() < 1e-12);
    CHECK(std::abs(direct.trace()) < 1e-12);
    CHECK((direct - direct.adjoint()).norm() < 1e-12);
}

TEST_CASE("negative rates are rejected") {
    CHECK_THROWS_AS(validate(DissipationRates{-1.0, 0.0, 0.0}), InputError);
}

TEST_CASE("DPME rates follow the spectral policy") {
    SystemParams p = testing::dispersive_params();
    HilbertSpace space(4);
    DressedBasis b(space, p);
    auto tables = transition_tables(b, bare_operators(space));
    auto rates = dpme_rates(b, tables, SpectralDensityPolicy::flat_positive({0.1, 0.2, 0.3}));
    const auto d = b.dim();
    for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index k = 0; k <= l; ++k) {
            CHECK(rates.gamma_kappa(l, k) == 0.0);
            CHECK(rates.gamma_gamma(l, k) == 0.0);
        }
    const auto g0 = b.index_of(0, Branch::minus), g1 = b.index_of(1, Branch::plus);
    CHECK(rates.gamma_kappa(g0, g1) == doctest::Approx(0.1 * std::pow(tables.a(g0, g1), 2)));
    SpectralDensityPolicy none = SpectralDensityPolicy::flat_positive({0.1, 0.2, 0.3});
    CHECK(none.kappa(-1.0) == 0.0);
    CHECK(none.kappa(0.0) == 0.1);
}

TEST_CASE("DPME matrix form, dressed superoperator and bare superoperator agree") {
    SystemParams p = testing::dispersive_params();
    HilbertSpace space(4);
    DressedBasis b(space, p);
    auto rates = dpme_rates(b, transition_tables(b, bare_operators(space)),
                            SpectralDensityPolicy::flat_positive({0.1, 0.2, 0.3}));
    Operator rho = testing::random_density(space.dim(), 3);
    Operator direct = dpme_apply(DensityMatrix(rho), b, rates);
    Operator viaS = unvectorize(dpme_superop_bare(b, rates) * vectorize(rho), space.dim());
    CHECK((direct - viaS).norm() < 1e-10);
    CHECK(std::abs(direct.trace()) < 1e-12);
    Operator rd = b.to_dressed(rho);
    CHECK((b.to_dressed(direct) - dpme_apply_dressed(rd, rates)).norm() < 1e-10);
}

TEST_CASE("DPME reduces to SME on populations in the bare limit") {
    SystemParams p = testing::dispersive_params();
    p.g0 = 1e-7;
    HilbertSpace space(4);
    DressedBasis b(space, p);
    auto ops = bare_operators(space);
    DissipationRates r{0.3, 0.2, 0.1};
    auto rates = dpme_rates(b, transition_tables(b, ops), SpectralDensityPolicy::flat_positive(r));
    // Diagonal states: both generators act identically.
    Operator rho = Operator::Zero(space.dim(), space.dim());
    Eigen::VectorXd w = Eigen::VectorXd::Random(space.dim()).cwiseAbs();
    w /= w.sum();
    rho.diagonal() = w.cast<cplx>();
    Operator sme = sme_apply(DensityMatrix(rho), ops, r);
    Operator dpme = dpme_apply(DensityMatrix(rho), b, rates);
    CHECK((sme - dpme).norm() < 1e-6 * sme.norm());
    // Coherence decay rates match as well; only coherence transfer differs.
    Operator coh = Operator::Zero(space.dim(), space.dim());
    const auto i = space.index(2, Qubit::g), j = space.index(1, Qubit::e);
    coh(i, j) = 1.0;
    coh(j, i) = 1.0;
    Operator ls = unvectorize(sme_superop(ops, r) * vectorize(coh), space.dim());
    Operator ld = unvectorize(dpme_superop_bare(b, rates) * vectorize(coh), space.dim());
    CHECK(std::abs(ls(i, j) - ld(i, j)) < 1e-6);
}
