#include "helpers.hpp"

#include "ncqed/errors.hpp"

#include <doctest.h>

using namespace ncqed;

TEST_CASE("truncation below two photons is rejected") {
    CHECK_THROWS_AS(HilbertSpace(1), InvalidTruncation);
    CHECK_NOTHROW(HilbertSpace(2));
}

TEST_CASE("basis index is 2n + q") {
    HilbertSpace s(4);
    CHECK(s.dim() == 10);
    CHECK(s.index(0, Qubit::g) == 0);
    CHECK(s.index(0, Qubit::e) == 1);
    CHECK(s.index(3, Qubit::e) == 7);
    CHECK(s.photon_number(7) == 3);
    CHECK(s.qubit(7) == Qubit::e);
    CHECK_THROWS_AS(s.index(5, Qubit::g), InvalidTruncation);
}

TEST_CASE("ladder operators obey [a, a+] = 1 below the truncation") {
    HilbertSpace s(5);
    auto ops = bare_operators(s);
    Operator c = ops.a * ops.a_dag - ops.a_dag * ops.a;
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        const double expect = s.photon_number(i) == s.n_max() ? -s.n_max() : 1.0;
        CHECK(c(i, i).real() == doctest::Approx(expect));
    }
    CHECK((ops.n - ops.a_dag * ops.a).norm() < 1e-14);
    CHECK((ops.sigma_plus * ops.sigma_minus - ops.sigma_minus * ops.sigma_plus - ops.sigma_z).norm() < 1e-14);
}

TEST_CASE("state constructors validate their input") {
    HilbertSpace s(3);
    StateVector v = StateVector::Zero(s.dim());
    v(0) = 2.0;
    CHECK_THROWS_AS(PureState{v}, InputError);
    CHECK(PureState::normalized(v).amplitudes()(0).real() == doctest::Approx(1.0));

    Operator rho = Operator::Zero(s.dim(), s.dim());
    rho(0, 0) = 0.5;
    CHECK_THROWS_AS(DensityMatrix{rho}, InputError);  // trace
    rho(1, 1) = 0.5;
    rho(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{rho}, InputError);  // not Hermitian
    rho(0, 1) = 0.0;
    rho(0, 0) = 1.5;
    rho(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{rho}, InputError);  // negative
    CHECK_NOTHROW(DensityMatrix::maximally_mixed(s));
}

TEST_CASE("coherent state statistics and truncation guard") {
    HilbertSpace s(12);
    auto psi = coherent_state(s, cplx(1.0, 0.0));
    auto ops = bare_operators(s);
    auto rho = DensityMatrix::from_pure(psi);
    CHECK(expectation_real(rho, ops.n) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(coherent_state(HilbertSpace(8), cplx(2.0, 0.0)), InvalidTruncation);
}

TEST_CASE("expectation checks dimensions") {
    auto rho = DensityMatrix::maximally_mixed(HilbertSpace(3));
    auto ops = bare_operators(HilbertSpace(4));
    CHECK_THROWS_AS(expectation(rho, ops.n), DimensionMismatch);
}
