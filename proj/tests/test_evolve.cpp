#include "helpers.hpp"

#include "ncqed/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace ncqed;

namespace {

std::shared_ptr<DressedBasis> make_basis(int n_max, const SystemParams& p) {
    return std::make_shared<DressedBasis>(HilbertSpace(n_max), p);
}

Operator projector(const DressedBasis& b, DressedLabel lo, DressedLabel up) {
    Operator m = Operator::Zero(b.dim(), b.dim());
    m(b.index_of(lo), b.index_of(up)) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("phased operator merges equal frequencies") {
    PhasedOperator h;
    Operator x = Operator::Identity(2, 2);
    h.add(1.5, x);
    h.add(1.5, x);
    h.add(-0.5, x);
    CHECK(h.terms.size() == 2);
    CHECK(h.max_frequency() == 1.5);
    CHECK((h.at(0.0) - 3.0 * x).norm() < 1e-14);
}

TEST_CASE("zero Hamiltonian leaves the state unchanged") {
    auto b = make_basis(3, SystemParams{});
    EvolutionProblem pr;
    pr.basis = b;
    pr.initial = coherent_state(b->space(), cplx(0.5, 0.2));
    pr.hamiltonian = [d = b->dim()](double) { return Operator::Zero(d, d); };
    pr.t_end = 5.0;
    pr.keep_states = true;
    auto tr = integrate(pr);
    REQUIRE_FALSE(tr.failed);
    CHECK((tr.states.back() - tr.states.front()).norm() < 1e-12);
}

TEST_CASE("cavity decay of a single photon is exponential") {
    SystemParams p;
    auto b = make_basis(3, p);
    const auto ops = bare_operators(b->space());
    EvolutionProblem pr;
    pr.basis = b;
    pr.initial = DensityMatrix::from_pure(PureState::basis(b->space(), 1, Qubit::g));
    pr.hamiltonian = [n = Operator(p.omega0 * ops.n)](double) { return n; };
    pr.dissipator = DissipatorKind::sme;
    pr.rates = {0.2, 0.0, 0.0};
    pr.t_end = 10.0;
    pr.sample_times = uniform_samples(10.0, 21);
    auto tr = integrate(pr);
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        CHECK(tr.records[i].mean_n == doctest::Approx(std::exp(-0.2 * tr.times[i])).epsilon(1e-6));
    CHECK(tr.max_trace_err() < 1e-8);
}

TEST_CASE("frame transform matches conjugation by the Jaynes-Cummings propagator") {
    SystemParams p = testing::dispersive_params();
    auto b = make_basis(3, p);
    const auto ops = bare_operators(b->space());
    Operator rho = testing::random_density(b->dim(), 11);
    const double t = 0.73;
    Eigen::ComplexEigenSolver<Operator> es(jaynes_cummings(p, ops));
    Operator U = es.eigenvectors() *
                 (es.eigenvalues() * cplx(0.0, -t)).array().exp().matrix().asDiagonal() *
                 es.eigenvectors().inverse();
    auto tilde = frame_transform(DensityMatrix(rho), *b, t, FrameDirection::to_interaction);
    CHECK((tilde.matrix() - U.adjoint() * rho * U).norm() < 1e-10);
    auto back = frame_transform(tilde, *b, t, FrameDirection::to_lab);
    CHECK((back.matrix() - rho).norm() < 1e-12);
}

TEST_CASE("resonant effective dynamics follow sin^2 and stay pure") {
    SystemParams p;
    auto b = make_basis(4, p);
    const cplx theta(0.0, 0.01);
    EvolutionProblem pr;
    pr.basis = b;
    pr.initial = PureState::basis(b->space(), 0, Qubit::g);
    pr.frame = Frame::dressed_interaction;
    Operator v = theta * projector(*b, {0, Branch::minus}, {2, Branch::plus});
    pr.effective_hamiltonian.add(0.0, v + v.adjoint());
    pr.t_end = M_PI / 0.01;
    pr.sample_times = uniform_samples(pr.t_end, 41);
    auto tr = integrate(pr);
    const auto up = b->index_of(2, Branch::plus);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        CHECK(tr.records[i].dressed_pops(up) == doctest::Approx(std::pow(std::sin(0.01 * tr.times[i]), 2)).epsilon(1e-6));
        CHECK(std::abs(tr.records[i].purity - 1.0) < 1e-8);
    }
}

TEST_CASE("effective generator is the interaction picture of the lab generator") {
    SystemParams p = testing::dispersive_params();
    auto b = make_basis(3, p);
    const DressedLabel lo{0, Branch::minus}, up{2, Branch::plus};
    const cplx theta(0.03, 0.02);
    const double eta = b->level(b->index_of(up)).energy - b->level(b->index_of(lo)).energy;
    const Operator P = projector(*b, lo, up);
    const Operator T = b->transform();
    const Operator hjc = jaynes_cummings(p, bare_operators(b->space()));
    const DissipationRates rates{2e-3, 1e-3, 1e-3};
    const double t_end = 40.0;

    EvolutionProblem lab;
    lab.basis = b;
    lab.initial = PureState::basis(b->space(), 0, Qubit::g);
    lab.hamiltonian = [=](double t) {
        Operator v = theta * std::polar(1.0, eta * t) * P;
        return Operator(hjc + T * (v + v.adjoint()) * T.adjoint());
    };
    lab.dissipator = DissipatorKind::sme;
    lab.rates = rates;
    lab.t_end = t_end;
    lab.sample_times = uniform_samples(t_end, 11);

    EvolutionProblem eff = lab;
    eff.hamiltonian = nullptr;
    eff.frame = Frame::dressed_interaction;
    Operator v = theta * P;
    eff.effective_hamiltonian.add(0.0, v + v.adjoint());

    IntegratorOptions tight;
    tight.tol = {1e-10, 1e-12};
    auto a = integrate(lab, tight);
    auto e = integrate(eff, tight);
    REQUIRE(a.records.size() == e.records.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        worst = std::max(worst, std::abs(a.records[i].mean_n - e.records[i].mean_n));
        worst = std::max(worst, std::abs(a.records[i].p_e - e.records[i].p_e));
        worst = std::max(worst, (a.records[i].dressed_pops - e.records[i].dressed_pops).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("fixed-step RK4 converges to the adaptive solution") {
    SystemParams p;
    auto b = make_basis(3, p);
    EvolutionProblem pr;
    pr.basis = b;
    pr.initial = DensityMatrix::from_pure(PureState::basis(b->space(), 0, Qubit::e));
    pr.dissipator = DissipatorKind::sme;
    pr.rates = {0.01, 0.01, 0.01};
    pr.t_end = 3.0;
    pr.sample_times = {3.0};
    auto ref = integrate(pr, IntegratorOptions{{1e-11, 1e-13}});
    double prev = 1.0;
    for (double h : {0.02, 0.01, 0.005}) {
        IntegratorOptions o;
        o.method = Method::fixed_rk4;
        o.fixed_step = h;
        auto tr = integrate(pr, o);
        const double err = std::abs(tr.records.back().mean_n - ref.records.back().mean_n);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-7);
}

TEST_CASE("integration input errors") {
    SystemParams p;
    auto b = make_basis(3, p);
    EvolutionProblem pr;
    pr.basis = b;
    pr.t_end = 1.0;
    CHECK_THROWS_AS(integrate(pr), InputError);  // no initial state
    pr.initial = PureState::basis(b->space(), 0, Qubit::g);
    pr.schedule.tones = {{Target::Omega, 0.5, 41.0}};
    IntegratorOptions o;
    o.method = Method::fixed_rk4;
    o.fixed_step = 2 * M_PI / (10 * 41.0);
    CHECK_THROWS_AS(integrate(pr, o), InputError);  // step above 2π/(50η)
    pr.initial = PureState::basis(HilbertSpace(4), 0, Qubit::g);
    CHECK_THROWS_AS(integrate(pr), DimensionMismatch);
}
