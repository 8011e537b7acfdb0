#include "ncqed/steady_state.hpp"

#include "ncqed/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace ncqed {

Eigen::MatrixXcd rwa_liouvillian(const DressedBasis& basis, const RegimeSpec& r, const EffectiveCoupling& c,
                                 DissipatorKind kind, const DissipationRates& rates) {
    PhasedOperator h = effective_hamiltonian(basis, r, c);
    if (r.kind == RegimeKind::dce) {
        // Keep only the exactly resonant rung so the generator is static.
        PhasedOperator resonant;
        for (const auto& term : h.terms)
            if (term.frequency == 0.0) resonant.add(0.0, term.op);
        h = resonant;
    }
    const PhasedSuperop gen = interaction_generator(basis, h, kind, rates, kStrictSecularCutoff);
    PhasedSuperop stat(gen.vec_dim());
    for (const auto& comp : gen.components())
        if (std::abs(comp.frequency) <= kStrictSecularCutoff) stat.add(0.0, comp.op);
    if (stat.components().empty()) return Eigen::MatrixXcd::Zero(gen.vec_dim(), gen.vec_dim());
    return stat.dense();
}

AsymptoticState asymptotic_state(const Eigen::MatrixXcd& L, const Operator& rho0, double zero_tol) {
    const Eigen::Index d = rho0.rows();
    if (L.rows() != d * d || L.cols() != d * d) throw DimensionMismatch("asymptotic_state: generator and state differ");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L);
    if (es.info() != Eigen::Success) throw PhysicsError("asymptotic_state: eigen-decomposition failed");
    const Eigen::VectorXcd& ev = es.eigenvalues();
    const Eigen::MatrixXcd& V = es.eigenvectors();
    const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    const Eigen::VectorXcd coeff = V.partialPivLu().solve(vectorize(rho0));
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d * d);
    AsymptoticState res;
    res.slowest_rate = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) <= zero_tol * scale) {
            out += coeff(i) * V.col(i);
            ++res.kernel_dimension;
        } else if (std::abs(ev(i).real()) > zero_tol * scale) {
            res.slowest_rate = std::min(res.slowest_rate, std::abs(ev(i).real()));
        }
    }
    Operator rho = unvectorize(out, d);
    rho = 0.5 * (rho + rho.adjoint());
    const cplx tr = rho.trace();
    if (std::abs(tr) > 0.0) rho /= tr.real();
    res.rho = std::move(rho);
    return res;
}

Eigen::VectorXd asymptotic_populations(const DressedBasis& basis, const RegimeSpec& r, const EffectiveCoupling& c,
                                       DissipatorKind kind, const DissipationRates& rates, const Operator& rho0_dressed) {
    const auto L = rwa_liouvillian(basis, r, c, kind, rates);
    return asymptotic_state(L, rho0_dressed).rho.diagonal().real();
}

}  // namespace ncqed
