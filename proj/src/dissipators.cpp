#include "ncqed/dissipators.hpp"

#include "ncqed/errors.hpp"

#include <cmath>

namespace ncqed {

void validate(const DissipationRates& r) {
    if (r.kappa < 0.0 || r.gamma < 0.0 || r.gamma_phi < 0.0) {
        throw InputError("dissipation rates must be non-negative");
    }
}

Operator lindblad_apply(const Operator& op, const Operator& rho) {
    const Operator od = op.adjoint() * op;
    return op * rho * op.adjoint() - 0.5 * (od * rho + rho * od);
}

Operator sme_apply(const DensityMatrix& rho, const OperatorSet& ops, const DissipationRates& r) {
    validate(r);
    if (rho.dim() != ops.a.rows()) throw DimensionMismatch("sme_apply: state and operators differ in dimension");
    const Operator& m = rho.matrix();
    Operator out = Operator::Zero(m.rows(), m.cols());
    if (r.kappa > 0.0) out += r.kappa * lindblad_apply(ops.a, m);
    if (r.gamma > 0.0) out += r.gamma * lindblad_apply(ops.sigma_minus, m);
    if (r.gamma_phi > 0.0) out += 0.5 * r.gamma_phi * lindblad_apply(ops.sigma_z, m);
    return out;
}

Superop sme_superop(const OperatorSet& ops, const DissipationRates& r) {
    validate(r);
    const auto d = ops.a.rows();
    Superop s(d * d, d * d);
    if (r.kappa > 0.0) s += lindblad(ops.a, r.kappa);
    if (r.gamma > 0.0) s += lindblad(ops.sigma_minus, r.gamma);
    if (r.gamma_phi > 0.0) s += lindblad(ops.sigma_z, 0.5 * r.gamma_phi);
    return s;
}

SpectralDensityPolicy SpectralDensityPolicy::flat_positive(const DissipationRates& r) {
    validate(r);
    auto flat = [](double rate) { return [rate](double nu) { return nu >= 0.0 ? rate : 0.0; }; };
    return {flat(r.kappa), flat(r.gamma), flat(r.gamma_phi)};
}

DpmeRates dpme_rates(const DressedBasis& basis, const TransitionTables& tables, const SpectralDensityPolicy& policy) {
    const auto d = basis.dim();
    if (tables.a.rows() != d) throw DimensionMismatch("dpme_rates: tables from another basis");
    DpmeRates r;
    r.phi = std::sqrt(policy.gamma_phi(0.0) / 2.0) * tables.sz.diagonal();
    r.gamma_phi = Eigen::MatrixXd::Zero(d, d);
    r.gamma_kappa = Eigen::MatrixXd::Zero(d, d);
    r.gamma_gamma = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index l = 0; l < d; ++l) {
        for (Eigen::Index k = 0; k < d; ++k) {
            if (k == l) continue;
            const double nu = tables.delta(l, k);
            r.gamma_phi(l, k) = policy.gamma_phi(nu) * tables.sz(l, k) * tables.sz(l, k) / 2.0;
            if (k > l) {
                r.gamma_kappa(l, k) = policy.kappa(nu) * tables.a(l, k) * tables.a(l, k);
                r.gamma_gamma(l, k) = policy.gamma(nu) * tables.sx(l, k) * tables.sx(l, k);
            }
        }
    }
    return r;
}

namespace {
Eigen::MatrixXd jump_rates(const DpmeRates& r) { return r.gamma_phi + r.gamma_kappa + r.gamma_gamma; }
}  // namespace

Operator dpme_apply_dressed(const Operator& rho, const DpmeRates& rates) {
    const auto d = rho.rows();
    if (rates.phi.size() != d) throw DimensionMismatch("dpme_apply: rates from another basis");
    const Eigen::MatrixXd jumps = jump_rates(rates);
    const Eigen::VectorXd out_rate = jumps.colwise().sum().transpose();  // total rate out of k
    Operator out(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const double dphi = rates.phi(i) - rates.phi(j);
            out(i, j) = -(0.5 * dphi * dphi + 0.5 * (out_rate(i) + out_rate(j))) * rho(i, j);
        }
    }
    for (Eigen::Index l = 0; l < d; ++l) {
        for (Eigen::Index k = 0; k < d; ++k) {
            if (jumps(l, k) != 0.0) out(l, l) += jumps(l, k) * rho(k, k);
        }
    }
    return out;
}

Operator dpme_apply(const DensityMatrix& rho, const DressedBasis& basis, const DpmeRates& rates) {
    if (rho.dim() != basis.dim()) throw DimensionMismatch("dpme_apply: state and basis differ in dimension");
    return basis.to_bare(dpme_apply_dressed(basis.to_dressed(rho.matrix()), rates));
}

Superop dpme_superop_dressed(const DpmeRates& rates) {
    const auto d = rates.phi.size();
    const Eigen::MatrixXd jumps = jump_rates(rates);
    const Eigen::VectorXd out_rate = jumps.colwise().sum().transpose();
    std::vector<Eigen::Triplet<cplx>> trips;
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const double dphi = rates.phi(i) - rates.phi(j);
            const double diag = -(0.5 * dphi * dphi + 0.5 * (out_rate(i) + out_rate(j)));
            if (diag != 0.0) trips.emplace_back(i + d * j, i + d * j, diag);
        }
    }
    for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index k = 0; k < d; ++k)
            if (jumps(l, k) != 0.0) trips.emplace_back(l + d * l, k + d * k, jumps(l, k));
    Superop s(d * d, d * d);
    s.setFromTriplets(trips.begin(), trips.end());
    return s;
}

Superop dpme_superop_bare(const DressedBasis& basis, const DpmeRates& rates) {
    return to_bare_superop(dpme_superop_dressed(rates), basis.transform());
}

}  // namespace ncqed
