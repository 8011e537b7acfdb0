// steady_state.hpp: asymptotic states of time-independent Liouvillians

#pragma once

#include "ncqed/effective.hpp"

namespace ncqed {

// Secular filter width used for time-independent RWA Liouvillians.
inline constexpr double kStrictSecularCutoff = 1e-9;

// RWA Liouvillian on vec(ρ̃) in the dressed basis: exactly resonant effective Hamiltonian
// plus the strictly secular part of the chosen dissipator.
Eigen::MatrixXcd rwa_liouvillian(const DressedBasis& basis, const RegimeSpec& r, const EffectiveCoupling& c,
                                 DissipatorKind kind, const DissipationRates& rates);

struct AsymptoticState {
    Operator rho;             // dressed basis
    int kernel_dimension{0};
    double slowest_rate{0.0};  // smallest |Re λ| among decaying modes
};

// lim_{t→∞} e^{Lt} ρ0: spectral projection of ρ0 onto the kernel of L.
AsymptoticState asymptotic_state(const Eigen::MatrixXcd& L, const Operator& rho0, double zero_tol = 1e-10);

// Population of each dressed level in the asymptotic state reached from ρ0 (dressed basis).
Eigen::VectorXd asymptotic_populations(const DressedBasis& basis, const RegimeSpec& r, const EffectiveCoupling& c,
                                       DissipatorKind kind, const DissipationRates& rates, const Operator& rho0_dressed);

}  // namespace ncqed
