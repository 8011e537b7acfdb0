// dissipators.hpp: zero-temperature Liouvillians
//
// SME:  κ D[â] + γ D[σ̂₋] + (γ_φ/2) D[σ̂_z]             (bare operators)
// DPME: D[Σ_l Φ^l |l⟩⟨l|] + Σ_{l,k≠l} Γ_φ^{lk} D[|l⟩⟨k|]
//       + Σ_{l,k>l} (Γ_κ^{lk} + Γ_γ^{lk}) D[|l⟩⟨k|]        (dressed levels)
// with D[O]ρ = (2OρO† − O†Oρ − ρO†O)/2.

#pragma once

#include "ncqed/dressed.hpp"
#include "ncqed/superop.hpp"

#include <functional>

namespace ncqed {

struct DissipationRates {
    double kappa{0.0};
    double gamma{0.0};
    double gamma_phi{0.0};

    static DissipationRates from(const SystemParams& p) { return {p.kappa, p.gamma, p.gamma_phi}; }
};

void validate(const DissipationRates& r);

Operator lindblad_apply(const Operator& op, const Operator& rho);

Operator sme_apply(const DensityMatrix& rho, const OperatorSet& ops, const DissipationRates& r);
Superop sme_superop(const OperatorSet& ops, const DissipationRates& r);

// Noise spectral densities ν ↦ rate.
struct SpectralDensityPolicy {
    std::function<double(double)> kappa;
    std::function<double(double)> gamma;
    std::function<double(double)> gamma_phi;

    // Constant for ν ≥ 0, zero for ν < 0.
    static SpectralDensityPolicy flat_positive(const DissipationRates& r);
};

// Rates indexed by dressed level; the (l, k) entries weight D[|l⟩⟨k|].
struct DpmeRates {
    Eigen::VectorXd phi;          // Φ^l
    Eigen::MatrixXd gamma_phi;    // Γ_φ^{lk}, l ≠ k
    Eigen::MatrixXd gamma_kappa;  // Γ_κ^{lk}, k > l only
    Eigen::MatrixXd gamma_gamma;  // Γ_γ^{lk}, k > l only
};

DpmeRates dpme_rates(const DressedBasis& basis, const TransitionTables& tables, const SpectralDensityPolicy& policy);

// ρ in the bare (lab) basis; rotated to the dressed basis internally.
Operator dpme_apply(const DensityMatrix& rho, const DressedBasis& basis, const DpmeRates& rates);
// Same Liouvillian acting on a dressed-basis matrix.
Operator dpme_apply_dressed(const Operator& rho_dressed, const DpmeRates& rates);
Superop dpme_superop_dressed(const DpmeRates& rates);
Superop dpme_superop_bare(const DressedBasis& basis, const DpmeRates& rates);

}  // namespace ncqed
