// observables.hpp: photon statistics, atomic excitation, dressed populations, health checks

#pragma once

#include "ncqed/dressed.hpp"

#include <optional>
#include <vector>

namespace ncqed {

double mean_photon(const DensityMatrix& rho);
double excitation_probability(const DensityMatrix& rho);
// (⟨n̂²⟩ − ⟨n̂⟩² − ⟨n̂⟩)/⟨n̂⟩; absent when ⟨n̂⟩ < 1e-12.
std::optional<double> mandel_q(const DensityMatrix& rho);
// P(n) summed over the qubit.
Eigen::VectorXd photon_distribution(const DensityMatrix& rho);
// Diagonal of ρ in the dressed basis, ordered by level index.
Eigen::VectorXd dressed_populations(const DensityMatrix& rho, const DressedBasis& basis);
Eigen::VectorXd dressed_populations_from_dressed(const Operator& rho_dressed);

struct Diagnostics {
    double trace_err{};
    double min_eig{};
    double hermiticity_err{};
    double top_fock_pop{};
    double purity{};
};

Diagnostics diagnostics(const DensityMatrix& rho);

struct ObservableRecord {
    double mean_n{};
    std::optional<double> mandel_q;
    double p_e{};
    Eigen::VectorXd dressed_pops;
    double trace_err{};
    double min_eig{};
    double top_fock_pop{};
    double purity{};
};

// ρ_bare is the lab-frame state in the bare basis, ρ_dressed the same state in the dressed basis.
ObservableRecord observe(const Operator& rho_bare, const Operator& rho_dressed);

}  // namespace ncqed
