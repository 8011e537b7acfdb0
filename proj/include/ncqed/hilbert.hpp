// hilbert.hpp: truncated qubit ⊗ Fock space, bare operators and states
//
// Basis ordering (used by every module): index(n, q) = 2n + q with q = 0 for |g⟩
// and q = 1 for |e⟩, n = 0..n_max.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace ncqed {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

enum class Qubit : int { g = 0, e = 1 };

class HilbertSpace {
public:
    explicit HilbertSpace(int n_max);

    int n_max() const noexcept { return n_max_; }
    Eigen::Index dim() const noexcept { return 2 * (n_max_ + 1); }
    Eigen::Index index(int n, Qubit q) const;
    int photon_number(Eigen::Index idx) const noexcept { return static_cast<int>(idx / 2); }
    Qubit qubit(Eigen::Index idx) const noexcept { return idx % 2 == 0 ? Qubit::g : Qubit::e; }

    bool operator==(const HilbertSpace&) const = default;

private:
    int n_max_;
};

HilbertSpace build_space(int n_max);

struct OperatorSet {
    Operator a;
    Operator a_dag;
    Operator n;
    Operator sigma_minus;
    Operator sigma_plus;
    Operator sigma_z;
    Operator excited_projector;
    Operator identity;
};

OperatorSet bare_operators(const HilbertSpace& space);

class PureState {
public:
    // Throws if the norm deviates from one by more than 1e-12.
    explicit PureState(StateVector amplitudes);

    const StateVector& amplitudes() const noexcept { return amps_; }
    Eigen::Index dim() const noexcept { return amps_.size(); }

    static PureState basis(const HilbertSpace& space, int n, Qubit q);
    static PureState normalized(StateVector amplitudes);

private:
    StateVector amps_;
};

class DensityMatrix {
public:
    // Validates Hermiticity (1e-12), unit trace (1e-10) and positivity (min eig ≥ -1e-10).
    explicit DensityMatrix(Operator rho);

    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed(const HilbertSpace& space);
    // No validation; for intermediate states produced by integrators.
    static DensityMatrix unchecked(Operator rho);

    const Operator& matrix() const noexcept { return rho_; }
    Eigen::Index dim() const noexcept { return rho_.rows(); }

private:
    struct Unchecked {};
    DensityMatrix(Operator rho, Unchecked) : rho_(std::move(rho)) {}
    Operator rho_;
};

PureState coherent_state(const HilbertSpace& space, cplx alpha);

cplx expectation(const DensityMatrix& rho, const Operator& op);
// Real part of Tr(ρ op); throws if the imaginary residue exceeds 1e-10 (op must be Hermitian).
double expectation_real(const DensityMatrix& rho, const Operator& op);

}  // namespace ncqed
