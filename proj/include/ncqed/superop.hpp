// superop.hpp: vectorized density matrices and sparse superoperators
//
// vec(ρ) is column-major: vec(ρ)[i + d*j] = ρ(i, j), so vec(AρB) = (Bᵀ ⊗ A) vec(ρ).

#pragma once

#include "ncqed/hilbert.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace ncqed {

using Superop = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using SuperVector = Eigen::VectorXcd;

SuperVector vectorize(const Operator& rho);
Operator unvectorize(const Eigen::Ref<const SuperVector>& v, Eigen::Index dim);

Superop kron(const Operator& a, const Operator& b, double drop_tol = 0.0);
Superop left_multiply(const Operator& a);   // ρ → aρ
Superop right_multiply(const Operator& b);  // ρ → ρb
Superop commutator_generator(const Operator& h);  // ρ → −i[h, ρ]
Superop lindblad(const Operator& op, double rate = 1.0);  // ρ → rate·D[op]ρ

// Conjugates a superoperator written in the dressed basis into the bare basis,
// where ρ_bare = T ρ_dressed T†.
Superop to_bare_superop(const Superop& dressed, const Operator& transform);

// Σ_f e^{i f t} S_f : a generator whose time dependence is a finite set of phases.
class PhasedSuperop {
public:
    struct Component {
        double frequency;
        Superop op;
    };

    PhasedSuperop() = default;
    explicit PhasedSuperop(Eigen::Index vec_dim) : vec_dim_(vec_dim) {}

    void add(double frequency, const Superop& op);
    void add(const PhasedSuperop& other);

    void apply(double t, const Eigen::Ref<const SuperVector>& v, Eigen::Ref<SuperVector> out) const;
    bool time_independent() const noexcept;
    // Only valid when time_independent().
    Eigen::MatrixXcd dense() const;
    Superop static_part() const;

    const std::vector<Component>& components() const noexcept { return components_; }
    Eigen::Index vec_dim() const noexcept { return vec_dim_; }
    double max_frequency() const noexcept;

private:
    Eigen::Index vec_dim_{0};
    std::vector<Component> components_;
};

// Interaction picture of a dressed-basis superoperator S with respect to the
// diagonal Hamiltonian diag(energies): entry ((a,b),(c,d)) acquires the phase
// e^{i[(λa−λb)−(λc−λd)]t}. Entries with |frequency| > cutoff are dropped
// (secular filter). Frequencies are grouped with resolution `resolution`.
PhasedSuperop interaction_picture(const Superop& dressed, const Eigen::VectorXd& energies, double cutoff,
                                  double resolution = 1e-9);

}  // namespace ncqed
