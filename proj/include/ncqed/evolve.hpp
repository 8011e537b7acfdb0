// evolve.hpp: time integration in the lab frame and the dressed interaction picture
//
// Lab frame:  dρ/dt = −i[H(t), ρ] + Lρ with H(t) the modulated Rabi Hamiltonian.
// Dressed interaction frame: ρ̃ = U_t† ρ U_t, U_t = exp(−itH_JC), evolved under an
// effective generator H̃(t) plus the interaction-picture dissipator. Observables are
// always reported for the lab-frame state.

#pragma once

#include "ncqed/dissipators.hpp"
#include "ncqed/observables.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace ncqed {

enum class Frame { lab, dressed_interaction };
enum class DissipatorKind { none, sme, dpme };
enum class Method { adaptive, fixed_rk4 };
enum class FrameDirection { to_interaction, to_lab };

// H̃(t) = Σ_f e^{i f t} H_f, operators written in the dressed basis.
struct PhasedOperator {
    struct Term {
        double frequency;
        Operator op;
    };
    std::vector<Term> terms;

    void add(double frequency, const Operator& op);
    Operator at(double t) const;
    double max_frequency() const noexcept;
};

PhasedSuperop commutator_generator(const PhasedOperator& h);

struct EvolutionProblem {
    std::shared_ptr<const DressedBasis> basis;
    std::variant<std::monostate, PureState, DensityMatrix> initial;  // lab state at t = 0, bare basis
    Frame frame{Frame::lab};

    ModulationSchedule schedule;                      // lab frame
    std::function<Operator(double)> hamiltonian;      // lab frame override of the Rabi model
    PhasedOperator effective_hamiltonian;             // dressed frame

    DissipatorKind dissipator{DissipatorKind::none};
    DissipationRates rates;
    // Interaction-picture SME terms rotating faster than this are dropped;
    // infinity keeps the exact time-dependent dissipator.
    double secular_cutoff{std::numeric_limits<double>::infinity()};

    double t_end{0.0};
    std::vector<double> sample_times;
    bool keep_states{false};
};

struct Tolerances {
    double rel{1e-8};
    double abs{1e-10};
};

struct IntegratorOptions {
    Tolerances tol;
    Method method{Method::adaptive};
    double fixed_step{0.0};  // required for fixed_rk4
    double max_step{0.0};    // 0: automatic
    double min_step{1e-9};
    double trace_tolerance{1e-6};
};

struct Trajectory {
    std::vector<double> times;
    std::vector<ObservableRecord> records;
    std::vector<Operator> states;  // lab frame, bare basis; only when keep_states
    bool failed{false};
    std::string failure;
    std::size_t steps{0};

    double max_trace_err() const;
    double min_eigenvalue() const;
    double max_top_fock_pop() const;
};

Trajectory integrate(const EvolutionProblem& problem, const IntegratorOptions& options = {});

// Conjugation by U_t realised as phases e^{−iλ_l t} in the dressed basis; ρ in the bare basis.
DensityMatrix frame_transform(const DensityMatrix& rho, const DressedBasis& basis, double t, FrameDirection dir);
// Same on dressed-basis matrices.
Operator rotate_dressed(const Operator& rho_dressed, const Eigen::VectorXd& energies, double t, FrameDirection dir);

std::vector<double> uniform_samples(double t_end, std::size_t count);

// Generator of the interaction-picture master equation on vec(ρ̃) in the dressed basis.
PhasedSuperop interaction_generator(const DressedBasis& basis, const PhasedOperator& h_eff, DissipatorKind kind,
                                    const DissipationRates& rates, double secular_cutoff);

}  // namespace ncqed
