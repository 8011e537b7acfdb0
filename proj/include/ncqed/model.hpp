// model.hpp: system parameters, multi-tone modulation and the Rabi Hamiltonian
//
// Frequencies live in an internal unit (rad per internal time unit); `unit_rad_s`
// records how many rad/s one internal unit is. The presets use g0 as the unit.

#pragma once

#include "ncqed/hilbert.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncqed {

enum class Target { omega, Omega, g, chi };

std::string_view to_string(Target t);
Target parse_target(std::string_view s);

struct SystemParams {
    double omega0{20.0};
    double Omega0{20.0};
    double g0{1.0};
    double chi0{0.0};
    double kappa{0.0};
    double gamma{0.0};
    double gamma_phi{0.0};
    double unit_rad_s{1.0};

    double delta_minus() const noexcept { return omega0 - Omega0; }
    double delta_plus() const noexcept { return omega0 + Omega0; }
    double bare(Target t) const noexcept;
};

// Checks the invariants that do not depend on the modulation. `n_active` is the
// highest excitation number the run is expected to populate. Returns warnings.
std::vector<std::string> validate(const SystemParams& p, int n_active);

struct ModulationTone {
    Target target{Target::Omega};
    cplx depth{0.0};       // ε_X w e^{iφ}
    double frequency{0.0}; // η
};

struct ModulationSchedule {
    std::vector<ModulationTone> tones;

    bool empty() const noexcept { return tones.empty(); }
    double max_frequency() const noexcept;
};

void validate(const ModulationSchedule& s, const SystemParams& p, int n_max);

// X₀ + Σ_j Im(ε_X^(j) e^{iη^(j) t}) over the tones that target X.
double parameter_value(const SystemParams& p, const ModulationSchedule& s, Target target, double t);

struct DerivedFrequencies {
    double delta_minus{};
    double delta_plus{};
    std::optional<double> disp_shift;   // δ₋ = g₀²/Δ₋, absent at Δ₋ = 0
    double bs_shift{};                  // δ₊ = g₀²/Δ₊
    std::optional<int> detuning_symbol; // D = sign(Δ₋), absent at Δ₋ = 0
};

DerivedFrequencies derived_frequencies(const SystemParams& p);

// H(t) = ω(t)n̂ + Ω(t)|e⟩⟨e| + g(t)(â+â†)(σ̂₊+σ̂₋) + iχ(t)(â†²−â²)
class RabiHamiltonian {
public:
    RabiHamiltonian(const SystemParams& p, ModulationSchedule s, const OperatorSet& ops);

    Operator at(double t) const;
    // H(t)·v without forming H(t).
    void apply(double t, const Eigen::Ref<const StateVector>& v, Eigen::Ref<StateVector> out) const;
    const Operator& static_part() const noexcept { return h_static_; }
    const ModulationSchedule& schedule() const noexcept { return schedule_; }

private:
    const Operator& generator(Target t) const;

    SystemParams params_;
    ModulationSchedule schedule_;
    Operator h_static_;
    Operator n_, pe_, coupling_, squeeze_;
};

Operator hamiltonian_at(const SystemParams& p, const ModulationSchedule& s, const OperatorSet& ops, double t);

// Rotating-wave Jaynes–Cummings Hamiltonian ω₀n̂ + Ω₀|e⟩⟨e| + g₀(âσ̂₊+â†σ̂₋).
Operator jaynes_cummings(const SystemParams& p, const OperatorSet& ops);

}  // namespace ncqed
