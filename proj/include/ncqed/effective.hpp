// effective.hpp: regime catalog and the analytic layer built on it
//
// Every effective Hamiltonian is written in the dressed interaction picture as
// Σ θ_j e^{i d_j t} |lower⟩⟨upper| + h.c., where d_j is the detuning of the driving
// tone from the dressed gap (zero on exact resonance).

#pragma once

#include "ncqed/evolve.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ncqed {

enum class RegimeKind { resonant, resonant_two_tone, ajc, anti_dce, anti_dce_two_tone, dce };
enum class ToneRole { primary, secondary };
enum class Channel { dephasing, atomic_damping, cavity_damping };

std::string_view to_string(RegimeKind k);
RegimeKind parse_regime(std::string_view s);
std::string_view to_string(Channel c);

struct RegimeSpec {
    RegimeKind kind{RegimeKind::resonant};
    int R{+1};   // resonant branch of the first tone
    int R2{+1};  // resonant branch of the second tone (two-tone resonant)
    int k{1};    // AJC order or Anti-DCE level

    static RegimeSpec resonant(int R) { return {RegimeKind::resonant, R, +1, 1}; }
    static RegimeSpec resonant_two_tone(int R, int R2) { return {RegimeKind::resonant_two_tone, R, R2, 1}; }
    static RegimeSpec ajc(int k = 1) { return {RegimeKind::ajc, +1, +1, k}; }
    static RegimeSpec anti_dce(int k) { return {RegimeKind::anti_dce, +1, +1, k}; }
    static RegimeSpec anti_dce_two_tone(int k) { return {RegimeKind::anti_dce_two_tone, +1, +1, k}; }
    static RegimeSpec dce() { return {RegimeKind::dce, +1, +1, 1}; }

    bool two_tone() const noexcept {
        return kind == RegimeKind::resonant_two_tone || kind == RegimeKind::anti_dce_two_tone;
    }
    bool dispersive() const noexcept { return kind != RegimeKind::resonant && kind != RegimeKind::resonant_two_tone; }
};

// Highest excitation number the regime couples from its reference state.
int active_excitations(const RegimeSpec& r);
// D = sign(Δ₋); throws for the resonant case Δ₋ = 0.
int detuning_symbol(const SystemParams& p);
// Throws InputError on violated invariants; returns warnings for marginal dispersion.
std::vector<std::string> validate(const RegimeSpec& r, const SystemParams& p);

double resonance_frequency(const SystemParams& p, const RegimeSpec& r, ToneRole role = ToneRole::primary);

// Tones must share one frequency.
cplx collective_depth(const SystemParams& p, const RegimeSpec& r, const std::vector<ModulationTone>& tones,
                      ToneRole role = ToneRole::primary);

struct EffectiveCoupling {
    cplx theta{};
    std::optional<cplx> theta2;
    std::vector<cplx> theta_m;  // DCE ladder, index m
    cplx upsilon{};
    std::optional<cplx> upsilon2;
    double eta{};
    std::optional<double> eta2;
};

// m_max bounds the DCE ladder (θ_m for m = 0..m_max).
EffectiveCoupling coupling_rate(const SystemParams& p, const RegimeSpec& r, cplx upsilon,
                                std::optional<cplx> upsilon2 = std::nullopt, int m_max = 0);

struct Transition {
    DressedLabel lower;
    DressedLabel upper;
    cplx theta;
    ToneRole role;
};

// The couplings the effective Hamiltonian keeps; throws InvalidTruncation if a level is missing.
std::vector<Transition> regime_transitions(const DressedBasis& basis, const RegimeSpec& r,
                                           const EffectiveCoupling& c);

struct ToneDetuning {
    double primary{0.0};
    double secondary{0.0};
};

PhasedOperator effective_hamiltonian(const DressedBasis& basis, const RegimeSpec& r, const EffectiveCoupling& c,
                                     ToneDetuning detuning = {});

struct RwaMargin {
    double min_offset;  // smallest |gap − η| over non-target level pairs
    double ratio;       // min_offset / |θ|
    DressedLabel lower;
    DressedLabel upper;
};

RwaMargin rwa_margin(const DressedBasis& basis, const RegimeSpec& r, const EffectiveCoupling& c, double eta);

// dA/dt = −q e^{iwt} B, dB/dt = −q e^{−iwt} A.
std::array<cplx, 2> pair_ode_solution(cplx q, double w, double t, cplx A0, cplx B0);
// Amplitudes of |lower⟩, |upper⟩ under θ e^{i d t}|lower⟩⟨upper| + h.c.
std::array<cplx, 2> pair_unitary_solution(cplx theta, double detuning, double t, cplx A0, cplx B0);
// Three-level chain θ|0⟩⟨1| + θ₂|1⟩⟨2| + h.c. from B₀ = 0.
std::array<cplx, 3> ladder3_unitary_solution(cplx theta, cplx theta2, double t, cplx A0, cplx C0);

struct SecondTone {
    double x;
    cplx theta2;
    double t_min;
};

std::array<SecondTone, 2> optimal_second_tone(cplx theta, double A0, double C0);

struct LabeledPopulation {
    DressedLabel label;
    double value;
};
using PopulationMap = std::vector<LabeledPopulation>;

// Asymptotic dressed populations for the printed (regime, channel) cases; nullopt otherwise.
std::optional<PopulationMap> steady_state_closed_form(const RegimeSpec& r, Channel ch, cplx theta,
                                                      const DissipationRates& rates, const SystemParams& p);

// Pairs of levels whose asymptotic populations coincide under pure dephasing
// (Anti-DCE regimes); empty when no relation is known.
std::vector<std::pair<DressedLabel, DressedLabel>> dephasing_relations(const RegimeSpec& r, int n_max);

struct RateGenerator {
    Eigen::MatrixXd matrix;  // dP/d(rate·t) = matrix · P
    std::vector<DressedLabel> labels;
};

// Population rate equations between dressed levels near the dispersive ladder
// (Anti-DCE analysis); time measured in units of 1/κ or 1/γ.
RateGenerator antidce_rate_equations(Channel ch, const SystemParams& p, int n_max);

struct FineTuneResult {
    double eta;
    double peak;
    bool ambiguous;
    int evaluations;
};

// Maximizes probe(η) over [center − half_window, center + half_window]: coarse scan then golden section.
FineTuneResult fine_tune_resonance(const std::function<double(double)>& probe, double center, double half_window,
                                   double tolerance, int coarse_points = 21);

// Largest admissible half-window around a guessed η.
double fine_tune_window_bound(const SystemParams& p, const ModulationSchedule& s);

}  // namespace ncqed
