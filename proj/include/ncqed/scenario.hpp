// scenario.hpp: scenario files, figure presets and their resolution into internal units
//
// Scenario files are JSON objects carrying "schema_version": 1. Internal units take g0 = 1;
// times are given in ns or us and frequencies in g0 units, rad/s, or by reference to the
// regime's resonance formula or a dressed-level gap.

#pragma once

#include "ncqed/effective.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ncqed {

inline constexpr int kSchemaVersion = 1;

struct FrequencySpec {
    enum class Kind { formula, gap, rad_s, g0 };
    Kind kind{Kind::formula};
    DressedLabel from{0, Branch::minus};
    DressedLabel to{2, Branch::plus};
    double bs_factor{0.0};  // adds bs_factor·2δ₊ to a gap
    double offset_g0{0.0};  // added to formula and gap frequencies
    double value{0.0};      // literal frequency
};

struct DepthSpec {
    enum class Kind { relative, g0 };
    Kind kind{Kind::relative};  // relative: fraction of the target's bare value
    double value{0.0};
    double phase{0.0};  // rad
};

struct ToneSpec {
    Target target{Target::Omega};
    DepthSpec depth;
    FrequencySpec frequency;
    ToneRole role{ToneRole::primary};
    bool fine_tune{false};
};

struct InitialSpec {
    enum class Kind { zes, coherent, dressed };
    Kind kind{Kind::zes};
    cplx alpha{0.0};
    DressedLabel label{0, Branch::minus};
};

enum class Solver { unitary, sme, dpme, effective, effective_sme, effective_dpme };

std::string_view to_string(Solver s);
Solver parse_solver(std::string_view s);
bool is_effective(Solver s);
DissipatorKind dissipator_of(Solver s);

struct IntegratorSpec {
    Method method{Method::adaptive};
    double steps_per_period{200.0};  // fixed_rk4 step = 2π/(steps_per_period·η_max)
    Tolerances tol;
};

struct Scenario {
    std::string name{"scenario"};
    double omega0_ghz{8.0};
    double g0_over_omega0{0.05};
    double delta_minus_g0{0.0};
    double kappa_g0{0.0};
    double gamma_g0{0.0};
    double gamma_phi_g0{0.0};

    RegimeSpec regime;
    std::vector<ToneSpec> tones;
    InitialSpec initial;
    std::vector<Solver> solvers{Solver::effective_sme};
    double t_max_ns{500.0};
    int samples{1001};
    std::optional<int> n_max;
    double secular_cutoff_g0{std::numeric_limits<double>::infinity()};
    IntegratorSpec integrator;
};

// Resolved physical parameters in internal units (g0 = 1).
SystemParams system_params(const Scenario& s);
double ns_to_internal(const SystemParams& p, double ns);
double internal_to_ns(const SystemParams& p, double t);
double internal_to_ghz(const SystemParams& p, double w);  // angular frequency → GHz (w/2π)

double tone_frequency(const ToneSpec& tone, const SystemParams& p, const RegimeSpec& r);
cplx tone_depth(const ToneSpec& tone, const SystemParams& p);
ModulationSchedule build_schedule(const Scenario& s, const SystemParams& p);
// Detuning of the tones of each role from exact resonance in the effective model.
ToneDetuning effective_detuning(const Scenario& s, const SystemParams& p);
EffectiveCoupling scenario_coupling(const Scenario& s, const SystemParams& p, int m_max);

// Truncation rule: regime excitations plus margin, enlarged for the initial state.
int default_n_max(const Scenario& s);
int initial_excitations(const Scenario& s);

// Throws InputError naming the offending field; returns warnings.
std::vector<std::string> validate(const Scenario& s);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);

std::vector<std::string> preset_names();
Scenario preset(const std::string& name);
bool is_preset(const std::string& name);

DressedLabel parse_label(std::string_view s);

}  // namespace ncqed
