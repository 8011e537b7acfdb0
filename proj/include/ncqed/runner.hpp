// runner.hpp: turns scenarios into trajectories, CSV files, sweeps and resonance tuning

#pragma once

#include "ncqed/scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ncqed {

struct ResolvedProblem {
    SystemParams params;
    std::shared_ptr<const DressedBasis> basis;
    EvolutionProblem problem;
    IntegratorOptions options;
    ModulationSchedule schedule;  // lab-frame tones
    std::optional<EffectiveCoupling> coupling;
};

ResolvedProblem resolve(const Scenario& s, Solver solver, int n_max);

struct RunResult {
    std::string scenario;
    Solver solver{Solver::effective_sme};
    int n_max{0};
    bool n_max_defaulted{true};
    SystemParams params;
    ModulationSchedule schedule;
    std::optional<EffectiveCoupling> coupling;
    std::vector<DressedLabel> level_labels;  // by dressed level index
    Trajectory trajectory;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
    double runtime_s{0.0};
    bool ok{true};
    std::string diagnostics;
};

// Runs one solver; grows a defaulted truncation until the top Fock level stays below 1e-6 (cap 40).
RunResult run_scenario(const Scenario& s, Solver solver);

// CSV text: '#' header lines, a column row, one row per sample.
std::string csv_text(const Scenario& s, const RunResult& r);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

struct DiffSummary {
    double max_mean_n{0.0};
    double max_p_e{0.0};
    double t_ns_mean_n{0.0};
};

DiffSummary compare_runs(const RunResult& a, const RunResult& b);

struct SweepRow {
    double value{0.0};
    double peak_mean_n{0.0};
    double peak_time_ns{0.0};
    std::string status;  // ok | diagnostic | error
    std::string message;
};

// Sets the scalar addressed by a JSON pointer to each value and runs the scenario (parallel).
// When out_dir is given, per-run CSVs and summary.csv are written there.
std::vector<SweepRow> run_sweep(const Scenario& base, const std::string& pointer, const std::vector<double>& values,
                                Solver solver, const std::optional<std::filesystem::path>& out_dir);
std::string sweep_summary_csv(const std::string& pointer, const std::vector<SweepRow>& rows);
Scenario with_value(const Scenario& base, const std::string& pointer, double value);

struct TuneReport {
    std::size_t tone{0};
    DressedLabel lower;
    DressedLabel upper;
    double eta_guess{0.0};
    double half_window{0.0};
    double theta{0.0};
    FineTuneResult result{};
    double gap{0.0};               // λ_upper − λ_lower
    double bs_factor{0.0};         // (η* − gap)/(2δ₊)
};

// Tunes one tone by maximizing the first transfer peak of its target transition in a
// dissipationless lab-frame probe that carries only that tone.
TuneReport tune_tone(const Scenario& s, std::size_t tone, std::optional<double> half_window_g0,
                     std::optional<double> horizon_ns = std::nullopt);

// Lab-frame probe: peak population of `upper` from the dressed state `lower` within `horizon`.
double lab_transfer_probe(const SystemParams& p, const ModulationTone& tone, DressedLabel lower, DressedLabel upper,
                          double horizon, int n_max);

}  // namespace ncqed
