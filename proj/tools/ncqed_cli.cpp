// ncqed: command-line front end: run, preset, sweep, tune

#include "ncqed/errors.hpp"
#include "ncqed/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace ncqed;

namespace {

constexpr int kOk = 0;
constexpr int kPhysics = 1;
constexpr int kInput = 2;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string file_tag(Solver s) {
    std::string t(to_string(s));
    std::replace(t.begin(), t.end(), '+', '_');
    return t;
}

std::filesystem::path output_for(const Scenario& s, Solver solver, const std::string& out, bool several) {
    if (out.empty()) return s.name + "_" + file_tag(solver) + ".csv";
    std::filesystem::path p(out);
    if (!several) return p;
    return p.parent_path() / (p.stem().string() + "_" + file_tag(solver) + p.extension().string());
}

int cmd_run(const std::string& source, const std::string& solver_list, const std::string& out) {
    Scenario s = load_scenario(source);
    if (!solver_list.empty()) {
        s.solvers.clear();
        for (const auto& name : split(solver_list, ',')) s.solvers.push_back(parse_solver(name));
        validate(s);
    }
    const bool several = s.solvers.size() > 1;
    std::vector<RunResult> results;
    bool ok = true;
    for (Solver solver : s.solvers) {
        RunResult r = run_scenario(s, solver);
        const auto path = output_for(s, solver, out, several);
        write_text_atomic(path, csv_text(s, r));
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << "wrote " << path.string() << " (solver " << to_string(solver) << ", n_max " << r.n_max << ", "
                  << r.trajectory.steps << " steps, " << r.runtime_s << " s, diagnostics "
                  << (r.ok ? "ok" : r.diagnostics) << ")\n";
        ok = ok && r.ok;
        results.push_back(std::move(r));
    }
    // Pair the SME and DPME runs of the same tier.
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t j = 0; j < results.size(); ++j) {
            const Solver a = results[i].solver, b = results[j].solver;
            if (dissipator_of(a) != DissipatorKind::sme || dissipator_of(b) != DissipatorKind::dpme ||
                is_effective(a) != is_effective(b))
                continue;
            const DiffSummary d = compare_runs(results[i], results[j]);
            std::ostringstream os;
            os << "# " << to_string(a) << " vs " << to_string(b) << "\n"
               << "max_abs_diff_mean_n," << d.max_mean_n << "\n"
               << "time_ns_of_max_mean_n_diff," << d.t_ns_mean_n << "\n"
               << "max_abs_diff_p_e," << d.max_p_e << "\n";
            const auto base = output_for(s, a, out, true);
            const auto path = base.parent_path() / (s.name + "_" + (is_effective(a) ? "effective_" : "") + "diff.txt");
            write_text_atomic(out.empty() ? path : std::filesystem::path(out).parent_path() / path.filename(), os.str());
            std::cout << to_string(a) << " vs " << to_string(b) << ": max |d<n>| = " << d.max_mean_n
                      << ", max |dP_e| = " << d.max_p_e << "\n";
        }
    }
    return ok ? kOk : kPhysics;
}

int cmd_preset(const std::string& name, const std::string& out) {
    const std::string text = serialize_scenario(preset(name));
    if (out.empty()) std::cout << text;
    else write_text_atomic(out, text);
    return kOk;
}

int cmd_sweep(const std::string& source, const std::string& axis, const std::string& values_text,
              const std::string& solver_name, const std::string& out_dir) {
    const Scenario s = load_scenario(source);
    const Solver solver = solver_name.empty() ? s.solvers.front() : parse_solver(solver_name);
    std::vector<double> values;
    for (const auto& v : split(values_text, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(v, &used));
            if (used != v.size()) throw std::invalid_argument(v);
        } catch (const std::exception&) {
            throw InputError("--values: '" + v + "' is not a number");
        }
    }
    std::optional<std::filesystem::path> dir;
    if (!out_dir.empty()) dir = out_dir;
    const auto rows = run_sweep(s, axis, values, solver, dir);
    std::cout << sweep_summary_csv(axis, rows);
    return kOk;
}

int cmd_tune(const std::string& source, std::optional<double> window, std::size_t tone, std::optional<double> horizon) {
    const Scenario s = load_scenario(source);
    const TuneReport rep = tune_tone(s, tone, window, horizon);
    const SystemParams p = system_params(s);
    std::cout << "tone " << rep.tone << " transition " << rep.lower.str() << " -> " << rep.upper.str() << "\n"
              << "theta = " << rep.theta << " g0\n"
              << "eta_guess = " << rep.eta_guess << " g0\n"
              << "eta_tuned = " << rep.result.eta << " g0 = " << internal_to_ghz(p, rep.result.eta) << " GHz (x 2pi)\n"
              << "peak_transfer = " << rep.result.peak << "\n"
              << "gap_correction = " << rep.bs_factor << " x 2 delta_plus\n"
              << "probe_evaluations = " << rep.result.evaluations << "\n";
    if (rep.result.ambiguous) {
        std::cout << "ambiguous: maximum at the edge of the search window\n";
        return kPhysics;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative nonstationary circuit QED simulator"};
    app.require_subcommand(1);

    std::string source, solver, out, axis, values, out_dir, name;
    double window = 0.0, horizon = 0.0;
    std::size_t tone = 0;

    auto* run = app.add_subcommand("run", "Run a scenario file or preset and write CSV");
    run->add_option("scenario", source, "Scenario file or preset name")->required();
    run->add_option("--solver", solver, "Comma-separated solvers overriding the scenario");
    run->add_option("--out", out, "Output CSV path");

    auto* pre = app.add_subcommand("preset", "Print a figure preset as a scenario file");
    pre->add_option("name", name, "fig1a, fig1b, fig2a, fig2b, fig3a or fig3b")->required();
    pre->add_option("--out", out, "Write to this path instead of stdout");

    auto* sw = app.add_subcommand("sweep", "Run a scenario across values of one scalar field");
    sw->add_option("scenario", source, "Scenario file or preset name")->required();
    sw->add_option("--axis", axis, "JSON pointer of the swept field, e.g. /params/kappa_g0")->required();
    sw->add_option("--values", values, "Comma-separated values")->required();
    sw->add_option("--solver", solver, "Solver (default: first in the scenario)");
    sw->add_option("--out-dir", out_dir, "Directory for per-run CSVs and summary.csv");

    auto* tu = app.add_subcommand("tune", "Fine-tune a tone frequency with lab-frame probe runs");
    tu->add_option("scenario", source, "Scenario file or preset name")->required();
    auto* win = tu->add_option("--window", window, "Half-width of the search window in g0 units");
    tu->add_option("--tone", tone, "Tone index (default 0)");
    auto* hor = tu->add_option("--horizon-ns", horizon, "Probe duration in ns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*run) return cmd_run(source, solver, out);
        if (*pre) return cmd_preset(name, out);
        if (*sw) return cmd_sweep(source, axis, values, solver, out_dir);
        if (*tu)
            return cmd_tune(source, win->count() ? std::optional<double>(window) : std::nullopt, tone,
                            hor->count() ? std::optional<double>(horizon) : std::nullopt);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const PhysicsError& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return kPhysics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPhysics;
    }
    return kInput;
}
