#include "ncqed/runner.hpp"

#include "ncqed/errors.hpp"
#include "ncqed/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace ncqed {

using nlohmann::json;

namespace {

std::variant<std::monostate, PureState, DensityMatrix> initial_state(const Scenario& s, const HilbertSpace& space,
                                                                     const SystemParams& p) {
    switch (s.initial.kind) {
        case InitialSpec::Kind::zes: return PureState::basis(space, 0, Qubit::g);
        case InitialSpec::Kind::coherent: return coherent_state(space, s.initial.alpha);
        case InitialSpec::Kind::dressed: return dressed_vector(space, p, s.initial.label.n, s.initial.label.s);
    }
    return std::monostate{};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_c(cplx v) {
    std::ostringstream os;
    os << fmt(v.real()) << (v.imag() < 0 ? "-" : "+") << fmt(std::abs(v.imag())) << "i";
    return os.str();
}

int label_order(const DressedLabel& l) {
    if (l.s == Branch::top) return std::numeric_limits<int>::max();
    return 2 * l.n + (l.s == Branch::plus ? 1 : 0);
}

std::string column_name(const DressedLabel& l) {
    if (l.s == Branch::top) return "pop_top";
    return "pop_" + std::to_string(l.n) + (l.s == Branch::plus ? "p" : "m");
}

double max_abs(cplx c) { return std::abs(c); }

}  // namespace

ResolvedProblem resolve(const Scenario& s, Solver solver, int n_max) {
    ResolvedProblem rp;
    rp.params = system_params(s);
    const auto& p = rp.params;
    const HilbertSpace space = build_space(n_max);
    rp.basis = std::make_shared<const DressedBasis>(space, p);
    rp.schedule = build_schedule(s, p);

    auto& pr = rp.problem;
    pr.basis = rp.basis;
    pr.initial = initial_state(s, space, p);
    pr.dissipator = dissipator_of(solver);
    pr.rates = DissipationRates::from(p);
    pr.secular_cutoff = s.secular_cutoff_g0 * p.g0;
    pr.t_end = ns_to_internal(p, s.t_max_ns);
    pr.sample_times = uniform_samples(pr.t_end, static_cast<std::size_t>(s.samples));

    rp.options.tol = s.integrator.tol;
    rp.options.method = s.integrator.method;
    double fastest = 0.0;
    if (is_effective(solver)) {
        pr.frame = Frame::dressed_interaction;
        rp.coupling = scenario_coupling(s, p, std::max(0, n_max - 2));
        pr.effective_hamiltonian = effective_hamiltonian(*rp.basis, s.regime, *rp.coupling, effective_detuning(s, p));
        fastest = pr.effective_hamiltonian.max_frequency();
        for (const auto& t : pr.effective_hamiltonian.terms) fastest = std::max(fastest, 2.0 * t.op.cwiseAbs().maxCoeff());
    } else {
        pr.frame = Frame::lab;
        pr.schedule = rp.schedule;
        fastest = rp.schedule.max_frequency();
    }
    if (rp.options.method == Method::fixed_rk4)
        rp.options.fixed_step = 2.0 * M_PI / (s.integrator.steps_per_period * std::max(fastest, 1e-6));
    return rp;
}

RunResult run_scenario(const Scenario& s_in, Solver solver) {
    Scenario s = s_in;
    RunResult r;
    r.scenario = s.name;
    r.solver = solver;
    r.warnings = validate(s);

    const bool wants_tuning = std::any_of(s.tones.begin(), s.tones.end(), [](const ToneSpec& t) { return t.fine_tune; });
    if (wants_tuning && is_effective(solver)) {
        r.notes.push_back("fine_tune ignored: the effective model is exactly resonant");
    } else if (wants_tuning) {
        for (std::size_t i = 0; i < s.tones.size(); ++i) {
            if (!s.tones[i].fine_tune) continue;
            const TuneReport rep = tune_tone(s_in, i, std::nullopt);
            s.tones[i].frequency = FrequencySpec{FrequencySpec::Kind::g0, {}, {}, 0.0, 0.0, rep.result.eta};
            s.tones[i].fine_tune = false;
            r.notes.push_back("tone[" + std::to_string(i) + "] fine-tuned to eta = " + fmt(rep.result.eta) +
                              " g0 (gap + " + fmt(rep.bs_factor) + " x 2 delta_plus)" +
                              (rep.result.ambiguous ? ", ambiguous: maximum at window edge" : ""));
        }
    }

    r.n_max_defaulted = !s.n_max.has_value();
    int n_max = s.n_max.value_or(default_n_max(s));
    const auto start = std::chrono::steady_clock::now();
    while (true) {
        ResolvedProblem rp = resolve(s, solver, n_max);
        r.trajectory = integrate(rp.problem, rp.options);
        r.params = rp.params;
        r.schedule = rp.schedule;
        r.coupling = rp.coupling;
        r.level_labels.clear();
        for (const auto& lvl : rp.basis->levels()) r.level_labels.push_back(lvl.label);
        if (r.n_max_defaulted && r.trajectory.max_top_fock_pop() >= 1e-6 && n_max < 40) {
            n_max = std::min(40, n_max + 2);
            continue;
        }
        break;
    }
    r.n_max = n_max;
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::vector<std::string> problems;
    const auto& tr = r.trajectory;
    if (tr.failed) problems.push_back(tr.failure);
    if (tr.min_eigenvalue() < -1e-8) problems.push_back("min eigenvalue " + fmt(tr.min_eigenvalue()) + " < -1e-8");
    if (tr.max_top_fock_pop() >= 1e-6)
        problems.push_back("top Fock population " + fmt(tr.max_top_fock_pop()) + " >= 1e-6 at n_max = " +
                           std::to_string(n_max));
    r.ok = problems.empty();
    for (std::size_t i = 0; i < problems.size(); ++i) r.diagnostics += (i ? "; " : "") + problems[i];

    int highest = 0;
    for (const auto& rec : tr.records)
        for (Eigen::Index l = 0; l < rec.dressed_pops.size(); ++l)
            if (rec.dressed_pops(l) > 1e-4 && r.level_labels[static_cast<std::size_t>(l)].s != Branch::top)
                highest = std::max(highest, r.level_labels[static_cast<std::size_t>(l)].n);
    if (r.params.g0 * std::sqrt(static_cast<double>(highest)) > 0.2 * r.params.omega0)
        r.warnings.push_back("populated excitation " + std::to_string(highest) +
                             " exceeds the weak-coupling bound g0*sqrt(n) <= 0.2 omega0");
    return r;
}

std::string csv_text(const Scenario& s, const RunResult& r) {
    std::ostringstream os;
    const auto& p = r.params;
    os << "# ncqed scenario=" << s.name << " solver=" << to_string(r.solver) << "\n";
    os << "# omega0 = " << fmt(p.omega0) << " g0 = " << fmt(internal_to_ghz(p, p.omega0)) << " GHz (x 2pi)\n";
    os << "# Omega0 = " << fmt(p.Omega0) << " g0 = " << fmt(internal_to_ghz(p, p.Omega0)) << " GHz (x 2pi)\n";
    os << "# g0 = " << fmt(internal_to_ghz(p, p.g0)) << " GHz (x 2pi); delta_minus = " << fmt(p.delta_minus())
       << " g0\n";
    os << "# kappa = " << fmt(p.kappa) << " g0, gamma = " << fmt(p.gamma) << " g0, gamma_phi = " << fmt(p.gamma_phi)
       << " g0\n";
    for (std::size_t i = 0; i < r.schedule.tones.size(); ++i) {
        const auto& t = r.schedule.tones[i];
        os << "# tone[" << i << "] target=" << to_string(t.target) << " depth=" << fmt_c(t.depth)
           << " g0 eta=" << fmt(t.frequency) << " g0 = " << fmt(internal_to_ghz(p, t.frequency)) << " GHz (x 2pi)\n";
    }
    if (r.coupling) {
        os << "# theta = " << fmt_c(r.coupling->theta) << " g0, |theta| = " << fmt(max_abs(r.coupling->theta))
           << " g0";
        if (r.coupling->theta2) os << ", theta2 = " << fmt_c(*r.coupling->theta2) << " g0";
        os << "\n";
    }
    os << "# n_max = " << r.n_max << (r.n_max_defaulted ? " (default)" : " (given)") << "\n";
    os << "# diagnostics: " << (r.ok ? "ok" : r.diagnostics) << "\n";
    for (const auto& w : r.warnings) os << "# warning: " << w << "\n";
    for (const auto& n : r.notes) os << "# note: " << n << "\n";

    std::vector<std::size_t> order(r.level_labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return label_order(r.level_labels[a]) < label_order(r.level_labels[b]);
    });
    os << "t_ns,mean_n,mandel_q,p_e,trace_err,min_eig";
    for (auto i : order) os << "," << column_name(r.level_labels[i]);
    os << ",purity,top_fock_pop\n";
    const auto& tr = r.trajectory;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const auto& rec = tr.records[k];
        os << fmt(internal_to_ns(p, tr.times[k])) << "," << fmt(rec.mean_n) << ","
           << (rec.mandel_q ? fmt(*rec.mandel_q) : "") << "," << fmt(rec.p_e) << "," << fmt(rec.trace_err) << ","
           << fmt(rec.min_eig);
        for (auto i : order) os << "," << fmt(rec.dressed_pops(static_cast<Eigen::Index>(i)));
        os << "," << fmt(rec.purity) << "," << fmt(rec.top_fock_pop) << "\n";
    }
    return os.str();
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." +
           std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

DiffSummary compare_runs(const RunResult& a, const RunResult& b) {
    const auto& ta = a.trajectory;
    const auto& tb = b.trajectory;
    if (ta.times.size() != tb.times.size()) throw InputError("compare_runs: sample grids differ");
    DiffSummary d;
    for (std::size_t i = 0; i < ta.times.size(); ++i) {
        const double dn = std::abs(ta.records[i].mean_n - tb.records[i].mean_n);
        if (dn > d.max_mean_n) {
            d.max_mean_n = dn;
            d.t_ns_mean_n = internal_to_ns(a.params, ta.times[i]);
        }
        d.max_p_e = std::max(d.max_p_e, std::abs(ta.records[i].p_e - tb.records[i].p_e));
    }
    return d;
}

Scenario with_value(const Scenario& base, const std::string& pointer, double value) {
    json j = scenario_to_json(base);
    json::json_pointer ptr;
    try {
        ptr = json::json_pointer(pointer);
    } catch (const json::exception& e) {
        throw InputError("axis '" + pointer + "': " + e.what());
    }
    if (!j.contains(ptr)) throw InputError("axis '" + pointer + "': no such field");
    json& slot = j[ptr];
    if (!slot.is_number()) throw InputError("axis '" + pointer + "': does not address a scalar");
    if (slot.is_number_integer()) {
        if (value != std::floor(value)) throw InputError("axis '" + pointer + "': integer field");
        slot = static_cast<long long>(value);
    } else {
        slot = value;
    }
    Scenario s = scenario_from_json(j);
    validate(s);
    return s;
}

std::vector<SweepRow> run_sweep(const Scenario& base, const std::string& pointer, const std::vector<double>& values,
                                Solver solver, const std::optional<std::filesystem::path>& out_dir) {
    std::vector<SweepRow> rows(values.size());
    if (!values.empty()) with_value(base, pointer, values.front());  // axis errors abort the sweep
    parallel_for(values.size(), [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.value = values[i];
        try {
            Scenario s = with_value(base, pointer, values[i]);
            s.name = base.name + "_" + std::to_string(i);
            const RunResult r = run_scenario(s, solver);
            const auto& tr = r.trajectory;
            for (std::size_t k = 0; k < tr.times.size(); ++k) {
                if (tr.records[k].mean_n > row.peak_mean_n) {
                    row.peak_mean_n = tr.records[k].mean_n;
                    row.peak_time_ns = internal_to_ns(r.params, tr.times[k]);
                }
            }
            row.status = r.ok ? "ok" : "diagnostic";
            row.message = r.diagnostics;
            if (out_dir) write_text_atomic(*out_dir / ("run_" + std::to_string(i) + ".csv"), csv_text(s, r));
        } catch (const std::exception& e) {
            row.status = "error";
            row.message = e.what();
        }
    });
    if (out_dir) write_text_atomic(*out_dir / "summary.csv", sweep_summary_csv(pointer, rows));
    return rows;
}

std::string sweep_summary_csv(const std::string& pointer, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "# axis = " << pointer << "\n";
    os << "value,peak_mean_n,peak_time_ns,status,message\n";
    for (const auto& r : rows) {
        std::string msg = r.message;
        std::replace(msg.begin(), msg.end(), '"', '\'');
        os << fmt(r.value) << "," << fmt(r.peak_mean_n) << "," << fmt(r.peak_time_ns) << "," << r.status << ",\""
           << msg << "\"\n";
    }
    return os.str();
}

double lab_transfer_probe(const SystemParams& p, const ModulationTone& tone, DressedLabel lower, DressedLabel upper,
                          double horizon, int n_max) {
    const HilbertSpace space = build_space(n_max);
    auto basis = std::make_shared<const DressedBasis>(space, p);
    EvolutionProblem pr;
    pr.basis = basis;
    pr.initial = dressed_vector(space, p, lower.n, lower.s);
    pr.frame = Frame::lab;
    pr.schedule.tones = {tone};
    pr.t_end = horizon;
    pr.sample_times = uniform_samples(horizon, 801);
    IntegratorOptions opt;
    opt.tol = {1e-7, 1e-9};
    const Trajectory tr = integrate(pr, opt);
    const Eigen::Index idx = basis->index_of(upper);
    double peak = 0.0;
    for (const auto& rec : tr.records) peak = std::max(peak, rec.dressed_pops(idx));
    return peak;
}

TuneReport tune_tone(const Scenario& s, std::size_t tone, std::optional<double> half_window_g0,
                     std::optional<double> horizon_ns) {
    if (tone >= s.tones.size()) throw InputError("tune: tone index " + std::to_string(tone) + " out of range");
    const SystemParams p = system_params(s);
    const ToneSpec& spec = s.tones[tone];
    const int n_basis = default_n_max(s);
    const DressedBasis basis(build_space(n_basis), p);
    const EffectiveCoupling c = scenario_coupling(s, p, std::max(0, n_basis - 2));
    const auto transitions = regime_transitions(basis, s.regime, c);
    const auto it = std::find_if(transitions.begin(), transitions.end(),
                                 [&](const Transition& t) { return t.role == spec.role; });
    if (it == transitions.end()) throw InputError("tune: no transition for the tone's role");

    TuneReport rep;
    rep.tone = tone;
    rep.lower = it->lower;
    rep.upper = it->upper;
    rep.theta = std::abs(it->theta);
    if (rep.theta == 0.0) throw InputError("tune: the tone does not drive its transition (theta = 0)");
    const ModulationTone base{spec.target, tone_depth(spec, p), tone_frequency(spec, p, s.regime)};
    rep.eta_guess = base.frequency;
    ModulationSchedule single;
    single.tones = {base};
    const double bound = fine_tune_window_bound(p, single);
    const double bs = p.g0 * p.g0 / p.delta_plus();
    rep.half_window = half_window_g0 ? *half_window_g0 * p.g0 : std::min(bound, 4.0 * bs + 5.0 * rep.theta);
    if (rep.half_window > bound * (1.0 + 1e-12))
        throw InputError("tune: window exceeds the admissible " + fmt(bound) + " g0 around the guess");
    const double horizon = horizon_ns ? ns_to_internal(p, *horizon_ns) : 1.5 * M_PI / (2.0 * rep.theta);
    const int n_probe = std::max(rep.upper.n, rep.lower.n) + 2;
    auto probe = [&](double eta) {
        ModulationTone t = base;
        t.frequency = eta;
        return lab_transfer_probe(p, t, rep.lower, rep.upper, horizon, n_probe);
    };
    const int points = std::clamp(static_cast<int>(std::ceil(2.0 * rep.half_window / (0.5 * rep.theta))) + 1, 21, 2001);
    rep.result = fine_tune_resonance(probe, rep.eta_guess, rep.half_window, rep.theta / 10.0, points);
    rep.gap = dressed_energy(p, rep.upper.n, rep.upper.s) - dressed_energy(p, rep.lower.n, rep.lower.s);
    rep.bs_factor = (rep.result.eta - rep.gap) / (2.0 * bs);
    return rep;
}

}  // namespace ncqed
