#include "ncqed/scenario.hpp"

#include "ncqed/errors.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ncqed {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
    throw InputError(path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) field_error(path, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key)) field_error(path + "." + key, "unknown field");
}

double get_number(const json& j, const std::string& key, const std::string& path, std::optional<double> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        field_error(path + "." + key, "missing");
    }
    const auto& v = j.at(key);
    if (!v.is_number()) field_error(path + "." + key, "expected a number");
    return v.get<double>();
}

std::string get_string(const json& j, const std::string& key, const std::string& path,
                       std::optional<std::string> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        field_error(path + "." + key, "missing");
    }
    const auto& v = j.at(key);
    if (!v.is_string()) field_error(path + "." + key, "expected a string");
    return v.get<std::string>();
}

int parse_sign(const json& v, const std::string& path) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "+") return 1;
        if (s == "-") return -1;
    } else if (v.is_number_integer()) {
        const int s = v.get<int>();
        if (s == 1 || s == -1) return s;
    }
    field_error(path, "expected \"+\" or \"-\"");
}

std::string sign_str(int s) { return s > 0 ? "+" : "-"; }

std::string role_str(ToneRole r) { return r == ToneRole::primary ? "primary" : "secondary"; }

ToneRole parse_role(const std::string& s, const std::string& path) {
    if (s == "primary") return ToneRole::primary;
    if (s == "secondary") return ToneRole::secondary;
    field_error(path, "expected \"primary\" or \"secondary\"");
}

double poisson(double mean, int n) {
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

std::string_view to_string(Solver s) {
    switch (s) {
        case Solver::unitary: return "unitary";
        case Solver::sme: return "sme";
        case Solver::dpme: return "dpme";
        case Solver::effective: return "effective";
        case Solver::effective_sme: return "effective+sme";
        case Solver::effective_dpme: return "effective+dpme";
    }
    return "?";
}

Solver parse_solver(std::string_view s) {
    for (auto v : {Solver::unitary, Solver::sme, Solver::dpme, Solver::effective, Solver::effective_sme,
                   Solver::effective_dpme})
        if (to_string(v) == s) return v;
    throw InputError("solver: unknown solver '" + std::string(s) +
                     "' (expected unitary, sme, dpme, effective, effective+sme or effective+dpme)");
}

bool is_effective(Solver s) {
    return s == Solver::effective || s == Solver::effective_sme || s == Solver::effective_dpme;
}

DissipatorKind dissipator_of(Solver s) {
    switch (s) {
        case Solver::sme:
        case Solver::effective_sme: return DissipatorKind::sme;
        case Solver::dpme:
        case Solver::effective_dpme: return DissipatorKind::dpme;
        default: return DissipatorKind::none;
    }
}

DressedLabel parse_label(std::string_view s) {
    if (s == "top") return {0, Branch::top};
    if (s.size() < 2 || (s.back() != '+' && s.back() != '-'))
        throw InputError("dressed label '" + std::string(s) + "': expected <n>+ or <n>-");
    int n = 0;
    for (char c : s.substr(0, s.size() - 1)) {
        if (c < '0' || c > '9') throw InputError("dressed label '" + std::string(s) + "': bad excitation number");
        n = 10 * n + (c - '0');
    }
    const Branch b = s.back() == '+' ? Branch::plus : Branch::minus;
    if (n == 0 && b == Branch::plus) throw InputError("dressed label '0+': no such state");
    return {n, b};
}

SystemParams system_params(const Scenario& s) {
    SystemParams p;
    p.g0 = 1.0;
    p.omega0 = 1.0 / s.g0_over_omega0;
    p.Omega0 = p.omega0 - s.delta_minus_g0;
    p.kappa = s.kappa_g0;
    p.gamma = s.gamma_g0;
    p.gamma_phi = s.gamma_phi_g0;
    p.unit_rad_s = 2.0 * M_PI * s.omega0_ghz * 1e9 * s.g0_over_omega0;
    return p;
}

double ns_to_internal(const SystemParams& p, double ns) { return ns * 1e-9 * p.unit_rad_s; }
double internal_to_ns(const SystemParams& p, double t) { return t / p.unit_rad_s * 1e9; }
double internal_to_ghz(const SystemParams& p, double w) { return w * p.unit_rad_s / (2.0 * M_PI) * 1e-9; }

double tone_frequency(const ToneSpec& tone, const SystemParams& p, const RegimeSpec& r) {
    const auto& f = tone.frequency;
    switch (f.kind) {
        case FrequencySpec::Kind::formula:
            return resonance_frequency(p, r, tone.role) + f.offset_g0 * p.g0;
        case FrequencySpec::Kind::gap: {
            const double gap = dressed_energy(p, f.to.n, f.to.s) - dressed_energy(p, f.from.n, f.from.s);
            return gap + f.bs_factor * 2.0 * p.g0 * p.g0 / p.delta_plus() + f.offset_g0 * p.g0;
        }
        case FrequencySpec::Kind::rad_s:
            return f.value / p.unit_rad_s;
        case FrequencySpec::Kind::g0:
            return f.value * p.g0;
    }
    return 0.0;
}

cplx tone_depth(const ToneSpec& tone, const SystemParams& p) {
    const double mag = tone.depth.kind == DepthSpec::Kind::relative ? tone.depth.value * p.bare(tone.target)
                                                                     : tone.depth.value * p.g0;
    return std::polar(mag, tone.depth.phase);
}

ModulationSchedule build_schedule(const Scenario& s, const SystemParams& p) {
    ModulationSchedule sched;
    for (const auto& t : s.tones) sched.tones.push_back({t.target, tone_depth(t, p), tone_frequency(t, p, s.regime)});
    return sched;
}

ToneDetuning effective_detuning(const Scenario& s, const SystemParams& p) {
    ToneDetuning d;
    bool seen[2] = {false, false};
    for (const auto& t : s.tones) {
        const int idx = t.role == ToneRole::primary ? 0 : 1;
        if (seen[idx]) continue;
        seen[idx] = true;
        double value = 0.0;
        // Formula and gap references denote the resonance itself; the effective model has no
        // intrinsic shifts, so only the explicit offset detunes them.
        if (t.frequency.kind == FrequencySpec::Kind::formula || t.frequency.kind == FrequencySpec::Kind::gap)
            value = t.frequency.offset_g0 * p.g0;
        else
            value = tone_frequency(t, p, s.regime) - resonance_frequency(p, s.regime, t.role);
        (idx == 0 ? d.primary : d.secondary) = value;
    }
    return d;
}

EffectiveCoupling scenario_coupling(const Scenario& s, const SystemParams& p, int m_max) {
    std::vector<ModulationTone> prim, sec;
    for (const auto& t : s.tones) {
        // Every tone of one role is evaluated at that role's first frequency.
        ModulationTone m{t.target, tone_depth(t, p), 0.0};
        (t.role == ToneRole::primary ? prim : sec).push_back(m);
    }
    const cplx u1 = collective_depth(p, s.regime, prim, ToneRole::primary);
    std::optional<cplx> u2;
    if (s.regime.two_tone()) u2 = collective_depth(p, s.regime, sec, ToneRole::secondary);
    return coupling_rate(p, s.regime, u1, u2, m_max);
}

int initial_excitations(const Scenario& s) {
    switch (s.initial.kind) {
        case InitialSpec::Kind::zes: return 0;
        case InitialSpec::Kind::dressed: return s.initial.label.n;
        case InitialSpec::Kind::coherent: {
            const double mean = std::norm(s.initial.alpha);
            double tail = 1.0;
            for (int n = 0; n < 1000; ++n) {
                tail -= poisson(mean, n);
                if (tail < 1e-4) return n;
            }
            return 1000;
        }
    }
    return 0;
}

int default_n_max(const Scenario& s) {
    const auto& r = s.regime;
    int n = 4;
    switch (r.kind) {
        case RegimeKind::resonant: n = 4; break;
        case RegimeKind::resonant_two_tone: n = 6; break;
        case RegimeKind::ajc: n = r.k + 3; break;
        case RegimeKind::anti_dce:
        case RegimeKind::anti_dce_two_tone: n = r.k + 2; break;
        case RegimeKind::dce: n = 20; break;
    }
    if (s.initial.kind == InitialSpec::Kind::dressed) n = std::max(n, s.initial.label.n + 2);
    if (s.initial.kind == InitialSpec::Kind::coherent) {
        const double mean = std::norm(s.initial.alpha);
        n = std::max(n, static_cast<int>(std::ceil(4.0 * mean)));
        while (n < 40 && poisson(mean, n) >= 1e-6) ++n;
    }
    return std::max(n, 2);
}

std::vector<std::string> validate(const Scenario& s) {
    if (!(s.omega0_ghz > 0.0)) field_error("params.omega0_ghz", "must be positive");
    if (!(s.g0_over_omega0 > 0.0)) field_error("params.g0_over_omega0", "must be positive");
    if (!(s.t_max_ns > 0.0)) field_error("t_max", "must be positive");
    if (s.samples < 2) field_error("samples", "need at least 2");
    if (s.solvers.empty()) field_error("solver", "at least one solver required");
    if (s.n_max && (*s.n_max < 2 || *s.n_max > 200)) field_error("n_max", "must lie in [2, 200]");
    if (!(s.secular_cutoff_g0 > 0.0)) field_error("secular_cutoff_g0", "must be positive");
    if (s.integrator.method == Method::fixed_rk4 && !(s.integrator.steps_per_period >= 50.0))
        field_error("integrator.steps_per_period", "must be at least 50");
    if (s.initial.kind == InitialSpec::Kind::dressed && s.initial.label.s == Branch::top)
        field_error("initial.label", "the truncation level cannot be an initial state");

    const SystemParams p = system_params(s);
    const int n_max = s.n_max.value_or(default_n_max(s));
    const int n_active = std::max(active_excitations(s.regime), initial_excitations(s));
    std::vector<std::string> warnings = validate(p, n_active);
    for (auto& w : validate(s.regime, p)) warnings.push_back(std::move(w));

    if (s.tones.empty()) field_error("tones", "at least one tone required");
    int roles[2] = {0, 0};
    for (std::size_t i = 0; i < s.tones.size(); ++i) {
        const auto& t = s.tones[i];
        const std::string path = "tones[" + std::to_string(i) + "]";
        if (t.role == ToneRole::secondary && !s.regime.two_tone())
            field_error(path + ".role", "single-tone regime has no secondary tone");
        ++roles[t.role == ToneRole::primary ? 0 : 1];
        if (t.frequency.kind == FrequencySpec::Kind::gap) {
            for (const auto& l : {t.frequency.from, t.frequency.to})
                if (l.s == Branch::top || l.n > n_max)
                    field_error(path + ".frequency.gap", "level " + l.str() + " outside the truncation");
        }
        if (t.depth.kind == DepthSpec::Kind::relative && t.target == Target::chi)
            field_error(path + ".depth", "chi has zero bare value; give the depth in g0 units");
    }
    if (roles[0] == 0) field_error("tones", "no primary tone");
    if (s.regime.two_tone() && roles[1] == 0) field_error("tones", "two-tone regime needs a secondary tone");

    const ModulationSchedule sched = build_schedule(s, p);
    validate(sched, p, n_max);
    const bool any_effective =
        std::any_of(s.solvers.begin(), s.solvers.end(), [](Solver v) { return is_effective(v); });
    if (any_effective) {
        for (auto role : {ToneRole::primary, ToneRole::secondary}) {
            std::optional<double> f0;
            for (std::size_t i = 0; i < s.tones.size(); ++i) {
                if (s.tones[i].role != role) continue;
                const double f = sched.tones[i].frequency;
                if (!f0) f0 = f;
                else if (std::abs(f - *f0) > 1e-9 * std::abs(*f0))
                    field_error("tones[" + std::to_string(i) + "].frequency",
                                "tones sharing a role must share one frequency for effective solvers");
            }
        }
    }
    if (s.initial.kind == InitialSpec::Kind::dressed && s.initial.label.n > n_max)
        field_error("initial.label", "level outside the truncation");
    if (s.initial.kind == InitialSpec::Kind::coherent && std::norm(s.initial.alpha) > n_max / 4.0)
        field_error("n_max", "too small for the coherent initial state; need at least " +
                                 std::to_string(static_cast<int>(std::ceil(4.0 * std::norm(s.initial.alpha)))));
    return warnings;
}

Scenario scenario_from_json(const json& j) {
    check_keys(j, "scenario", {"schema_version", "name", "params", "regime", "tones", "initial", "solver", "frame",
                               "t_max", "samples", "n_max", "secular_cutoff_g0", "integrator"});
    if (!j.contains("schema_version")) field_error("schema_version", "missing");
    if (!j.at("schema_version").is_number_integer() || j.at("schema_version").get<int>() != kSchemaVersion)
        field_error("schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");
    Scenario s;
    s.name = get_string(j, "name", "scenario", std::string("scenario"));

    if (!j.contains("params")) field_error("params", "missing");
    const auto& pj = j.at("params");
    check_keys(pj, "params",
               {"omega0_ghz", "g0_over_omega0", "delta_minus_g0", "kappa_g0", "gamma_g0", "gamma_phi_g0"});
    s.omega0_ghz = get_number(pj, "omega0_ghz", "params");
    s.g0_over_omega0 = get_number(pj, "g0_over_omega0", "params");
    s.delta_minus_g0 = get_number(pj, "delta_minus_g0", "params", 0.0);
    s.kappa_g0 = get_number(pj, "kappa_g0", "params", 0.0);
    s.gamma_g0 = get_number(pj, "gamma_g0", "params", 0.0);
    s.gamma_phi_g0 = get_number(pj, "gamma_phi_g0", "params", 0.0);

    if (!j.contains("regime")) field_error("regime", "missing");
    const auto& rj = j.at("regime");
    check_keys(rj, "regime", {"kind", "R", "R2", "k"});
    s.regime.kind = parse_regime(get_string(rj, "kind", "regime"));
    s.regime.R = rj.contains("R") ? parse_sign(rj.at("R"), "regime.R") : 1;
    s.regime.R2 = rj.contains("R2") ? parse_sign(rj.at("R2"), "regime.R2") : 1;
    if (rj.contains("k")) {
        if (!rj.at("k").is_number_integer()) field_error("regime.k", "expected an integer");
        s.regime.k = rj.at("k").get<int>();
    }

    if (!j.contains("tones") || !j.at("tones").is_array()) field_error("tones", "expected an array");
    for (std::size_t i = 0; i < j.at("tones").size(); ++i) {
        const auto& tj = j.at("tones")[i];
        const std::string path = "tones[" + std::to_string(i) + "]";
        check_keys(tj, path, {"target", "depth", "phase_rad", "frequency", "role", "fine_tune"});
        ToneSpec t;
        try {
            t.target = parse_target(get_string(tj, "target", path));
        } catch (const InputError& e) {
            field_error(path + ".target", e.what());
        }
        if (!tj.contains("depth")) field_error(path + ".depth", "missing");
        const auto& dj = tj.at("depth");
        check_keys(dj, path + ".depth", {"relative", "g0"});
        if (dj.size() != 1) field_error(path + ".depth", "give exactly one of relative, g0");
        if (dj.contains("relative")) {
            t.depth.kind = DepthSpec::Kind::relative;
            t.depth.value = get_number(dj, "relative", path + ".depth");
        } else {
            t.depth.kind = DepthSpec::Kind::g0;
            t.depth.value = get_number(dj, "g0", path + ".depth");
        }
        t.depth.phase = get_number(tj, "phase_rad", path, 0.0);
        if (!tj.contains("frequency")) field_error(path + ".frequency", "missing");
        const auto& fj = tj.at("frequency");
        const std::string fpath = path + ".frequency";
        check_keys(fj, fpath, {"formula", "gap", "bs_factor", "offset_g0", "rad_s", "g0"});
        const int kinds = int(fj.contains("formula")) + int(fj.contains("gap")) + int(fj.contains("rad_s")) +
                          int(fj.contains("g0"));
        if (kinds != 1) field_error(fpath, "give exactly one of formula, gap, rad_s, g0");
        if (fj.contains("formula")) {
            t.frequency.kind = FrequencySpec::Kind::formula;
            const auto f = get_string(fj, "formula", fpath);
            if (f != "regime") field_error(fpath + ".formula", "expected \"regime\"");
        } else if (fj.contains("gap")) {
            t.frequency.kind = FrequencySpec::Kind::gap;
            const auto& g = fj.at("gap");
            if (!g.is_array() || g.size() != 2 || !g[0].is_string() || !g[1].is_string())
                field_error(fpath + ".gap", "expected [\"<from>\", \"<to>\"]");
            try {
                t.frequency.from = parse_label(g[0].get<std::string>());
                t.frequency.to = parse_label(g[1].get<std::string>());
            } catch (const InputError& e) {
                field_error(fpath + ".gap", e.what());
            }
            t.frequency.bs_factor = get_number(fj, "bs_factor", fpath, 0.0);
        } else if (fj.contains("rad_s")) {
            t.frequency.kind = FrequencySpec::Kind::rad_s;
            t.frequency.value = get_number(fj, "rad_s", fpath);
        } else {
            t.frequency.kind = FrequencySpec::Kind::g0;
            t.frequency.value = get_number(fj, "g0", fpath);
        }
        if (fj.contains("bs_factor") && t.frequency.kind != FrequencySpec::Kind::gap)
            field_error(fpath + ".bs_factor", "only valid with gap");
        if (fj.contains("offset_g0")) {
            if (t.frequency.kind != FrequencySpec::Kind::formula && t.frequency.kind != FrequencySpec::Kind::gap)
                field_error(fpath + ".offset_g0", "only valid with formula or gap");
            t.frequency.offset_g0 = get_number(fj, "offset_g0", fpath);
        }
        t.role = parse_role(get_string(tj, "role", path, std::string("primary")), path + ".role");
        if (tj.contains("fine_tune")) {
            if (!tj.at("fine_tune").is_boolean()) field_error(path + ".fine_tune", "expected a boolean");
            t.fine_tune = tj.at("fine_tune").get<bool>();
        }
        s.tones.push_back(t);
    }

    if (j.contains("initial")) {
        const auto& ij = j.at("initial");
        check_keys(ij, "initial", {"kind", "alpha", "label"});
        const auto kind = get_string(ij, "kind", "initial");
        if (kind == "zes") {
            s.initial.kind = InitialSpec::Kind::zes;
        } else if (kind == "coherent") {
            s.initial.kind = InitialSpec::Kind::coherent;
            if (!ij.contains("alpha")) field_error("initial.alpha", "missing");
            const auto& a = ij.at("alpha");
            if (a.is_number()) s.initial.alpha = a.get<double>();
            else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number())
                s.initial.alpha = cplx(a[0].get<double>(), a[1].get<double>());
            else field_error("initial.alpha", "expected a number or [re, im]");
        } else if (kind == "dressed") {
            s.initial.kind = InitialSpec::Kind::dressed;
            try {
                s.initial.label = parse_label(get_string(ij, "label", "initial"));
            } catch (const InputError& e) {
                field_error("initial.label", e.what());
            }
        } else {
            field_error("initial.kind", "expected zes, coherent or dressed");
        }
    }

    if (j.contains("solver")) {
        const auto& sj = j.at("solver");
        s.solvers.clear();
        try {
            if (sj.is_string()) s.solvers.push_back(parse_solver(sj.get<std::string>()));
            else if (sj.is_array())
                for (const auto& v : sj) {
                    if (!v.is_string()) field_error("solver", "expected strings");
                    s.solvers.push_back(parse_solver(v.get<std::string>()));
                }
            else field_error("solver", "expected a string or an array");
        } catch (const InputError& e) {
            if (std::string(e.what()).rfind("solver", 0) == 0) throw;
            field_error("solver", e.what());
        }
    }
    if (j.contains("frame")) {
        const auto frame = get_string(j, "frame", "scenario");
        if (frame != "lab" && frame != "dressed-interaction") field_error("frame", "expected lab or dressed-interaction");
        for (auto v : s.solvers)
            if (is_effective(v) != (frame == "dressed-interaction"))
                field_error("frame", "solver " + std::string(to_string(v)) + " does not run in the " + frame + " frame");
    }
    if (j.contains("t_max")) {
        const auto& tj = j.at("t_max");
        check_keys(tj, "t_max", {"value", "unit"});
        const double v = get_number(tj, "value", "t_max");
        const auto unit = get_string(tj, "unit", "t_max", std::string("ns"));
        if (unit == "ns") s.t_max_ns = v;
        else if (unit == "us") s.t_max_ns = v * 1e3;
        else field_error("t_max.unit", "expected ns or us");
    }
    if (j.contains("samples")) {
        if (!j.at("samples").is_number_integer()) field_error("samples", "expected an integer");
        s.samples = j.at("samples").get<int>();
    }
    if (j.contains("n_max") && !j.at("n_max").is_null()) {
        if (!j.at("n_max").is_number_integer()) field_error("n_max", "expected an integer");
        s.n_max = j.at("n_max").get<int>();
    }
    if (j.contains("secular_cutoff_g0")) {
        const auto& c = j.at("secular_cutoff_g0");
        if (c.is_string() && c.get<std::string>() == "none") s.secular_cutoff_g0 = std::numeric_limits<double>::infinity();
        else if (c.is_number()) s.secular_cutoff_g0 = c.get<double>();
        else field_error("secular_cutoff_g0", "expected a number or \"none\"");
    }
    if (j.contains("integrator")) {
        const auto& ij = j.at("integrator");
        check_keys(ij, "integrator", {"method", "rel", "abs", "steps_per_period"});
        const auto m = get_string(ij, "method", "integrator", std::string("adaptive"));
        if (m == "adaptive") s.integrator.method = Method::adaptive;
        else if (m == "rk4") s.integrator.method = Method::fixed_rk4;
        else field_error("integrator.method", "expected adaptive or rk4");
        s.integrator.tol.rel = get_number(ij, "rel", "integrator", 1e-8);
        s.integrator.tol.abs = get_number(ij, "abs", "integrator", 1e-10);
        s.integrator.steps_per_period = get_number(ij, "steps_per_period", "integrator", 200.0);
    }
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = s.name;
    j["params"] = {{"omega0_ghz", s.omega0_ghz},     {"g0_over_omega0", s.g0_over_omega0},
                   {"delta_minus_g0", s.delta_minus_g0}, {"kappa_g0", s.kappa_g0},
                   {"gamma_g0", s.gamma_g0},         {"gamma_phi_g0", s.gamma_phi_g0}};
    j["regime"] = {{"kind", std::string(to_string(s.regime.kind))},
                   {"R", sign_str(s.regime.R)},
                   {"R2", sign_str(s.regime.R2)},
                   {"k", s.regime.k}};
    json tones = json::array();
    for (const auto& t : s.tones) {
        json tj;
        tj["target"] = std::string(to_string(t.target));
        tj["depth"] = t.depth.kind == DepthSpec::Kind::relative ? json{{"relative", t.depth.value}}
                                                                 : json{{"g0", t.depth.value}};
        if (t.depth.phase != 0.0) tj["phase_rad"] = t.depth.phase;
        json fj;
        switch (t.frequency.kind) {
            case FrequencySpec::Kind::formula: fj["formula"] = "regime"; break;
            case FrequencySpec::Kind::gap:
                fj["gap"] = {t.frequency.from.str(), t.frequency.to.str()};
                fj["bs_factor"] = t.frequency.bs_factor;
                break;
            case FrequencySpec::Kind::rad_s: fj["rad_s"] = t.frequency.value; break;
            case FrequencySpec::Kind::g0: fj["g0"] = t.frequency.value; break;
        }
        if ((t.frequency.kind == FrequencySpec::Kind::formula || t.frequency.kind == FrequencySpec::Kind::gap) &&
            t.frequency.offset_g0 != 0.0)
            fj["offset_g0"] = t.frequency.offset_g0;
        tj["frequency"] = fj;
        tj["role"] = role_str(t.role);
        if (t.fine_tune) tj["fine_tune"] = true;
        tones.push_back(tj);
    }
    j["tones"] = tones;
    switch (s.initial.kind) {
        case InitialSpec::Kind::zes: j["initial"] = {{"kind", "zes"}}; break;
        case InitialSpec::Kind::coherent:
            j["initial"] = {{"kind", "coherent"}};
            if (s.initial.alpha.imag() == 0.0) j["initial"]["alpha"] = s.initial.alpha.real();
            else j["initial"]["alpha"] = {s.initial.alpha.real(), s.initial.alpha.imag()};
            break;
        case InitialSpec::Kind::dressed: j["initial"] = {{"kind", "dressed"}, {"label", s.initial.label.str()}}; break;
    }
    json solvers = json::array();
    for (auto v : s.solvers) solvers.push_back(std::string(to_string(v)));
    j["solver"] = solvers;
    j["t_max"] = {{"value", s.t_max_ns}, {"unit", "ns"}};
    j["samples"] = s.samples;
    if (s.n_max) j["n_max"] = *s.n_max;
    if (std::isfinite(s.secular_cutoff_g0)) j["secular_cutoff_g0"] = s.secular_cutoff_g0;
    else j["secular_cutoff_g0"] = "none";
    j["integrator"] = {{"method", s.integrator.method == Method::fixed_rk4 ? "rk4" : "adaptive"},
                       {"rel", s.integrator.tol.rel},
                       {"abs", s.integrator.tol.abs},
                       {"steps_per_period", s.integrator.steps_per_period}};
    return j;
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << "scenario parse error at line " << line_of(text, e.byte) << ": " << e.what();
        throw InputError(os.str());
    }
    Scenario s = scenario_from_json(j);
    validate(s);
    return s;
}

std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

Scenario load_scenario(const std::filesystem::path& path) {
    if (is_preset(path.string()) && !std::filesystem::exists(path)) return preset(path.string());
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::vector<std::string> preset_names() { return {"fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b"}; }

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario preset(const std::string& name) {
    Scenario s;
    s.name = name;
    s.omega0_ghz = 8.0;
    s.g0_over_omega0 = 0.05;
    s.solvers = {Solver::effective_sme};
    s.samples = 1001;
    auto omega_tone = [](FrequencySpec f) {
        ToneSpec t;
        t.target = Target::Omega;
        t.depth = {DepthSpec::Kind::relative, 0.05, 0.0};
        t.frequency = f;
        return t;
    };
    auto g_tone = [](double depth_g0, FrequencySpec f) {
        ToneSpec t;
        t.target = Target::g;
        t.depth = {DepthSpec::Kind::g0, depth_g0, 0.0};
        t.frequency = f;
        t.role = ToneRole::secondary;
        return t;
    };
    auto gap = [](const char* from, const char* to, double bs) {
        FrequencySpec f;
        f.kind = FrequencySpec::Kind::gap;
        f.from = parse_label(from);
        f.to = parse_label(to);
        f.bs_factor = bs;
        return f;
    };
    const FrequencySpec formula{};
    if (name == "fig1a") {
        s.delta_minus_g0 = 0.0;
        s.kappa_g0 = s.gamma_g0 = s.gamma_phi_g0 = 2e-4;
        s.regime = RegimeSpec::resonant(+1);
        s.tones = {omega_tone(formula)};
        s.t_max_ns = 500.0;
    } else if (name == "fig1b") {
        s.delta_minus_g0 = 0.0;
        s.kappa_g0 = s.gamma_g0 = s.gamma_phi_g0 = 2e-4;
        s.regime = RegimeSpec::resonant_two_tone(+1, +1);
        s.tones = {omega_tone(formula), g_tone(1.97e-2, formula)};
        s.t_max_ns = 500.0;
    } else if (name == "fig2a") {
        s.delta_minus_g0 = 8.0;
        s.kappa_g0 = s.gamma_g0 = s.gamma_phi_g0 = 1e-4;
        s.regime = RegimeSpec::ajc(1);
        s.tones = {omega_tone(gap("0-", "2-", 0.954))};
        s.t_max_ns = 500.0;
    } else if (name == "fig2b") {
        s.delta_minus_g0 = 8.0;
        s.kappa_g0 = s.gamma_g0 = s.gamma_phi_g0 = 5e-5;
        s.regime = RegimeSpec::dce();
        s.tones = {omega_tone(gap("0-", "2+", -1.02))};
        s.t_max_ns = 5000.0;
    } else if (name == "fig3a" || name == "fig3b") {
        s.delta_minus_g0 = 8.0;
        s.kappa_g0 = 1e-5;
        s.gamma_g0 = s.gamma_phi_g0 = 5e-5;
        s.initial = {InitialSpec::Kind::coherent, 2.0, {0, Branch::minus}};
        s.t_max_ns = 5000.0;
        if (name == "fig3a") {
            s.regime = RegimeSpec::anti_dce(4);
            s.tones = {omega_tone(gap("2-", "4+", -2.791))};
        } else {
            s.regime = RegimeSpec::anti_dce_two_tone(4);
            s.tones = {omega_tone(gap("2-", "4+", -2.791)), g_tone(9.91e-4, gap("0-", "2-", 0.954))};
        }
    } else {
        throw InputError("unknown preset '" + name + "'");
    }
    return s;
}

}  // namespace ncqed
