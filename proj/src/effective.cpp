#include "ncqed/effective.hpp"

#include "ncqed/errors.hpp"
#include "ncqed/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncqed {

namespace {

constexpr cplx I{0.0, 1.0};

DressedLabel label(int n, int sign) {
    if (n == 0) return {0, Branch::minus};
    return {n, branch_from_sign(sign)};
}

double delta_minus_shift(const SystemParams& p) { return p.g0 * p.g0 / p.delta_minus(); }
double delta_plus_shift(const SystemParams& p) { return p.g0 * p.g0 / p.delta_plus(); }

void check_sign(int s, const char* name) {
    if (s != 1 && s != -1) throw InputError(std::string("regime.") + name + ": must be + or -");
}

}  // namespace

std::string_view to_string(RegimeKind k) {
    switch (k) {
        case RegimeKind::resonant: return "resonant";
        case RegimeKind::resonant_two_tone: return "resonant_two_tone";
        case RegimeKind::ajc: return "ajc";
        case RegimeKind::anti_dce: return "anti_dce";
        case RegimeKind::anti_dce_two_tone: return "anti_dce_two_tone";
        case RegimeKind::dce: return "dce";
    }
    return "?";
}

RegimeKind parse_regime(std::string_view s) {
    for (auto k : {RegimeKind::resonant, RegimeKind::resonant_two_tone, RegimeKind::ajc, RegimeKind::anti_dce,
                   RegimeKind::anti_dce_two_tone, RegimeKind::dce})
        if (to_string(k) == s) return k;
    throw InputError("regime.kind: unknown regime '" + std::string(s) + "'");
}

std::string_view to_string(Channel c) {
    switch (c) {
        case Channel::dephasing: return "dephasing";
        case Channel::atomic_damping: return "atomic-damping";
        case Channel::cavity_damping: return "cavity-damping";
    }
    return "?";
}

int active_excitations(const RegimeSpec& r) {
    switch (r.kind) {
        case RegimeKind::resonant: return 2;
        case RegimeKind::resonant_two_tone: return 4;
        case RegimeKind::ajc: return r.k + 1;
        case RegimeKind::anti_dce:
        case RegimeKind::anti_dce_two_tone: return r.k;
        case RegimeKind::dce: return 2;
    }
    return 2;
}

int detuning_symbol(const SystemParams& p) {
    const double d = p.delta_minus();
    if (d == 0.0) throw InputError("regime: detuning symbol undefined at zero detuning");
    return d > 0.0 ? 1 : -1;
}

std::vector<std::string> validate(const RegimeSpec& r, const SystemParams& p) {
    std::vector<std::string> warnings;
    check_sign(r.R, "R");
    check_sign(r.R2, "R2");
    const double d = p.delta_minus();
    if (!r.dispersive()) {
        if (std::abs(d) > 1e-9 * p.omega0) throw InputError("regime: the resonant regime requires zero detuning");
        return warnings;
    }
    if (d == 0.0) throw InputError("regime: dispersive regimes require nonzero detuning");
    if (r.kind == RegimeKind::ajc && r.k < 1) throw InputError("regime.k: AJC order must be >= 1");
    if (r.kind == RegimeKind::anti_dce && r.k < 3) throw InputError("regime.k: Anti-DCE requires k >= 3");
    if (r.kind == RegimeKind::anti_dce_two_tone && r.k < 4)
        throw InputError("regime.k: two-tone Anti-DCE requires k >= 4");
    const double scale = p.g0 * std::sqrt(static_cast<double>(active_excitations(r)));
    const double ratio = std::abs(d) / scale;
    if (ratio < 2.0) {
        std::ostringstream os;
        os << "regime: |detuning| = " << ratio << " g0*sqrt(n_active), dispersive regime needs at least 2";
        throw InputError(os.str());
    }
    if (ratio < 5.0) {
        std::ostringstream os;
        os << "regime: |detuning| = " << ratio << " g0*sqrt(n_active) is below 5; dispersive corrections are sizeable";
        warnings.push_back(os.str());
    }
    return warnings;
}

double resonance_frequency(const SystemParams& p, const RegimeSpec& r, ToneRole role) {
    const double w0 = p.omega0, g = p.g0;
    const bool second = role == ToneRole::secondary;
    if (second && !r.two_tone()) throw InputError("resonance_frequency: regime has a single tone");
    switch (r.kind) {
        case RegimeKind::resonant:
            return 2.0 * w0 + r.R * g * std::sqrt(2.0);
        case RegimeKind::resonant_two_tone:
            if (second) return 2.0 * w0 + g * std::sqrt(2.0) * (std::sqrt(2.0) * r.R2 - r.R);
            return 2.0 * w0 + r.R * g * std::sqrt(2.0);
        default: break;
    }
    detuning_symbol(p);
    const double dm = delta_minus_shift(p), dp = delta_plus_shift(p);
    switch (r.kind) {
        case RegimeKind::ajc:
            return p.delta_plus() - 2.0 * r.k * (dm - dp);
        case RegimeKind::anti_dce:
            return 3.0 * w0 - p.Omega0 + 2.0 * (dm - dp) * (r.k - 1);
        case RegimeKind::anti_dce_two_tone:
            if (second) return p.delta_plus() - 2.0 * (dm - dp) * (r.k - 3);
            return 3.0 * w0 - p.Omega0 + 2.0 * (dm - dp) * (r.k - 1);
        case RegimeKind::dce:
            return 2.0 * (w0 + dm - dp);
        default: break;
    }
    return 0.0;
}

cplx collective_depth(const SystemParams& p, const RegimeSpec& r, const std::vector<ModulationTone>& tones,
                      ToneRole role) {
    if (tones.empty()) return {};
    const double f0 = tones.front().frequency;
    for (const auto& t : tones)
        if (std::abs(t.frequency - f0) > 1e-12 * std::max(1.0, std::abs(f0)))
            throw InputError("collective_depth: tones do not share one frequency");
    cplx eps_w{}, eps_W{}, eps_g{}, eps_x{};
    for (const auto& t : tones) {
        switch (t.target) {
            case Target::omega: eps_w += t.depth; break;
            case Target::Omega: eps_W += t.depth; break;
            case Target::g: eps_g += t.depth; break;
            case Target::chi: eps_x += t.depth; break;
        }
    }
    const double w0 = p.omega0, W0 = p.Omega0, g = p.g0;
    const double dm = p.delta_minus(), dp = p.delta_plus();
    const bool second = role == ToneRole::secondary;
    auto ajc_like = [&] { return -eps_w / dp - eps_W / dp + eps_g / g + 2.0 * I * eps_x / dm; };
    switch (r.kind) {
        case RegimeKind::resonant:
        case RegimeKind::resonant_two_tone:
            if (second)
                return eps_w / (2.0 * w0) + eps_W / (2.0 * w0) - eps_g / g +
                       I * double(r.R2) * eps_x / g * (2.0 + r.R * r.R2 * std::sqrt(2.0));
            return eps_w / (2.0 * w0) + eps_W / (2.0 * w0) - eps_g / g + double(r.R) * I * std::sqrt(2.0) * eps_x / g;
        case RegimeKind::ajc:
            return ajc_like();
        case RegimeKind::anti_dce:
        case RegimeKind::anti_dce_two_tone:
            if (second) return ajc_like();
            // χ modulation does not drive this transition.
            return eps_w / (2.0 * w0 + dm) + (w0 + dm) / (2.0 * w0 + dm) * eps_W / W0 - eps_g / g;
        case RegimeKind::dce:
            return eps_w / w0 + eps_W / W0 - 2.0 * eps_g / g + I * (dp / W0) * eps_x / delta_minus_shift(p);
    }
    return {};
}

EffectiveCoupling coupling_rate(const SystemParams& p, const RegimeSpec& r, cplx upsilon,
                                std::optional<cplx> upsilon2, int m_max) {
    EffectiveCoupling c;
    c.upsilon = upsilon;
    const double g = p.g0;
    c.eta = resonance_frequency(p, r, ToneRole::primary);
    if (r.two_tone()) {
        c.upsilon2 = upsilon2.value_or(cplx{});
        c.eta2 = resonance_frequency(p, r, ToneRole::secondary);
    }
    switch (r.kind) {
        case RegimeKind::resonant:
        case RegimeKind::resonant_two_tone:
            c.theta = I * g * double(r.R) * (std::sqrt(2.0) / 4.0) * upsilon;
            if (r.two_tone()) c.theta2 = I * g * double(r.R2) * (std::sqrt(3.0) / 4.0) * *c.upsilon2;
            break;
        case RegimeKind::ajc: {
            const int D = detuning_symbol(p);
            c.theta = I * 0.5 * g * double(D) * upsilon * std::sqrt(static_cast<double>(r.k));
            break;
        }
        case RegimeKind::anti_dce:
        case RegimeKind::anti_dce_two_tone: {
            const int D = detuning_symbol(p);
            const double k = r.k;
            c.theta = I * double(D) * (delta_minus_shift(p) * p.Omega0 * g / (2.0 * p.omega0 * p.delta_minus())) *
                      std::sqrt(k * (k - 1.0) * (k - 2.0)) * upsilon;
            if (r.two_tone()) c.theta2 = I * 0.5 * g * double(D) * std::sqrt(k - 3.0) * *c.upsilon2;
            break;
        }
        case RegimeKind::dce: {
            detuning_symbol(p);
            const double pref = delta_minus_shift(p) * p.Omega0 / (2.0 * p.delta_plus());
            for (int m = 0; m <= std::max(0, m_max); ++m)
                c.theta_m.push_back(I * pref * std::sqrt((m + 1.0) * (m + 2.0)) * upsilon);
            c.theta = c.theta_m.front();
            break;
        }
    }
    return c;
}

std::vector<Transition> regime_transitions(const DressedBasis& basis, const RegimeSpec& r,
                                           const EffectiveCoupling& c) {
    std::vector<Transition> out;
    auto push = [&](DressedLabel lo, DressedLabel up, cplx th, ToneRole role) {
        basis.index_of(lo);
        basis.index_of(up);
        out.push_back({lo, up, th, role});
    };
    switch (r.kind) {
        case RegimeKind::resonant:
        case RegimeKind::resonant_two_tone:
            push(label(0, -1), label(2, r.R), c.theta, ToneRole::primary);
            if (r.two_tone()) push(label(2, r.R), label(4, r.R2), c.theta2.value_or(cplx{}), ToneRole::secondary);
            break;
        case RegimeKind::ajc: {
            const int D = detuning_symbol(basis.params());
            push(label(r.k - 1, D), label(r.k + 1, -D), c.theta, ToneRole::primary);
            break;
        }
        case RegimeKind::anti_dce:
        case RegimeKind::anti_dce_two_tone: {
            const int D = detuning_symbol(basis.params());
            push(label(r.k - 2, -D), label(r.k, D), c.theta, ToneRole::primary);
            if (r.two_tone())
                push(label(r.k - 4, D), label(r.k - 2, -D), c.theta2.value_or(cplx{}), ToneRole::secondary);
            break;
        }
        case RegimeKind::dce: {
            const int D = detuning_symbol(basis.params());
            const int top = basis.space().n_max();
            for (int m = 0; m + 2 <= top && m < static_cast<int>(c.theta_m.size()); ++m)
                push(label(m, D), label(m + 2, D), c.theta_m[static_cast<std::size_t>(m)], ToneRole::primary);
            break;
        }
    }
    return out;
}

PhasedOperator effective_hamiltonian(const DressedBasis& basis, const RegimeSpec& r, const EffectiveCoupling& c,
                                     ToneDetuning detuning) {
    const Eigen::Index d = basis.dim();
    const Eigen::VectorXd lam = basis.energies();
    PhasedOperator h;
    const auto transitions = regime_transitions(basis, r, c);
    double eta_dce = 0.0;
    if (r.kind == RegimeKind::dce) {
        const int D = detuning_symbol(basis.params());
        eta_dce = lam(basis.index_of(label(2, D))) - lam(basis.index_of(label(0, D))) + detuning.primary;
    }
    for (const auto& tr : transitions) {
        const Eigen::Index lo = basis.index_of(tr.lower), up = basis.index_of(tr.upper);
        double f = tr.role == ToneRole::primary ? detuning.primary : detuning.secondary;
        if (r.kind == RegimeKind::dce) f = eta_dce - (lam(up) - lam(lo));
        Operator fwd = Operator::Zero(d, d), back = Operator::Zero(d, d);
        fwd(lo, up) = tr.theta;
        back(up, lo) = std::conj(tr.theta);
        h.add(f, fwd);
        h.add(-f, back);
    }
    return h;
}

RwaMargin rwa_margin(const DressedBasis& basis, const RegimeSpec& r, const EffectiveCoupling& c, double eta) {
    const auto transitions = regime_transitions(basis, r, c);
    RwaMargin best{std::numeric_limits<double>::infinity(), 0.0, {}, {}};
    const auto& levels = basis.levels();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].label.s == Branch::top) continue;
        for (std::size_t j = 0; j < levels.size(); ++j) {
            if (i == j || levels[j].label.s == Branch::top || levels[j].energy <= levels[i].energy) continue;
            const DressedLabel lo = levels[i].label, up = levels[j].label;
            const bool target = std::any_of(transitions.begin(), transitions.end(),
                                            [&](const Transition& t) { return t.lower == lo && t.upper == up; });
            if (target) continue;
            const double off = std::abs(levels[j].energy - levels[i].energy - eta);
            if (off < best.min_offset) best = {off, 0.0, lo, up};
        }
    }
    const double th = std::abs(c.theta);
    best.ratio = th > 0.0 ? best.min_offset / th : std::numeric_limits<double>::infinity();
    return best;
}

std::array<cplx, 2> pair_ode_solution(cplx q, double w, double t, cplx A0, cplx B0) {
    if (q == cplx{}) return {A0 * 1.0, B0 * 1.0};
    // The closed form solves the pair with half the rates; doubling maps it onto this system.
    const cplx Q = 2.0 * q;
    const double W = 2.0 * w;
    const cplx r = std::sqrt(cplx(W * W) - 4.0 * Q * Q);
    if (std::abs(r) < 1e-14 * (std::abs(W) + std::abs(Q)))
        throw InputError("pair_ode_solution: degenerate parameters (w^2 = 4q^2)");
    const cplx wp = (W + r) / 2.0, wm = (W - r) / 2.0;
    const cplx A = ((wp * A0 - I * Q * B0) * std::exp(I * t * wm / 2.0) -
                    (wm * A0 - I * Q * B0) * std::exp(I * t * wp / 2.0)) /
                   r;
    const cplx B = ((wp * B0 + I * Q * A0) * std::exp(-I * t * wm / 2.0) -
                    (wm * B0 + I * Q * A0) * std::exp(-I * t * wp / 2.0)) /
                   r;
    return {A, B};
}

std::array<cplx, 2> pair_unitary_solution(cplx theta, double detuning, double t, cplx A0, cplx B0) {
    const double th = std::abs(theta);
    if (th == 0.0) return {A0, B0};
    // Rephasing B by θ/|θ| maps the pair onto the real-rate form with q = i|θ|.
    const cplx c = theta / th;
    const auto sol = pair_ode_solution(I * th, detuning, t, A0, c * B0);
    return {sol[0], sol[1] / c};
}

std::array<cplx, 3> ladder3_unitary_solution(cplx theta, cplx theta2, double t, cplx A0, cplx C0) {
    const double R2 = std::norm(theta) + std::norm(theta2);
    if (R2 == 0.0) return {A0, cplx{}, C0};
    const double R = std::sqrt(R2);
    const double s2 = std::pow(std::sin(0.5 * R * t), 2);
    const cplx drive = std::conj(theta) * A0 + theta2 * C0;
    const cplx A = A0 - 2.0 * s2 * theta * drive / R2;
    const cplx B = -I * drive * std::sin(R * t) / R;
    const cplx C = C0 - 2.0 * s2 * std::conj(theta2) * drive / R2;
    return {A, B, C};
}

std::array<SecondTone, 2> optimal_second_tone(cplx theta, double A0, double C0) {
    if (A0 == 0.0) throw InputError("optimal_second_tone: A0 = 0 leaves the second tone undetermined");
    if (std::abs(theta) == 0.0) throw InputError("optimal_second_tone: theta = 0");
    const double root = std::sqrt(C0 * C0 + A0 * A0);
    std::array<SecondTone, 2> out{};
    const double xs[2] = {(C0 + root) / A0, (C0 - root) / A0};
    for (int i = 0; i < 2; ++i) {
        const double x = xs[i];
        const double R = std::abs(theta) * std::sqrt(1.0 + x * x);
        out[static_cast<std::size_t>(i)] = {x, x * std::conj(theta), M_PI / R};
    }
    return out;
}

std::optional<PopulationMap> steady_state_closed_form(const RegimeSpec& r, Channel ch, cplx theta,
                                                      const DissipationRates& rates, const SystemParams& p) {
    const double t2 = std::norm(theta);
    PopulationMap m;
    auto normalize = [&m] {
        double s = 0.0;
        for (const auto& e : m) s += e.value;
        for (auto& e : m) e.value /= s;
    };
    switch (r.kind) {
        case RegimeKind::resonant: {
            if (ch == Channel::dephasing) {
                m = {{label(0, -1), 1.0 / 3}, {label(2, +1), 1.0 / 3}, {label(2, -1), 1.0 / 3}};
            } else if (ch == Channel::atomic_damping) {
                const double c = std::pow(rates.gamma / 4.0, 2);
                const double den = 3.0 * t2 + c;
                const double r2 = t2 / den;
                m = {{label(0, -1), (t2 + c) / den}, {label(2, r.R), r2}, {label(1, +1), r2 / 2}, {label(1, -1), r2 / 2}};
            } else {
                const double c = std::pow(3.0 * rates.kappa / 4.0, 2);
                const double den = 5.0 * t2 + c;
                const double r2 = t2 / den;
                m = {{label(0, -1), (t2 + c) / den},
                     {label(2, r.R), r2},
                     {label(1, r.R), 0.5 * std::pow(std::sqrt(2.0) + 1.0, 2) * r2},
                     {label(1, -r.R), 0.5 * std::pow(std::sqrt(2.0) - 1.0, 2) * r2}};
            }
            return m;
        }
        case RegimeKind::resonant_two_tone: {
            if (ch == Channel::dephasing) {
                for (auto l : {label(0, -1), label(2, +1), label(2, -1), label(4, +1), label(4, -1)})
                    m.push_back({l, 0.2});
                return m;
            }
            if (ch != Channel::atomic_damping || t2 == 0.0) return std::nullopt;
            const double g = rates.gamma;
            const double q = std::pow(g / 4.0, 2), h = g * g / 4.0;
            const double r4 = 4.0 * t2 / (3.0 * t2 + h);
            m = {{label(0, -1), (2.0 * t2 + q) / t2 - 2.0 * (t2 - q) / (3.0 * t2 + h)},
                 {label(2, r.R), 1.0},
                 {label(4, r.R2), r4},
                 {label(1, +1), 0.5 * (5.0 * t2 + h) / (3.0 * t2 + h)},
                 {label(1, -1), 0.5 * (5.0 * t2 + h) / (3.0 * t2 + h)},
                 {label(3, +1), r4 / 2},
                 {label(3, -1), r4 / 2},
                 {label(2, -r.R), r4 / 2}};
            normalize();
            return m;
        }
        case RegimeKind::ajc: {
            if (r.k != 1) return std::nullopt;
            const int D = detuning_symbol(p);
            if (ch == Channel::dephasing) {
                m = {{label(0, -1), 1.0 / 3}, {label(2, +1), 1.0 / 3}, {label(2, -1), 1.0 / 3}};
                return m;
            }
            if (t2 == 0.0) return std::nullopt;
            const double eps = std::pow(p.g0 / p.delta_minus(), 2);
            const double kap = ch == Channel::cavity_damping ? rates.kappa : 0.0;
            const double gam = ch == Channel::atomic_damping ? rates.gamma : 0.0;
            const double r1 = 1.0;
            const double r2 = (kap * (1.0 - eps) + gam * eps) / (kap * eps + gam * (1.0 - 3.0 * eps)) * r1;
            const double r1m = (kap * (1.0 + eps) + gam * eps) / (kap * eps + gam * (1.0 - eps)) * r2;
            const double r0 = (1.0 + std::pow((kap + gam + 2.0 * eps * (kap - gam)) / (2.0 * std::sqrt(t2)), 2)) * r2;
            m = {{label(0, -1), r0}, {label(2, -D), r2}, {label(1, D), r1}, {label(1, -D), r1m}};
            normalize();
            return m;
        }
        default:
            return std::nullopt;
    }
}

std::vector<std::pair<DressedLabel, DressedLabel>> dephasing_relations(const RegimeSpec& r, int n_max) {
    std::vector<std::pair<DressedLabel, DressedLabel>> out;
    if (r.kind != RegimeKind::anti_dce && r.kind != RegimeKind::anti_dce_two_tone) return out;
    if (r.k > n_max) throw InvalidTruncation("dephasing_relations: k exceeds the truncation");
    out.push_back({label(r.k, +1), label(r.k - 2, +1)});
    out.push_back({label(r.k, -1), label(r.k - 2, -1)});
    for (int l = 1; l <= n_max; ++l) out.push_back({label(l, +1), label(l, -1)});
    if (r.kind == RegimeKind::anti_dce_two_tone) {
        // The D label is fixed by the detuning sign; both are listed so the caller can pick.
        out.push_back({label(r.k, +1), label(r.k - 4, +1)});
        out.push_back({label(r.k, -1), label(r.k - 4, -1)});
    }
    return out;
}

RateGenerator antidce_rate_equations(Channel ch, const SystemParams& p, int n_max) {
    const int D = detuning_symbol(p);
    if (ch == Channel::dephasing) throw InputError("antidce_rate_equations: no rate equations for dephasing");
    if (n_max < 1) throw InvalidTruncation("antidce_rate_equations: n_max must be >= 1");
    const double eps = std::pow(p.g0 / p.delta_minus(), 2);
    RateGenerator g;
    // (N, D) for N = 0..n_max, then (N, −D) for N = 1..n_max.
    auto iD = [](int N) { return static_cast<Eigen::Index>(N); };
    auto iM = [n_max](int N) { return static_cast<Eigen::Index>(n_max + N); };
    for (int N = 0; N <= n_max; ++N) g.labels.push_back(label(N, D));
    for (int N = 1; N <= n_max; ++N) g.labels.push_back(label(N, -D));
    const Eigen::Index size = static_cast<Eigen::Index>(g.labels.size());
    g.matrix = Eigen::MatrixXd::Zero(size, size);
    auto& M = g.matrix;
    for (int N = 0; N <= n_max; ++N) {
        const bool above = N + 1 <= n_max;
        if (ch == Channel::cavity_damping) {
            if (above) {
                M(iD(N), iD(N + 1)) += (N + 1) * (1.0 - eps);
                M(iD(N), iM(N + 1)) += eps;
            }
            M(iD(N), iD(N)) -= N * (1.0 - eps);
            if (N >= 1) {
                if (above) M(iM(N), iM(N + 1)) += N * (1.0 + eps);
                M(iM(N), iM(N)) -= (N - 1) + eps * N;
            }
        } else {
            if (above) {
                M(iD(N), iM(N + 1)) += 1.0 - eps * (2 * N + 1);
                M(iD(N), iD(N + 1)) += eps * (N + 1);
            }
            M(iD(N), iD(N)) -= eps * N;
            if (N >= 1) {
                if (above) M(iM(N), iM(N + 1)) += eps * N;
                M(iM(N), iM(N)) -= 1.0 - eps * N;
            }
        }
    }
    return g;
}

FineTuneResult fine_tune_resonance(const std::function<double(double)>& probe, double center, double half_window,
                                   double tolerance, int coarse_points) {
    if (!(half_window > 0.0)) throw InputError("fine_tune: search window must be positive");
    if (!(tolerance > 0.0)) throw InputError("fine_tune: tolerance must be positive");
    coarse_points = std::max(coarse_points, 5);
    const double lo = center - half_window, hi = center + half_window;
    const double step = (hi - lo) / (coarse_points - 1);
    std::vector<double> grid(static_cast<std::size_t>(coarse_points)), vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = lo + step * static_cast<double>(i);
    parallel_for(grid.size(), [&](std::size_t i) { vals[i] = probe(grid[i]); });
    int evals = coarse_points;
    const auto best = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    FineTuneResult res{grid[best], vals[best], best == 0 || best + 1 == grid.size(), evals};
    if (res.ambiguous) return res;

    double a = grid[best - 1], b = grid[best + 1];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = probe(c), fd = probe(d);
    evals += 2;
    while (b - a > tolerance) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = probe(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = probe(d);
        }
        ++evals;
    }
    const double eta = fc > fd ? c : d;
    const double peak = std::max(fc, fd);
    if (peak >= res.peak) {
        res.eta = eta;
        res.peak = peak;
    }
    res.evaluations = evals;
    return res;
}

double fine_tune_window_bound(const SystemParams& p, const ModulationSchedule& s) {
    double eps2 = 0.0;
    for (const auto& t : s.tones) eps2 = std::max(eps2, std::norm(t.depth));
    const double g2 = p.g0 * p.g0;
    return 10.0 * (g2 / p.omega0 + eps2 / p.omega0 + 5.0 * g2 / p.delta_plus());
}

}  // namespace ncqed
