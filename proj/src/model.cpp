#include "ncqed/model.hpp"

#include "ncqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncqed {

std::string_view to_string(Target t) {
    switch (t) {
        case Target::omega: return "omega";
        case Target::Omega: return "Omega";
        case Target::g: return "g";
        case Target::chi: return "chi";
    }
    return "?";
}

Target parse_target(std::string_view s) {
    if (s == "omega") return Target::omega;
    if (s == "Omega") return Target::Omega;
    if (s == "g") return Target::g;
    if (s == "chi") return Target::chi;
    throw InputError("unknown modulation target '" + std::string(s) + "'");
}

double SystemParams::bare(Target t) const noexcept {
    switch (t) {
        case Target::omega: return omega0;
        case Target::Omega: return Omega0;
        case Target::g: return g0;
        case Target::chi: return chi0;
    }
    return 0.0;
}

std::vector<std::string> validate(const SystemParams& p, int n_active) {
    std::vector<std::string> warnings;
    auto fail = [](const std::string& field, const std::string& why) {
        throw InputError("params." + field + ": " + why);
    };
    if (!(p.omega0 > 0.0)) fail("omega0", "must be positive");
    if (!(p.Omega0 > 0.0)) fail("Omega0", "must be positive");
    if (p.g0 < 0.0) fail("g0", "must be non-negative");
    if (p.chi0 != 0.0) fail("chi0", "static squeezing must be zero for the dressed-state description");
    if (p.kappa < 0.0 || p.gamma < 0.0 || p.gamma_phi < 0.0) fail("rates", "dissipation rates must be non-negative");
    if (!(p.unit_rad_s > 0.0)) fail("unit_rad_s", "must be positive");
    if (std::abs(p.delta_minus()) > 0.5 * p.omega0) fail("Omega0", "|omega0 - Omega0| must not exceed omega0/2");
    const double weak = p.g0 * std::sqrt(static_cast<double>(std::max(n_active, 1)));
    if (weak > 0.2 * p.omega0) {
        std::ostringstream msg;
        msg << "g0*sqrt(n_active) = " << weak / p.omega0 << "*omega0 exceeds the weak-coupling bound 0.2*omega0";
        fail("g0", msg.str());
    }
    if (weak > 0.1 * p.omega0) {
        std::ostringstream msg;
        msg << "g0*sqrt(n_active) = " << weak / p.omega0 << "*omega0 is above 0.1*omega0; counter-rotating effects grow";
        warnings.push_back(msg.str());
    }
    return warnings;
}

double ModulationSchedule::max_frequency() const noexcept {
    double m = 0.0;
    for (const auto& t : tones) m = std::max(m, t.frequency);
    return m;
}

void validate(const ModulationSchedule& s, const SystemParams& p, int n_max) {
    for (std::size_t j = 0; j < s.tones.size(); ++j) {
        const auto& tone = s.tones[j];
        const std::string field = "tones[" + std::to_string(j) + "]";
        if (!(tone.frequency > p.omega0)) {
            throw InputError(field + ".frequency: modulation must be fast (eta > omega0)");
        }
        double scale = 1.0;
        if (tone.target == Target::g) scale = std::sqrt(static_cast<double>(n_max));
        if (tone.target == Target::chi) scale = static_cast<double>(n_max);
        if (std::abs(tone.depth) * scale > 0.1 * p.omega0) {
            throw InputError(field + ".depth: modulation depth exceeds the small-depth bound 0.1*omega0");
        }
    }
}

double parameter_value(const SystemParams& p, const ModulationSchedule& s, Target target, double t) {
    double v = p.bare(target);
    for (const auto& tone : s.tones) {
        if (tone.target == target) {
            v += (tone.depth * std::polar(1.0, tone.frequency * t)).imag();
        }
    }
    return v;
}

DerivedFrequencies derived_frequencies(const SystemParams& p) {
    DerivedFrequencies d;
    d.delta_minus = p.delta_minus();
    d.delta_plus = p.delta_plus();
    d.bs_shift = p.g0 * p.g0 / d.delta_plus;
    if (d.delta_minus != 0.0) {
        d.disp_shift = p.g0 * p.g0 / d.delta_minus;
        d.detuning_symbol = d.delta_minus > 0.0 ? 1 : -1;
    }
    return d;
}

RabiHamiltonian::RabiHamiltonian(const SystemParams& p, ModulationSchedule s, const OperatorSet& ops)
    : params_(p), schedule_(std::move(s)) {
    n_ = ops.n;
    pe_ = ops.excited_projector;
    coupling_ = (ops.a + ops.a_dag) * (ops.sigma_plus + ops.sigma_minus);
    squeeze_ = cplx(0.0, 1.0) * (ops.a_dag * ops.a_dag - ops.a * ops.a);
    h_static_ = p.omega0 * n_ + p.Omega0 * pe_ + p.g0 * coupling_ + p.chi0 * squeeze_;
}

const Operator& RabiHamiltonian::generator(Target t) const {
    switch (t) {
        case Target::omega: return n_;
        case Target::Omega: return pe_;
        case Target::g: return coupling_;
        case Target::chi: return squeeze_;
    }
    return n_;
}

Operator RabiHamiltonian::at(double t) const {
    Operator h = h_static_;
    for (const auto& tone : schedule_.tones) {
        h += (tone.depth * std::polar(1.0, tone.frequency * t)).imag() * generator(tone.target);
    }
    return h;
}

void RabiHamiltonian::apply(double t, const Eigen::Ref<const StateVector>& v, Eigen::Ref<StateVector> out) const {
    out.noalias() = h_static_ * v;
    for (const auto& tone : schedule_.tones) {
        const double x = (tone.depth * std::polar(1.0, tone.frequency * t)).imag();
        out.noalias() += x * (generator(tone.target) * v);
    }
}

Operator hamiltonian_at(const SystemParams& p, const ModulationSchedule& s, const OperatorSet& ops, double t) {
    return RabiHamiltonian(p, s, ops).at(t);
}

Operator jaynes_cummings(const SystemParams& p, const OperatorSet& ops) {
    return p.omega0 * ops.n + p.Omega0 * ops.excited_projector +
           p.g0 * (ops.a * ops.sigma_plus + ops.a_dag * ops.sigma_minus);
}

}  // namespace ncqed
