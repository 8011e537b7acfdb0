#include "ncqed/evolve.hpp"

#include "ncqed/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncqed {

namespace odeint = boost::numeric::odeint;

void PhasedOperator::add(double frequency, const Operator& op) {
    for (auto& term : terms) {
        if (term.frequency == frequency) {
            term.op += op;
            return;
        }
    }
    terms.push_back({frequency, op});
}

Operator PhasedOperator::at(double t) const {
    if (terms.empty()) return {};
    Operator out = Operator::Zero(terms.front().op.rows(), terms.front().op.cols());
    for (const auto& term : terms) out += std::exp(cplx(0.0, term.frequency * t)) * term.op;
    return out;
}

double PhasedOperator::max_frequency() const noexcept {
    double m = 0.0;
    for (const auto& term : terms) m = std::max(m, std::abs(term.frequency));
    return m;
}

PhasedSuperop commutator_generator(const PhasedOperator& h) {
    PhasedSuperop out(h.terms.empty() ? 0 : h.terms.front().op.rows() * h.terms.front().op.rows());
    for (const auto& term : h.terms) out.add(term.frequency, commutator_generator(term.op));
    return out;
}

double Trajectory::max_trace_err() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.trace_err);
    return m;
}

double Trajectory::min_eigenvalue() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : records) m = std::min(m, r.min_eig);
    return m;
}

double Trajectory::max_top_fock_pop() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.top_fock_pop);
    return m;
}

Operator rotate_dressed(const Operator& rho_dressed, const Eigen::VectorXd& energies, double t, FrameDirection dir) {
    // to_lab: ρ_ab e^{−i(λa−λb)t}; to_interaction: the inverse.
    const double sign = dir == FrameDirection::to_lab ? -1.0 : 1.0;
    Operator out(rho_dressed.rows(), rho_dressed.cols());
    for (Eigen::Index b = 0; b < rho_dressed.cols(); ++b)
        for (Eigen::Index a = 0; a < rho_dressed.rows(); ++a)
            out(a, b) = rho_dressed(a, b) * std::exp(cplx(0.0, sign * (energies(a) - energies(b)) * t));
    return out;
}

DensityMatrix frame_transform(const DensityMatrix& rho, const DressedBasis& basis, double t, FrameDirection dir) {
    if (rho.dim() != basis.dim()) throw DimensionMismatch("frame_transform: state and basis dimensions differ");
    Operator dressed = basis.to_dressed(rho.matrix());
    return DensityMatrix::unchecked(basis.to_bare(rotate_dressed(dressed, basis.energies(), t, dir)));
}

std::vector<double> uniform_samples(double t_end, std::size_t count) {
    if (count < 2) return {t_end};
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = t_end * static_cast<double>(i) / static_cast<double>(count - 1);
    out.back() = t_end;
    return out;
}

PhasedSuperop interaction_generator(const DressedBasis& basis, const PhasedOperator& h_eff, DissipatorKind kind,
                                    const DissipationRates& rates, double secular_cutoff) {
    const Eigen::Index d = basis.dim();
    PhasedSuperop gen(d * d);
    if (!h_eff.terms.empty()) gen.add(commutator_generator(h_eff));
    const Eigen::VectorXd energies = basis.energies();
    if (kind == DissipatorKind::sme) {
        const OperatorSet ops = bare_operators(basis.space());
        const Operator& t = basis.transform();
        // Dressed-basis form of the bare superoperator: (Tᵀ ⊗ T†) S (T* ⊗ T).
        const Operator tc = t.conjugate();
        const Superop fwd = kron(t.transpose(), t.adjoint(), 1e-15);
        const Superop back = kron(tc, t, 1e-15);
        Superop dressed = fwd * sme_superop(ops, rates) * back;
        dressed.prune(cplx(0.0, 0.0), 1e-14);
        gen.add(interaction_picture(dressed, energies, secular_cutoff));
    } else if (kind == DissipatorKind::dpme) {
        const OperatorSet ops = bare_operators(basis.space());
        const auto tables = transition_tables(basis, ops);
        const auto dr = dpme_rates(basis, tables, SpectralDensityPolicy::flat_positive(rates));
        gen.add(interaction_picture(dpme_superop_dressed(dr), energies, secular_cutoff));
    }
    return gen;
}

namespace {

using State = std::vector<cplx>;
using VecMap = Eigen::Map<Eigen::VectorXcd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXcd>;

// Exact interaction-picture dissipator: P(t) ∘ (S · (P(t)* ∘ v)), P_ab = e^{i(λa−λb)t}.
struct RotatingDissipator {
    Superop dressed;
    Eigen::VectorXd omega;  // λa − λb in vec order
    mutable Eigen::VectorXcd phase, tmp;

    void apply_add(double t, const Eigen::Ref<const Eigen::VectorXcd>& v, Eigen::Ref<Eigen::VectorXcd> out) const {
        phase = (omega * t).unaryExpr([](double x) { return std::exp(cplx(0.0, x)); });
        tmp = phase.conjugate().cwiseProduct(v);
        out += phase.cwiseProduct(dressed * tmp);
    }
};

struct Engine {
    std::function<void(const State&, State&, double)> rhs;
    std::function<ObservableRecord(const State&, double, Operator*)> observe;
    bool density{true};
    Eigen::Index dim{0};
    double fastest{0.0};  // highest generator frequency, for diagnostics
};

std::string stiffness_message(double dt, double min_step, double t, double fastest) {
    std::ostringstream os;
    os << "integrator step " << dt << " fell below " << min_step << " at t = " << t;
    if (fastest > 0.0) os << "; fastest generator frequency " << fastest << " (period " << 2.0 * M_PI / fastest << ")";
    return os.str();
}

void record(Trajectory& traj, const Engine& eng, const State& y, double t, const IntegratorOptions& opt,
            bool keep) {
    Operator rho;
    ObservableRecord r = eng.observe(y, t, keep ? &rho : nullptr);
    if (!traj.failed && r.trace_err > opt.trace_tolerance) {
        traj.failed = true;
        std::ostringstream os;
        os << "trace drift " << r.trace_err << " exceeds " << opt.trace_tolerance << " at t = " << t;
        traj.failure = os.str();
    }
    traj.times.push_back(t);
    traj.records.push_back(std::move(r));
    if (keep) traj.states.push_back(std::move(rho));
}

void run_adaptive(const Engine& eng, State y, const std::vector<double>& samples, const IntegratorOptions& opt,
                  double max_step, Trajectory& traj, bool keep) {
    using Stepper = odeint::runge_kutta_dopri5<State>;
    auto dense = max_step > 0.0 ? odeint::make_dense_output(opt.tol.abs, opt.tol.rel, max_step, Stepper())
                                : odeint::make_dense_output(opt.tol.abs, opt.tol.rel, Stepper());
    double dt0 = max_step > 0.0 ? std::min(max_step, 1e-3) : 1e-3;
    dense.initialize(y, 0.0, dt0);
    State tmp(y.size());
    std::size_t i = 0;
    while (i < samples.size() && samples[i] <= 0.0) record(traj, eng, y, samples[i++], opt, keep);
    while (i < samples.size()) {
        dense.do_step(eng.rhs);
        ++traj.steps;
        const double dt = dense.current_time_step();
        if (dt < opt.min_step && dense.current_time() < samples.back())
            throw StiffnessError(stiffness_message(dt, opt.min_step, dense.current_time(), eng.fastest));
        while (i < samples.size() && samples[i] <= dense.current_time()) {
            dense.calc_state(samples[i], tmp);
            record(traj, eng, tmp, samples[i], opt, keep);
            ++i;
        }
    }
}

void run_rk4(const Engine& eng, State y, const std::vector<double>& samples, const IntegratorOptions& opt,
             Trajectory& traj, bool keep) {
    odeint::runge_kutta4<State> stepper;
    const double h = opt.fixed_step;
    double t = 0.0;
    std::size_t i = 0;
    while (i < samples.size() && samples[i] <= 0.0) record(traj, eng, y, samples[i++], opt, keep);
    while (i < samples.size()) {
        // Land exactly on sample times.
        const double target = samples[i];
        while (t < target - 1e-12 * std::max(1.0, target)) {
            const double step = std::min(h, target - t);
            stepper.do_step(eng.rhs, y, t, step);
            t += step;
            ++traj.steps;
        }
        t = target;
        record(traj, eng, y, t, opt, keep);
        ++i;
    }
}

State to_state(const Eigen::VectorXcd& v) { return State(v.data(), v.data() + v.size()); }

Operator density_of(const State& y, Eigen::Index dim) {
    return Eigen::Map<const Operator>(y.data(), dim, dim);
}

// Normalized projector; the norm drift is reported separately as the trace error.
Operator pure_density(const State& y) {
    ConstVecMap psi(y.data(), static_cast<Eigen::Index>(y.size()));
    return psi * psi.adjoint() / psi.squaredNorm();
}

double norm_drift(const State& y) {
    return std::abs(ConstVecMap(y.data(), static_cast<Eigen::Index>(y.size())).squaredNorm() - 1.0);
}

}  // namespace

Trajectory integrate(const EvolutionProblem& problem, const IntegratorOptions& options) {
    if (!problem.basis) throw InputError("evolution: missing dressed basis");
    const DressedBasis& basis = *problem.basis;
    const Eigen::Index d = basis.dim();
    if (!(problem.t_end > 0.0)) throw InputError("evolution: t_end must be positive");
    validate(problem.rates);

    std::vector<double> samples = problem.sample_times.empty() ? uniform_samples(problem.t_end, 201)
                                                                : problem.sample_times;
    std::sort(samples.begin(), samples.end());
    if (samples.front() < 0.0 || samples.back() > problem.t_end * (1.0 + 1e-12))
        throw InputError("evolution: sample times must lie in [0, t_end]");

    if (std::holds_alternative<std::monostate>(problem.initial)) throw InputError("evolution: missing initial state");
    const bool pure_initial = std::holds_alternative<PureState>(problem.initial);
    const bool density = !(pure_initial && problem.dissipator == DissipatorKind::none);
    Operator rho0;
    StateVector psi0;
    if (pure_initial) {
        const auto& psi = std::get<PureState>(problem.initial);
        if (psi.dim() != d) throw DimensionMismatch("evolution: initial state dimension differs from the space");
        psi0 = psi.amplitudes();
        rho0 = psi0 * psi0.adjoint();
    } else {
        const auto& rho = std::get<DensityMatrix>(problem.initial);
        if (rho.dim() != d) throw DimensionMismatch("evolution: initial state dimension differs from the space");
        rho0 = rho.matrix();
    }

    const Operator& T = basis.transform();
    const Eigen::VectorXd energies = basis.energies();
    Engine eng;
    eng.density = density;
    eng.dim = d;
    double max_step = options.max_step;
    State y0;

    if (problem.frame == Frame::lab) {
        const OperatorSet ops = bare_operators(basis.space());
        auto rabi = std::make_shared<RabiHamiltonian>(basis.params(), problem.schedule, ops);
        std::function<Operator(double)> ham = problem.hamiltonian;
        if (!ham) ham = [rabi](double t) { return rabi->at(t); };
        const double eta = problem.schedule.max_frequency();
        eng.fastest = std::max(eta, std::abs(basis.params().omega0) + std::abs(basis.params().Omega0));
        if (eta > 0.0) {
            const double bound = 2.0 * M_PI / (50.0 * eta);
            const double requested = options.method == Method::fixed_rk4 ? options.fixed_step : options.max_step;
            if (requested > bound * (1.0 + 1e-12)) {
                std::ostringstream os;
                os << "evolution: step " << requested << " exceeds 2π/(50η) = " << bound
                   << " for the fastest modulation tone";
                throw InputError(os.str());
            }
            if (max_step <= 0.0) max_step = bound;
        }
        std::shared_ptr<Superop> diss;
        if (problem.dissipator == DissipatorKind::sme) {
            diss = std::make_shared<Superop>(sme_superop(ops, problem.rates));
        } else if (problem.dissipator == DissipatorKind::dpme) {
            const auto dr =
                dpme_rates(basis, transition_tables(basis, ops), SpectralDensityPolicy::flat_positive(problem.rates));
            diss = std::make_shared<Superop>(dpme_superop_bare(basis, dr));
        }
        if (density) {
            y0 = to_state(vectorize(rho0));
            eng.rhs = [ham, diss, d](const State& x, State& dx, double t) {
                const Operator h = ham(t);
                Eigen::Map<const Operator> rho(x.data(), d, d);
                Eigen::Map<Operator> drho(dx.data(), d, d);
                Operator hr = h * rho;
                drho.noalias() = cplx(0.0, -1.0) * (hr - hr.adjoint());
                if (diss) {
                    VecMap out(dx.data(), d * d);
                    out.noalias() += (*diss) * ConstVecMap(x.data(), d * d);
                }
            };
            eng.observe = [T, d](const State& y, double, Operator* keep) {
                Operator rho = density_of(y, d);
                if (keep) *keep = rho;
                return ncqed::observe(rho, T.adjoint() * rho * T);
            };
        } else {
            y0 = to_state(psi0);
            if (problem.hamiltonian) {
                eng.rhs = [ham, d](const State& x, State& dx, double t) {
                    VecMap(dx.data(), d).noalias() = cplx(0.0, -1.0) * (ham(t) * ConstVecMap(x.data(), d));
                };
            } else {
                eng.rhs = [rabi, d](const State& x, State& dx, double t) {
                    VecMap out(dx.data(), d);
                    rabi->apply(t, ConstVecMap(x.data(), d), out);
                    out *= cplx(0.0, -1.0);
                };
            }
            eng.observe = [T](const State& y, double, Operator* keep) {
                Operator rho = pure_density(y);
                if (keep) *keep = rho;
                ObservableRecord r = ncqed::observe(rho, T.adjoint() * rho * T);
                r.trace_err = norm_drift(y);
                return r;
            };
        }
    } else {
        eng.fastest = problem.effective_hamiltonian.max_frequency();
        const bool exact = !std::isfinite(problem.secular_cutoff);
        if (density) {
            auto gen = std::make_shared<PhasedSuperop>(interaction_generator(
                basis, problem.effective_hamiltonian, exact ? DissipatorKind::none : problem.dissipator,
                problem.rates, problem.secular_cutoff));
            std::shared_ptr<RotatingDissipator> rot;
            if (exact && problem.dissipator != DissipatorKind::none) {
                rot = std::make_shared<RotatingDissipator>();
                const OperatorSet ops = bare_operators(basis.space());
                if (problem.dissipator == DissipatorKind::sme) {
                    rot->dressed = kron(T.transpose(), T.adjoint(), 1e-15) * sme_superop(ops, problem.rates) *
                                   kron(T.conjugate(), T, 1e-15);
                    rot->dressed.prune(cplx(0.0, 0.0), 1e-14);
                } else {
                    rot->dressed = dpme_superop_dressed(dpme_rates(basis, transition_tables(basis, ops),
                                                                   SpectralDensityPolicy::flat_positive(problem.rates)));
                }
                rot->omega.resize(d * d);
                for (Eigen::Index b = 0; b < d; ++b)
                    for (Eigen::Index a = 0; a < d; ++a) rot->omega(a + d * b) = energies(a) - energies(b);
                eng.fastest = std::max(eng.fastest, rot->omega.cwiseAbs().maxCoeff());
            }
            eng.fastest = std::max(eng.fastest, gen->max_frequency());
            y0 = to_state(vectorize(T.adjoint() * rho0 * T));
            const Eigen::Index n = d * d;
            eng.rhs = [gen, rot, n](const State& x, State& dx, double t) {
                ConstVecMap v(x.data(), n);
                VecMap out(dx.data(), n);
                if (gen->components().empty()) out.setZero();
                else gen->apply(t, v, out);
                if (rot) rot->apply_add(t, v, out);
            };
            eng.observe = [T, energies, d](const State& y, double t, Operator* keep) {
                const Operator tilde = density_of(y, d);
                const Operator dressed_lab = rotate_dressed(tilde, energies, t, FrameDirection::to_lab);
                Operator bare = T * dressed_lab * T.adjoint();
                ObservableRecord r = ncqed::observe(bare, dressed_lab);
                if (keep) *keep = std::move(bare);
                return r;
            };
        } else {
            auto h = std::make_shared<PhasedOperator>(problem.effective_hamiltonian);
            y0 = to_state(T.adjoint() * psi0);
            eng.rhs = [h, d](const State& x, State& dx, double t) {
                VecMap out(dx.data(), d);
                if (h->terms.empty()) {
                    out.setZero();
                    return;
                }
                out.noalias() = cplx(0.0, -1.0) * (h->at(t) * ConstVecMap(x.data(), d));
            };
            eng.observe = [T, energies, d](const State& y, double t, Operator* keep) {
                const Operator tilde = pure_density(y);
                const Operator dressed_lab = rotate_dressed(tilde, energies, t, FrameDirection::to_lab);
                Operator bare = T * dressed_lab * T.adjoint();
                ObservableRecord r = ncqed::observe(bare, dressed_lab);
                r.trace_err = norm_drift(y);
                if (keep) *keep = std::move(bare);
                return r;
            };
        }
    }

    Trajectory traj;
    if (options.method == Method::fixed_rk4) {
        if (!(options.fixed_step > 0.0)) throw InputError("evolution: fixed_rk4 needs a positive fixed_step");
        run_rk4(eng, std::move(y0), samples, options, traj, problem.keep_states);
    } else {
        run_adaptive(eng, std::move(y0), samples, options, max_step, traj, problem.keep_states);
    }
    return traj;
}

}  // namespace ncqed
