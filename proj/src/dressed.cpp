#include "ncqed/dressed.hpp"

#include "ncqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncqed {

std::string DressedLabel::str() const {
    if (s == Branch::top) return "top";
    return std::to_string(n) + (s == Branch::plus ? "+" : "-");
}

double splitting(const SystemParams& p, int n) {
    const double d = p.delta_minus();
    return std::sqrt(d * d + 4.0 * p.g0 * p.g0 * n);
}

double mixing_angle(const SystemParams& p, int n) {
    if (n < 0) throw InputError("mixing_angle: negative excitation number");
    if (n == 0) return 0.0;
    const double d = p.delta_minus();
    const double beta = splitting(p, n);
    const double four_g2n = 4.0 * p.g0 * p.g0 * n;
    // Δ₋ + β_n without cancellation when Δ₋ < 0.
    const double num = d >= 0.0 ? d + beta : four_g2n / (beta - d);
    return std::atan2(num, 2.0 * p.g0 * std::sqrt(static_cast<double>(n)));
}

double dressed_energy(const SystemParams& p, int n, Branch s) {
    if (n < 0 || s == Branch::top) throw InputError("dressed_energy: invalid label");
    if (n == 0) {
        if (s == Branch::plus) throw InputError("dressed_energy: |phi_{0,+}> is not a state");
        return 0.0;
    }
    return p.omega0 * n - 0.5 * p.delta_minus() + 0.5 * sign_of(s) * splitting(p, n);
}

PureState dressed_vector(const HilbertSpace& space, const SystemParams& p, int n, Branch s) {
    if (n < 0 || n > space.n_max()) throw InvalidTruncation("dressed_vector: n outside truncated space");
    if (s == Branch::top) throw InputError("dressed_vector: use the bare |e,n_max> for the top level");
    if (n == 0 && s == Branch::plus) throw InputError("dressed_vector: |phi_{0,+}> is not a state");
    StateVector v = StateVector::Zero(space.dim());
    const double th = mixing_angle(p, n);
    if (n == 0) {
        v(space.index(0, Qubit::g)) = 1.0;
    } else if (s == Branch::minus) {
        v(space.index(n, Qubit::g)) = std::cos(th);
        v(space.index(n - 1, Qubit::e)) = -std::sin(th);
    } else {
        v(space.index(n, Qubit::g)) = std::sin(th);
        v(space.index(n - 1, Qubit::e)) = std::cos(th);
    }
    return PureState(std::move(v));
}

namespace {
std::size_t lookup_slot(int n, Branch s) {
    if (s == Branch::top) return 0;
    return 1 + 2 * static_cast<std::size_t>(n) + (s == Branch::plus ? 1 : 0);
}
}  // namespace

DressedBasis::DressedBasis(const HilbertSpace& space, const SystemParams& p) : space_(space), params_(p) {
    const int nmax = space.n_max();
    for (int n = 0; n <= nmax; ++n) {
        angles_.push_back(mixing_angle(p, n));
        betas_.push_back(splitting(p, n));
    }
    std::vector<DressedLevel> regular;
    regular.push_back({{0, Branch::minus}, 0.0});
    for (int n = 1; n <= nmax; ++n) {
        regular.push_back({{n, Branch::minus}, dressed_energy(p, n, Branch::minus)});
        regular.push_back({{n, Branch::plus}, dressed_energy(p, n, Branch::plus)});
    }
    std::stable_sort(regular.begin(), regular.end(),
                     [](const DressedLevel& x, const DressedLevel& y) { return x.energy < y.energy; });
    levels_ = std::move(regular);
    levels_.push_back({{nmax + 1, Branch::top}, p.omega0 * nmax + p.Omega0});

    lookup_.assign(2 * static_cast<std::size_t>(nmax) + 3, -1);
    transform_ = Operator::Zero(space.dim(), space.dim());
    for (std::size_t l = 0; l < levels_.size(); ++l) {
        const auto& lab = levels_[l].label;
        lookup_[lookup_slot(lab.n, lab.s)] = static_cast<Eigen::Index>(l);
        if (lab.s == Branch::top) {
            transform_(space.index(nmax, Qubit::e), static_cast<Eigen::Index>(l)) = 1.0;
        } else {
            transform_.col(static_cast<Eigen::Index>(l)) = dressed_vector(space, p, lab.n, lab.s).amplitudes();
        }
    }
}

Eigen::Index DressedBasis::index_of(DressedLabel label) const {
    if (label.s == Branch::top) return static_cast<Eigen::Index>(levels_.size()) - 1;
    if (label.n < 0 || label.n > space_.n_max() || (label.n == 0 && label.s == Branch::plus)) {
        throw InvalidTruncation("dressed level " + label.str() + " outside truncated space");
    }
    return lookup_[lookup_slot(label.n, label.s)];
}

Eigen::VectorXd DressedBasis::energies() const {
    Eigen::VectorXd e(static_cast<Eigen::Index>(levels_.size()));
    for (std::size_t l = 0; l < levels_.size(); ++l) e(static_cast<Eigen::Index>(l)) = levels_[l].energy;
    return e;
}

DressedBasis build_dressed_basis(const HilbertSpace& space, const SystemParams& p) { return DressedBasis(space, p); }

TransitionTables transition_tables(const DressedBasis& basis, const OperatorSet& ops) {
    if (ops.a.rows() != basis.dim()) throw DimensionMismatch("transition_tables: operator set from another space");
    TransitionTables t;
    const Eigen::VectorXd e = basis.energies();
    const auto d = basis.dim();
    t.delta.resize(d, d);
    for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index k = 0; k < d; ++k) t.delta(l, k) = e(k) - e(l);
    t.a = basis.to_dressed(ops.a + ops.a_dag).real();
    t.sx = basis.to_dressed(ops.sigma_plus + ops.sigma_minus).real();
    t.sz = basis.to_dressed(ops.sigma_z).real();
    return t;
}

}  // namespace ncqed
