#include "ncqed/observables.hpp"

#include "ncqed/errors.hpp"

#include <cmath>

namespace ncqed {

namespace {

int n_max_of(Eigen::Index dim) { return static_cast<int>(dim / 2) - 1; }

Eigen::VectorXd photon_marginal(const Operator& rho) {
    const auto nmax = n_max_of(rho.rows());
    Eigen::VectorXd p(nmax + 1);
    for (int n = 0; n <= nmax; ++n) p(n) = rho(2 * n, 2 * n).real() + rho(2 * n + 1, 2 * n + 1).real();
    return p;
}

struct Moments {
    double n1{}, n2{}, pe{};
};

Moments moments(const Operator& rho) {
    Moments m;
    const auto nmax = n_max_of(rho.rows());
    for (int n = 0; n <= nmax; ++n) {
        const double pg = rho(2 * n, 2 * n).real();
        const double pe = rho(2 * n + 1, 2 * n + 1).real();
        m.n1 += n * (pg + pe);
        m.n2 += double(n) * n * (pg + pe);
        m.pe += pe;
    }
    return m;
}

std::optional<double> mandel_from(const Moments& m) {
    if (m.n1 < 1e-12) return std::nullopt;
    return (m.n2 - m.n1 * m.n1 - m.n1) / m.n1;
}

}  // namespace

double mean_photon(const DensityMatrix& rho) { return moments(rho.matrix()).n1; }

double excitation_probability(const DensityMatrix& rho) { return moments(rho.matrix()).pe; }

std::optional<double> mandel_q(const DensityMatrix& rho) { return mandel_from(moments(rho.matrix())); }

Eigen::VectorXd photon_distribution(const DensityMatrix& rho) { return photon_marginal(rho.matrix()); }

Eigen::VectorXd dressed_populations_from_dressed(const Operator& rho_dressed) {
    return rho_dressed.diagonal().real();
}

Eigen::VectorXd dressed_populations(const DensityMatrix& rho, const DressedBasis& basis) {
    if (rho.dim() != basis.dim()) throw DimensionMismatch("dressed_populations: dimension mismatch");
    const Operator& t = basis.transform();
    // diag(T† ρ T) without forming the full product
    Eigen::VectorXd pops(basis.dim());
    const Operator rt = rho.matrix() * t;
    for (Eigen::Index l = 0; l < basis.dim(); ++l) pops(l) = t.col(l).dot(rt.col(l)).real();
    return pops;
}

Diagnostics diagnostics(const DensityMatrix& rho) {
    const Operator& m = rho.matrix();
    Diagnostics d;
    d.trace_err = std::abs(m.trace() - 1.0);
    d.hermiticity_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
    const Operator herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> es(herm, Eigen::EigenvaluesOnly);
    d.min_eig = es.eigenvalues().minCoeff();
    d.top_fock_pop = photon_marginal(m)(n_max_of(m.rows()));
    d.purity = (m * m).trace().real();
    return d;
}

ObservableRecord observe(const Operator& rho_bare, const Operator& rho_dressed) {
    ObservableRecord r;
    const Moments m = moments(rho_bare);
    r.mean_n = m.n1;
    r.p_e = m.pe;
    r.mandel_q = mandel_from(m);
    r.dressed_pops = dressed_populations_from_dressed(rho_dressed);
    const Diagnostics d = diagnostics(DensityMatrix::unchecked(rho_bare));
    r.trace_err = d.trace_err;
    r.min_eig = d.min_eig;
    r.top_fock_pop = d.top_fock_pop;
    r.purity = d.purity;
    return r;
}

}  // namespace ncqed
