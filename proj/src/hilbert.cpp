#include "ncqed/hilbert.hpp"

#include "ncqed/errors.hpp"

#include <cmath>
#include <sstream>

namespace ncqed {

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
    if (n_max < 2) {
        std::ostringstream msg;
        msg << "invalid truncation: n_max = " << n_max << " (need n_max >= 2)";
        throw InvalidTruncation(msg.str());
    }
}

Eigen::Index HilbertSpace::index(int n, Qubit q) const {
    if (n < 0 || n > n_max_) {
        throw InvalidTruncation("photon number outside truncated space");
    }
    return 2 * static_cast<Eigen::Index>(n) + static_cast<int>(q);
}

HilbertSpace build_space(int n_max) { return HilbertSpace(n_max); }

OperatorSet bare_operators(const HilbertSpace& space) {
    const auto d = space.dim();
    OperatorSet ops;
    ops.a = Operator::Zero(d, d);
    ops.sigma_minus = Operator::Zero(d, d);
    ops.sigma_z = Operator::Zero(d, d);
    for (int n = 0; n <= space.n_max(); ++n) {
        for (Qubit q : {Qubit::g, Qubit::e}) {
            const auto i = space.index(n, q);
            if (n < space.n_max()) {
                ops.a(i, space.index(n + 1, q)) = std::sqrt(static_cast<double>(n + 1));
            }
            ops.sigma_z(i, i) = q == Qubit::e ? 1.0 : -1.0;
        }
        ops.sigma_minus(space.index(n, Qubit::g), space.index(n, Qubit::e)) = 1.0;
    }
    ops.a_dag = ops.a.adjoint();
    ops.n = ops.a_dag * ops.a;
    ops.sigma_plus = ops.sigma_minus.adjoint();
    ops.excited_projector = ops.sigma_plus * ops.sigma_minus;
    ops.identity = Operator::Identity(d, d);
    return ops;
}

PureState::PureState(StateVector amplitudes) : amps_(std::move(amplitudes)) {
    if (std::abs(amps_.norm() - 1.0) > 1e-12) {
        throw InputError("pure state is not normalized");
    }
}

PureState PureState::basis(const HilbertSpace& space, int n, Qubit q) {
    StateVector v = StateVector::Zero(space.dim());
    v(space.index(n, q)) = 1.0;
    return PureState(std::move(v));
}

PureState PureState::normalized(StateVector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw InputError("cannot normalize the zero vector");
    }
    return PureState(amplitudes / norm);
}

DensityMatrix::DensityMatrix(Operator rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) {
        throw DimensionMismatch("density matrix must be square");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InputError("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - 1.0) > 1e-10) {
        throw InputError("density matrix trace differs from one");
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw InputError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    const auto& v = psi.amplitudes();
    return DensityMatrix(Operator(v * v.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
    const auto d = space.dim();
    return DensityMatrix(Operator(Operator::Identity(d, d) / static_cast<double>(d)));
}

DensityMatrix DensityMatrix::unchecked(Operator rho) { return DensityMatrix(std::move(rho), Unchecked{}); }

PureState coherent_state(const HilbertSpace& space, cplx alpha) {
    const double mean_n = std::norm(alpha);
    if (mean_n > space.n_max() / 4.0) {
        std::ostringstream msg;
        msg << "coherent state |alpha|^2 = " << mean_n << " too large for n_max = " << space.n_max()
            << "; use n_max >= " << static_cast<int>(std::ceil(4.0 * mean_n));
        throw InvalidTruncation(msg.str());
    }
    StateVector v = StateVector::Zero(space.dim());
    const double log_abs = mean_n > 0.0 ? std::log(std::abs(alpha)) : 0.0;
    const double phase = std::arg(alpha);
    for (int n = 0; n <= space.n_max(); ++n) {
        double mag;
        if (mean_n == 0.0) {
            mag = n == 0 ? 1.0 : 0.0;
        } else {
            mag = std::exp(n * log_abs - 0.5 * std::lgamma(n + 1.0));
        }
        v(space.index(n, Qubit::g)) = std::polar(mag, n * phase);
    }
    return PureState::normalized(std::move(v));
}

cplx expectation(const DensityMatrix& rho, const Operator& op) {
    if (rho.dim() != op.rows() || op.rows() != op.cols()) {
        throw DimensionMismatch("expectation: operator and state dimensions differ");
    }
    return (rho.matrix() * op).trace();
}

double expectation_real(const DensityMatrix& rho, const Operator& op) {
    const cplx v = expectation(rho, op);
    if (std::abs(v.imag()) > 1e-10) {
        throw InputError("expectation_real: operator is not Hermitian");
    }
    return v.real();
}

}  // namespace ncqed
