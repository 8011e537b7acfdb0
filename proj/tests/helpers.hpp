// helpers.hpp: shared fixtures for the unit tests

#pragma once

#include "ncqed/effective.hpp"

#include <random>

namespace testing {

using namespace ncqed;

inline ncqed::Operator random_density(Eigen::Index d, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Operator m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cplx(n(rng), n(rng));
    Operator rho = m * m.adjoint();
    return rho / rho.trace().real();
}

inline SystemParams resonant_params() {
    SystemParams p;  // ω₀ = Ω₀ = 20 g₀
    return p;
}

inline SystemParams dispersive_params() {
    SystemParams p;
    p.Omega0 = 12.0;  // Δ₋ = 8 g₀
    return p;
}

}  // namespace testing
