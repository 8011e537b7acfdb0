#include "ncqed/superop.hpp"

#include "ncqed/errors.hpp"

#include <cmath>
#include <map>

namespace ncqed {

SuperVector vectorize(const Operator& rho) {
    return Eigen::Map<const SuperVector>(rho.data(), rho.size());
}

Operator unvectorize(const Eigen::Ref<const SuperVector>& v, Eigen::Index dim) {
    if (v.size() != dim * dim) throw DimensionMismatch("unvectorize: size is not dim^2");
    Operator rho(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) rho(i, j) = v(i + dim * j);
    return rho;
}

Superop kron(const Operator& a, const Operator& b, double drop_tol) {
    std::vector<Eigen::Triplet<cplx>> trips;
    const auto br = b.rows(), bc = b.cols();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const cplx x = a(i, j);
            if (std::abs(x) <= drop_tol) continue;
            for (Eigen::Index k = 0; k < br; ++k) {
                for (Eigen::Index l = 0; l < bc; ++l) {
                    const cplx y = x * b(k, l);
                    if (std::abs(y) > drop_tol) trips.emplace_back(i * br + k, j * bc + l, y);
                }
            }
        }
    }
    Superop s(a.rows() * br, a.cols() * bc);
    s.setFromTriplets(trips.begin(), trips.end());
    return s;
}

Superop left_multiply(const Operator& a) {
    return kron(Operator::Identity(a.rows(), a.cols()), a);
}

Superop right_multiply(const Operator& b) {
    return kron(b.transpose(), Operator::Identity(b.rows(), b.cols()));
}

Superop commutator_generator(const Operator& h) {
    Superop s = left_multiply(h) - right_multiply(h);
    return cplx(0.0, -1.0) * s;
}

Superop lindblad(const Operator& op, double rate) {
    const Operator od = op.adjoint() * op;
    Superop s = kron(op.conjugate(), op) - 0.5 * left_multiply(od) - 0.5 * right_multiply(od);
    s *= rate;
    s.prune(cplx(0.0), 0.0);
    return s;
}

Superop to_bare_superop(const Superop& dressed, const Operator& transform) {
    const Superop to_bare = kron(transform.conjugate(), transform, 1e-15);
    const Superop to_dressed = kron(transform.transpose(), transform.adjoint(), 1e-15);
    Superop s = to_bare * dressed * to_dressed;
    s.prune(cplx(0.0), 1e-15);
    return s;
}

void PhasedSuperop::add(double frequency, const Superop& op) {
    if (vec_dim_ == 0) vec_dim_ = op.rows();
    if (op.rows() != vec_dim_ || op.cols() != vec_dim_) throw DimensionMismatch("PhasedSuperop: size mismatch");
    for (auto& c : components_) {
        if (c.frequency == frequency) {
            c.op += op;
            return;
        }
    }
    components_.push_back({frequency, op});
}

void PhasedSuperop::add(const PhasedSuperop& other) {
    for (const auto& c : other.components_) add(c.frequency, c.op);
}

void PhasedSuperop::apply(double t, const Eigen::Ref<const SuperVector>& v, Eigen::Ref<SuperVector> out) const {
    out.setZero();
    for (const auto& c : components_) {
        if (c.frequency == 0.0) {
            out.noalias() += c.op * v;
        } else {
            out.noalias() += std::polar(1.0, c.frequency * t) * (c.op * v);
        }
    }
}

bool PhasedSuperop::time_independent() const noexcept {
    for (const auto& c : components_)
        if (c.frequency != 0.0) return false;
    return true;
}

Superop PhasedSuperop::static_part() const {
    Superop s(vec_dim_, vec_dim_);
    for (const auto& c : components_)
        if (c.frequency == 0.0) s += c.op;
    return s;
}

Eigen::MatrixXcd PhasedSuperop::dense() const {
    if (!time_independent()) throw InputError("PhasedSuperop::dense: generator is time dependent");
    return Eigen::MatrixXcd(static_part());
}

double PhasedSuperop::max_frequency() const noexcept {
    double m = 0.0;
    for (const auto& c : components_) m = std::max(m, std::abs(c.frequency));
    return m;
}

PhasedSuperop interaction_picture(const Superop& dressed, const Eigen::VectorXd& energies, double cutoff,
                                  double resolution) {
    const Eigen::Index d = energies.size();
    if (dressed.rows() != d * d) throw DimensionMismatch("interaction_picture: energies do not match superop");
    std::map<long long, std::vector<Eigen::Triplet<cplx>>> buckets;
    std::map<long long, double> bucket_freq;
    for (Eigen::Index row = 0; row < dressed.outerSize(); ++row) {
        const Eigen::Index a = row % d, b = row / d;
        for (Superop::InnerIterator it(dressed, row); it; ++it) {
            const Eigen::Index c = it.col() % d, dd = it.col() / d;
            const double f = (energies(a) - energies(b)) - (energies(c) - energies(dd));
            if (std::abs(f) > cutoff) continue;
            const long long key = std::llround(f / resolution);
            buckets[key].emplace_back(row, it.col(), it.value());
            bucket_freq.try_emplace(key, key == 0 ? 0.0 : f);
        }
    }
    PhasedSuperop out(d * d);
    for (auto& [key, trips] : buckets) {
        Superop s(d * d, d * d);
        s.setFromTriplets(trips.begin(), trips.end());
        out.add(bucket_freq[key], s);
    }
    return out;
}

}  // namespace ncqed
