// dressed.hpp: Jaynes–Cummings dressed basis and transition tables
//
// |φ_{n,S}⟩ = s_{n,S}|g,n⟩ + c_{n,S}|e,n−1⟩ with s_{n,−} = c_{n,+} = cos θ_n and
// s_{n,+} = −c_{n,−} = sin θ_n. Levels are indexed by increasing energy; the bare
// state |e,n_max⟩, which has no partner inside the truncation, is always last.

#pragma once

#include "ncqed/hilbert.hpp"
#include "ncqed/model.hpp"

#include <string>
#include <vector>

namespace ncqed {

enum class Branch : int { minus = -1, top = 0, plus = 1 };

inline int sign_of(Branch b) noexcept { return static_cast<int>(b); }
inline Branch flip(Branch b) noexcept {
    return b == Branch::plus ? Branch::minus : (b == Branch::minus ? Branch::plus : Branch::top);
}
inline Branch branch_from_sign(int s) { return s > 0 ? Branch::plus : Branch::minus; }

struct DressedLabel {
    int n{0};
    Branch s{Branch::minus};

    bool operator==(const DressedLabel&) const = default;
    std::string str() const;  // "0-", "2+", "top"
};

double splitting(const SystemParams& p, int n);       // β_n
double mixing_angle(const SystemParams& p, int n);    // θ_n
double dressed_energy(const SystemParams& p, int n, Branch s);
PureState dressed_vector(const HilbertSpace& space, const SystemParams& p, int n, Branch s);

struct DressedLevel {
    DressedLabel label;
    double energy{};
};

class DressedBasis {
public:
    DressedBasis(const HilbertSpace& space, const SystemParams& p);

    const HilbertSpace& space() const noexcept { return space_; }
    const SystemParams& params() const noexcept { return params_; }
    Eigen::Index dim() const noexcept { return space_.dim(); }

    double angle(int n) const { return angles_.at(static_cast<std::size_t>(n)); }
    double beta(int n) const { return betas_.at(static_cast<std::size_t>(n)); }

    const std::vector<DressedLevel>& levels() const noexcept { return levels_; }
    const DressedLevel& level(Eigen::Index l) const { return levels_.at(static_cast<std::size_t>(l)); }
    Eigen::Index index_of(DressedLabel label) const;
    Eigen::Index index_of(int n, Branch s) const { return index_of(DressedLabel{n, s}); }
    Eigen::VectorXd energies() const;

    // Columns are dressed vectors in the bare basis, ordered by level index.
    const Operator& transform() const noexcept { return transform_; }
    Operator to_dressed(const Operator& bare) const { return transform_.adjoint() * bare * transform_; }
    Operator to_bare(const Operator& dressed) const { return transform_ * dressed * transform_.adjoint(); }

private:
    HilbertSpace space_;
    SystemParams params_;
    std::vector<double> angles_;
    std::vector<double> betas_;
    std::vector<DressedLevel> levels_;
    std::vector<Eigen::Index> lookup_;  // (n, branch) → level index
    Operator transform_;
};

DressedBasis build_dressed_basis(const HilbertSpace& space, const SystemParams& p);

// Matrix elements between dressed levels, indexed (l, k) by level index.
struct TransitionTables {
    Eigen::MatrixXd delta;  // Δ_kl = λ_k − λ_l stored at (l, k)
    Eigen::MatrixXd a;      // ⟨l|(â+â†)|k⟩
    Eigen::MatrixXd sx;     // ⟨l|(σ̂₊+σ̂₋)|k⟩
    Eigen::MatrixXd sz;     // ⟨l|σ̂_z|k⟩
};

TransitionTables transition_tables(const DressedBasis& basis, const OperatorSet& ops);

}  // namespace ncqed
