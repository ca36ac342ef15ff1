#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "demazure/fgl.hpp"
#include "demazure/rootdata.hpp"

namespace demazure {

struct FGAOptions {
    int prec = 8;                 // working degree of every series in the context
    bool cross_check = false;     // recompute each Demazure value by division
    std::size_t weyl_cap = 1200;
};

// Root whose x_alpha has a linear part with non-unit content, so that its
// regularity in S depends on the coefficient ring.
struct RegularityAdvisory {
    int root = 0;
    Int content;
    bool content_regular = true;
};

// S = R[[Lambda]]_F in the coordinates x_i = x_{L_i} of the lattice basis.
// All series of the context have rank() variables and precision <= prec().
class FGAContext {
public:
    // The law must be built at precision at least opts.prec + 2.
    static std::shared_ptr<const FGAContext> create(DatumPtr datum, LawPtr law, FGAOptions opts = {});

    const RootDatum& datum() const { return *datum_; }
    DatumPtr datum_ptr() const { return datum_; }
    const WeylGroup& weyl() const { return *weyl_; }
    WeylPtr weyl_ptr() const { return weyl_; }
    const FormalGroupLaw& law() const { return *law_; }
    LawPtr law_ptr() const { return law_; }
    RingPtr ring() const { return law_->ring(); }
    int rank() const { return datum_->rank(); }
    int prec() const { return opts_.prec; }
    const FGAOptions& options() const { return opts_; }

    TruncSeries zero() const { return TruncSeries::zero(ring(), rank(), prec()); }
    TruncSeries one() const { return TruncSeries::one(ring(), rank(), prec()); }
    TruncSeries constant(const RingElem& c) const { return TruncSeries::constant(ring(), rank(), prec(), c); }
    TruncSeries coordinate(int i) const { return TruncSeries::variable(ring(), rank(), prec(), i); }
    std::vector<std::string> coordinate_names() const;

    // x_lambda for lambda in lattice coordinates.
    TruncSeries x_of(const Weight& lambda) const;
    const TruncSeries& x_root(int root) const { return x_roots_[static_cast<std::size_t>(root)]; }
    // x_{-gamma} = x_gamma * unit, for a positive root gamma; the unit has constant term -1.
    const TruncSeries& neg_unit(int root) const { return neg_unit_[static_cast<std::size_t>(root)]; }
    const TruncSeries& neg_unit_inverse(int root) const { return neg_unit_inv_[static_cast<std::size_t>(root)]; }
    // x_alpha^k for a positive root, k >= 0.
    TruncSeries x_root_power(int root, int k) const;

    TruncSeries reflect(int root, const TruncSeries& u) const;
    TruncSeries weyl_act(int w, const TruncSeries& u) const;
    // Division-free Delta_alpha; precision drops by one.
    TruncSeries demazure(int root, const TruncSeries& u) const;
    // (u - s_alpha u) / x_alpha by series division; throws NotDivisible.
    TruncSeries demazure_by_division(int root, const TruncSeries& u) const;
    // B_i^{(j)} for a simple index i and j in {-1, 0, 1}.
    TruncSeries b_op(int i, int j, const TruncSeries& u) const;
    // Delta_{i_1} o ... o Delta_{i_l}, letters 0-based simple indices.
    TruncSeries demazure_seq(const std::vector<int>& word, const TruncSeries& u) const;
    // p^I_{E1,E2} = B_1 o ... o B_l (1); bit j of a mask marks position j.
    TruncSeries p_coeff(const std::vector<int>& word, uint32_t e1, uint32_t e2) const;
    TruncSeries kappa(int root) const;
    RingElem augmentation(const TruncSeries& u) const { return u.constant_term(); }

    // Divider by x_alpha (positive root), or nullptr when the linear part of
    // x_alpha does not permit one.
    const LinearDivider* divider(int root) const;
    const std::vector<RegularityAdvisory>& advisories() const { return advisories_; }

    const MonomialOperator& reflection_operator(int root) const;
    const MonomialOperator& demazure_operator(int root) const;

    FGAContext(DatumPtr datum, LawPtr law, FGAOptions opts);

private:
    DatumPtr datum_;
    WeylPtr weyl_;
    LawPtr law_;
    FGAOptions opts_;
    std::vector<TruncSeries> x_roots_;
    std::vector<TruncSeries> neg_unit_;
    std::vector<TruncSeries> neg_unit_inv_;
    std::vector<std::optional<LinearDivider>> dividers_;
    std::vector<RegularityAdvisory> advisories_;

    mutable std::mutex x_mu_;
    mutable std::mutex refl_mu_;
    mutable std::mutex dem_mu_;
    mutable std::map<Weight, TruncSeries> x_cache_;
    mutable std::map<int, std::shared_ptr<const MonomialOperator>> refl_ops_;
    mutable std::map<int, std::shared_ptr<const MonomialOperator>> dem_ops_;

    TruncSeries compute_x(const Weight& lambda) const;
    TruncSeries embed(const TruncSeries& univariate, int var) const;
    std::shared_ptr<const MonomialOperator> build_reflection(int root) const;
    std::shared_ptr<const MonomialOperator> build_demazure(int root) const;
};

using ContextPtr = std::shared_ptr<const FGAContext>;

// Seeded sample element: `terms` monomials of degree <= max_degree with
// coefficients in [-3, 3] (times a ring variable half the time over Poly rings).
TruncSeries sample_series(const FGAContext& ctx, std::mt19937_64& rng, int terms, int max_degree);

}  // namespace demazure
