#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "demazure/twistedalgebra.hpp"

namespace demazure {

// sum c_w X_{I_w} with every c_w certified in S.
struct DFElem {
    std::map<int, TruncSeries> coeffs;
    int certified(int cap) const;
};

// sigma^{u,v}_w for one w: Delta(X_{I_w}) = sum sigma^{u,v}_w X_{I_u} (x) X_{I_v}.
using CoproductSlice = std::map<std::pair<int, int>, TruncSeries>;

struct CoproductTable {
    std::vector<std::vector<int>> words;  // basis words, 0-based letters
    std::vector<CoproductSlice> slices;   // indexed by w
    // Zero series at precision `prec` when the entry is absent.
    TruncSeries sigma(int u, int v, int w, const FGAContext& ctx) const;
    int certified(int cap) const;
};

struct AugmentedCheck {
    bool ok = true;
    std::string witness;
};

// D_F on the basis {X_{I_w}}.
class DemazureAlgebra {
public:
    // words: reduced word per Weyl element; empty for the canonical words.
    explicit DemazureAlgebra(std::shared_ptr<const TwistedAlgebra> qw, std::vector<std::vector<int>> words = {});

    const TwistedAlgebra& qw() const { return *qw_; }
    const FGAContext& ctx() const { return qw_->ctx(); }
    const WeylGroup& weyl() const { return qw_->weyl(); }
    const std::vector<std::vector<int>>& words() const { return words_; }
    bool canonical_words() const { return canonical_; }

    DFElem basis(int w) const;
    DFElem from_qw(const QWElem& a) const;
    QWElem to_qw(const DFElem& d) const;
    DFElem add(const DFElem& a, const DFElem& b) const;
    DFElem scale(const TruncSeries& s, const DFElem& a) const;
    DFElem mul(const DFElem& a, const DFElem& b) const;
    bool equal(const DFElem& a, const DFElem& b, int prec) const;

    // X_I rebased and certified, with the triangularity assertions; cached.
    const DFElem& rebase_word(const std::vector<int>& word) const;
    // eta_w with X_{(i,j,...)} - X_{(j,i,...)} = sum eta_w X_{I_w}.
    std::map<int, TruncSeries> eta_coeffs(int i, int j) const;
    // phi_{I,E}(q) with X_I q = sum_E phi_{I,E}(q) X_{I|E}; keyed by position mask.
    std::map<uint32_t, TruncSeries> pass_coefficient(const std::vector<int>& word, const TruncSeries& q) const;

    // Formula: sum p^I_{E1,E2} X_{I|E1} (x) X_{I|E2}, rebased.
    CoproductSlice coproduct_basis(int w) const;
    // Through Q_W: delta_v (x) delta_v images rebased on X (x) X.
    CoproductSlice coproduct_basis_qw(int w) const;
    CoproductTable coproduct_table() const;
    // Delta(d) for a general element: sum_w c_w Delta(X_{I_w}).
    CoproductSlice coproduct(const DFElem& d, const CoproductTable& table) const;

    TruncSeries counit(const DFElem& d) const;
    TruncSeries act_on(const DFElem& d, const TruncSeries& s) const;
    // epsilon applied to sigma^{.,.}_{s_i} has the primitive form, and
    // epsilon Delta_i(uv) splits accordingly on seeded samples.
    AugmentedCheck augmented_coproduct_check(int i, const CoproductTable& table, uint64_t seed = 1) const;

private:
    std::shared_ptr<const TwistedAlgebra> qw_;
    std::vector<std::vector<int>> words_;
    bool canonical_ = true;
    mutable std::mutex mu_;
    mutable std::map<std::vector<int>, std::shared_ptr<const DFElem>> rebase_cache_;

    DFElem certify(const std::map<int, QElem>& coeffs) const;
};

std::vector<int> subword(const std::vector<int>& word, uint32_t mask);

}  // namespace demazure
