#include "demazure/demazurealgebra.hpp"

#include "demazure/error.hpp"
#include "demazure/parallel.hpp"

namespace demazure {

std::vector<int> subword(const std::vector<int>& word, uint32_t mask) {
    std::vector<int> out;
    for (std::size_t j = 0; j < word.size(); ++j) {
        if ((mask >> j) & 1U) out.push_back(word[j]);
    }
    return out;
}

int DFElem::certified(int cap) const {
    for (const auto& [w, c] : coeffs) cap = std::min(cap, c.prec());
    return cap;
}

TruncSeries CoproductTable::sigma(int u, int v, int w, const FGAContext& ctx) const {
    const auto& s = slices[static_cast<std::size_t>(w)];
    auto it = s.find({u, v});
    return it == s.end() ? ctx.zero() : it->second;
}

int CoproductTable::certified(int cap) const {
    for (const auto& s : slices) {
        for (const auto& [k, c] : s) cap = std::min(cap, c.prec());
    }
    return cap;
}

namespace {

void add_into(std::map<int, TruncSeries>& acc, int key, const TruncSeries& s) {
    auto it = acc.find(key);
    if (it == acc.end()) {
        acc.emplace(key, s);
    } else {
        it->second += s;
    }
}

template <class K>
void drop_zeros(std::map<K, TruncSeries>& m) {
    for (auto it = m.begin(); it != m.end();) {
        if (it->second.is_zero()) {
            it = m.erase(it);
        } else {
            ++it;
        }
    }
}

}  // namespace

DemazureAlgebra::DemazureAlgebra(std::shared_ptr<const TwistedAlgebra> qw, std::vector<std::vector<int>> words)
    : qw_(std::move(qw)), words_(std::move(words)) {
    const WeylGroup& W = weyl();
    if (words_.empty()) {
        for (int w = 0; w < W.size(); ++w) words_.push_back(W.word(w));
        return;
    }
    if (static_cast<int>(words_.size()) != W.size()) throw config_error("InvalidWord", "need one basis word per Weyl element");
    for (int w = 0; w < W.size(); ++w) {
        const auto& word = words_[static_cast<std::size_t>(w)];
        if (static_cast<int>(word.size()) != W.length(w) || W.word_to_element(word) != w) {
            throw config_error("InvalidWord", "basis word is not a reduced word of its element",
                               {{"element", W.word_string(w)}, {"word", word_to_string(word)}});
        }
        if (word != W.word(w)) canonical_ = false;
    }
}

DFElem DemazureAlgebra::certify(const std::map<int, QElem>& coeffs) const {
    DFElem out;
    for (const auto& [w, c] : coeffs) {
        TruncSeries s = qw_->certify_in_s(c);
        if (!s.is_zero()) out.coeffs.emplace(w, std::move(s));
    }
    return out;
}

DFElem DemazureAlgebra::basis(int w) const {
    DFElem d;
    d.coeffs.emplace(w, ctx().one());
    return d;
}

DFElem DemazureAlgebra::from_qw(const QWElem& a) const {
    return certify(qw_->rebase_to_x(a, canonical_ ? nullptr : &words_));
}

QWElem DemazureAlgebra::to_qw(const DFElem& d) const {
    QWElem out;
    for (const auto& [w, c] : d.coeffs) {
        QWElem xw = canonical_ ? qw_->x_basis(w) : qw_->x_word(words_[static_cast<std::size_t>(w)]);
        out = qw_->qw_add(out, qw_->qw_scale(qw_->q(c), xw));
    }
    return out;
}

DFElem DemazureAlgebra::add(const DFElem& a, const DFElem& b) const {
    DFElem out = a;
    for (const auto& [w, c] : b.coeffs) add_into(out.coeffs, w, c);
    drop_zeros(out.coeffs);
    return out;
}

DFElem DemazureAlgebra::scale(const TruncSeries& s, const DFElem& a) const {
    DFElem out;
    for (const auto& [w, c] : a.coeffs) out.coeffs.emplace(w, demazure::mul(s, c));
    drop_zeros(out.coeffs);
    return out;
}

DFElem DemazureAlgebra::mul(const DFElem& a, const DFElem& b) const { return from_qw(qw_->qw_mul(to_qw(a), to_qw(b))); }

bool DemazureAlgebra::equal(const DFElem& a, const DFElem& b, int prec) const {
    std::map<int, TruncSeries> diff = a.coeffs;
    for (const auto& [w, c] : b.coeffs) add_into(diff, w, -c);
    for (const auto& [w, c] : diff) {
        if (!c.truncated(std::min(prec, c.prec())).is_zero()) return false;
    }
    return true;
}

const DFElem& DemazureAlgebra::rebase_word(const std::vector<int>& word) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = rebase_cache_.find(word);
        if (it != rebase_cache_.end()) return *it->second;
    }
    const WeylGroup& W = weyl();
    for (int i : word) {
        if (i < 0 || i >= ctx().rank()) throw config_error("InvalidWord", "letter out of range");
    }
    auto d = std::make_shared<DFElem>(from_qw(qw_->x_word(word)));
    const int len = static_cast<int>(word.size());
    const int w = W.word_to_element(word);
    auto fail = [&](const std::string& what, int v) {
        throw hypothesis_error("CertificateFailure", "rebased word violates " + what,
                               {{"word", word_to_string(word)}, {"element", W.word_string(v)}});
    };
    if (W.length(w) == len) {
        for (const auto& [v, c] : d->coeffs) {
            if (!W.bruhat_leq(v, w)) fail("triangularity", v);
        }
        auto it = d->coeffs.find(w);
        if (it == d->coeffs.end() || !(it->second - ctx().one().truncated(it->second.prec())).is_zero()) {
            fail("unit leading coefficient", w);
        }
    } else {
        for (const auto& [v, c] : d->coeffs) {
            if (W.length(v) >= len) fail("the length bound for non-reduced words", v);
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return *rebase_cache_.emplace(word, d).first->second;
}

std::map<int, TruncSeries> DemazureAlgebra::eta_coeffs(int i, int j) const {
    const WeylGroup& W = weyl();
    if (i == j || i < 0 || j < 0 || i >= ctx().rank() || j >= ctx().rank()) {
        throw config_error("InvalidArgument", "eta needs two distinct simple indices");
    }
    int m = 1;
    const int sij = W.multiply(W.simple_reflection(i), W.simple_reflection(j));
    for (int p = sij; p != W.identity(); p = W.multiply(p, sij)) ++m;
    std::vector<int> a;
    std::vector<int> b;
    for (int k = 0; k < m; ++k) {
        a.push_back(k % 2 == 0 ? i : j);
        b.push_back(k % 2 == 0 ? j : i);
    }
    QWElem diff = qw_->qw_sub(qw_->x_word(a), qw_->x_word(b));
    DFElem d = from_qw(diff);
    return d.coeffs;
}

std::map<uint32_t, TruncSeries> DemazureAlgebra::pass_coefficient(const std::vector<int>& word, const TruncSeries& q) const {
    std::map<uint32_t, TruncSeries> out;
    const int len = static_cast<int>(word.size());
    if (q.prec() < len) throw precision_exhausted("pass coefficient needs precision at least the word length");
    for (uint32_t e = 0; e < (1U << len); ++e) {
        TruncSeries u = q;
        for (int j = len - 1; j >= 0; --j) {
            int root = ctx().datum().simple_root(word[static_cast<std::size_t>(j)]);
            u = ((e >> j) & 1U) ? ctx().reflect(root, u) : ctx().demazure(root, u);
            if (u.is_zero()) break;
        }
        if (!u.is_zero()) out.emplace(e, std::move(u));
    }
    return out;
}

CoproductSlice DemazureAlgebra::coproduct_basis(int w) const {
    const auto& word = words_[static_cast<std::size_t>(w)];
    const int len = static_cast<int>(word.size());
    const uint32_t full = (1U << len) - 1;
    std::vector<const DFElem*> sub(full + 1);
    for (uint32_t e = 0; e <= full; ++e) sub[e] = &rebase_word(subword(word, e));
    CoproductSlice out;
    for (uint32_t e1 = 0; e1 <= full; ++e1) {
        // T = sum_{E2} p^I_{E1,E2} X_{I|E2}
        std::map<int, TruncSeries> t;
        for (uint32_t e2 = 0; e2 <= full; ++e2) {
            if ((e1 & e2) == 0 && (e1 | e2) != full) continue;  // p vanishes
            TruncSeries p = ctx().p_coeff(word, e1, e2);
            if (p.is_zero()) continue;
            for (const auto& [v, c] : sub[e2]->coeffs) add_into(t, v, demazure::mul(p, c));
        }
        drop_zeros(t);
        for (const auto& [u, cu] : sub[e1]->coeffs) {
            for (const auto& [v, cv] : t) {
                TruncSeries term = demazure::mul(cu, cv);
                auto it = out.find({u, v});
                if (it == out.end()) {
                    out.emplace(std::make_pair(u, v), std::move(term));
                } else {
                    it->second += term;
                }
            }
        }
    }
    drop_zeros(out);
    return out;
}

CoproductSlice DemazureAlgebra::coproduct_basis_qw(int w) const {
    if (!canonical_) throw config_error("InvalidWord", "the Q_W coproduct route uses the canonical basis words");
    QWTensor t = qw_->tensor_rebase(qw_->coproduct_qw(qw_->x_basis(w)));
    CoproductSlice out;
    for (const auto& [k, c] : t) {
        TruncSeries s = qw_->certify_in_s(c);
        if (!s.is_zero()) out.emplace(k, std::move(s));
    }
    return out;
}

CoproductTable DemazureAlgebra::coproduct_table() const {
    CoproductTable table;
    table.words = words_;
    const int n = weyl().size();
    table.slices.resize(static_cast<std::size_t>(n));
    // Warm the subword rebases serially from short to long so that threads
    // mostly hit the cache.
    for (int w = 0; w < n; ++w) rebase_word(words_[static_cast<std::size_t>(w)]);
    parallel_for(n, [&](int w) { table.slices[static_cast<std::size_t>(w)] = coproduct_basis(w); });
    return table;
}

CoproductSlice DemazureAlgebra::coproduct(const DFElem& d, const CoproductTable& table) const {
    CoproductSlice out;
    for (const auto& [w, c] : d.coeffs) {
        for (const auto& [k, s] : table.slices[static_cast<std::size_t>(w)]) {
            TruncSeries term = demazure::mul(c, s);
            auto it = out.find(k);
            if (it == out.end()) {
                out.emplace(k, std::move(term));
            } else {
                it->second += term;
            }
        }
    }
    drop_zeros(out);
    return out;
}

TruncSeries DemazureAlgebra::counit(const DFElem& d) const {
    auto it = d.coeffs.find(weyl().identity());
    return it == d.coeffs.end() ? ctx().zero() : it->second;
}

TruncSeries DemazureAlgebra::act_on(const DFElem& d, const TruncSeries& s) const {
    std::optional<TruncSeries> out;
    for (const auto& [w, c] : d.coeffs) {
        TruncSeries term = demazure::mul(c, ctx().demazure_seq(words_[static_cast<std::size_t>(w)], s));
        out = out ? *out + term : term;
    }
    return out ? *out : TruncSeries::zero(s.ring(), s.nvars(), s.prec());
}

AugmentedCheck DemazureAlgebra::augmented_coproduct_check(int i, const CoproductTable& table, uint64_t seed) const {
    AugmentedCheck res;
    const WeylGroup& W = weyl();
    const int s = W.simple_reflection(i);
    const int e = W.identity();
    for (int u = 0; u < W.size(); ++u) {
        for (int v = 0; v < W.size(); ++v) {
            RingElem got = table.sigma(u, v, s, ctx()).constant_term();
            bool one = (u == s && v == e) || (u == e && v == s);
            RingElem want = one ? RingElem::one(ctx().ring()) : RingElem::zero(ctx().ring());
            if (!(got == want)) {
                res.ok = false;
                res.witness = "epsilon(sigma^{" + W.word_string(u) + "," + W.word_string(v) + "}_" + W.word_string(s) +
                              ") = " + got.to_string() + ", expected " + want.to_string();
                return res;
            }
        }
    }
    // epsilon Delta_i(uv) = epsilon Delta_i(u) epsilon(v) + epsilon(u) epsilon Delta_i(v)
    std::mt19937_64 rng(seed);
    const int root = ctx().datum().simple_root(i);
    for (int k = 0; k < 5; ++k) {
        TruncSeries a = sample_series(ctx(), rng, 6, 4);
        TruncSeries b = sample_series(ctx(), rng, 6, 4);
        RingElem lhs = ctx().demazure(root, demazure::mul(a, b)).constant_term();
        RingElem rhs = ctx().demazure(root, a).constant_term() * b.constant_term() +
                       a.constant_term() * ctx().demazure(root, b).constant_term();
        if (!(lhs == rhs)) {
            res.ok = false;
            res.witness = "epsilon Delta_" + std::to_string(i + 1) + " is not a derivation on sample " + std::to_string(k);
            return res;
        }
    }
    return res;
}

}  // namespace demazure
