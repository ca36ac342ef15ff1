#include "demazure/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

#include "demazure/error.hpp"

namespace demazure {

bool SuiteReport::passed() const { return failures() == 0; }

int SuiteReport::failures() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

void SuiteReport::add(std::string name, bool ok, std::string detail) { checks.push_back({std::move(name), ok, std::move(detail)}); }

void SuiteReport::merge(const SuiteReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

namespace {

std::string letter(int i) { return std::to_string(i + 1); }

// a == b as elements of Q_W, with a nonnegative certified precision.
std::pair<bool, int> qw_agree(const TwistedAlgebra& T, const QWElem& a, const QWElem& b) {
    QWElem diff = T.qw_sub(a, b);
    QWElem norm;
    for (const auto& [w, q] : diff) norm.emplace(w, T.normalize(q));
    int cert = T.qw_certified(norm);
    return {T.qw_is_zero(norm) && cert >= 0, cert};
}

bool series_agree(const TruncSeries& a, const TruncSeries& b) {
    int p = std::min(a.prec(), b.prec());
    return p >= 0 && a.agrees_with(b, p);
}

// First disagreement between two slices, or empty.
std::string slice_diff(const CoproductSlice& a, const CoproductSlice& b, const WeylGroup& W, const FGAContext& c) {
    std::map<std::pair<int, int>, std::pair<TruncSeries, TruncSeries>> keys;
    for (const auto& [k, s] : a) keys[k].first = s;
    for (const auto& [k, s] : b) keys[k].second = s;
    for (auto& [k, p] : keys) {
        TruncSeries x = p.first.ring() ? p.first : c.zero().truncated(p.second.prec());
        TruncSeries y = p.second.ring() ? p.second : c.zero().truncated(p.first.prec());
        if (!series_agree(x, y)) return "(" + W.word_string(k.first) + ", " + W.word_string(k.second) + ")";
    }
    return {};
}

std::vector<std::vector<int>> all_words(int rank, int max_len) {
    std::vector<std::vector<int>> out{{}};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t k = begin; k < end; ++k) {
            for (int i = 0; i < rank; ++i) {
                auto w = out[k];
                w.push_back(i);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

}  // namespace

SuiteReport verify_relations(const DemazureAlgebra& d, uint64_t seed, int samples) {
    SuiteReport rep{"relations", {}};
    const TwistedAlgebra& T = d.qw();
    const FGAContext& c = d.ctx();
    std::mt19937_64 rng(seed);
    for (int i = 0; i < c.rank(); ++i) {
        const int root = c.datum().simple_root(i);
        QWElem x = T.demazure_elem(root);
        bool ok = true;
        int cert = c.prec();
        for (int k = 0; k < samples; ++k) {
            TruncSeries q = sample_series(c, rng, 6, 4);
            QWElem lhs = T.qw_mul(x, T.scalar(T.q(q)));
            QWElem rhs = T.qw_add(T.scalar(T.q(c.demazure(root, q))), T.qw_mul(T.scalar(T.q(c.reflect(root, q))), x));
            auto [agree, p] = qw_agree(T, lhs, rhs);
            ok = ok && agree;
            cert = std::min(cert, p);
        }
        rep.add("commutation X_" + letter(i) + " q", ok, std::to_string(samples) + " samples, certified to degree " + std::to_string(cert));
        auto [sq, p] = qw_agree(T, T.qw_mul(x, x), T.qw_scale(T.q(c.kappa(root)), x));
        rep.add("X_" + letter(i) + "^2 = kappa X_" + letter(i), sq, "certified to degree " + std::to_string(p));
    }
    const WeylGroup& W = d.weyl();
    for (int i = 0; i < c.rank(); ++i) {
        for (int j = i + 1; j < c.rank(); ++j) {
            std::string name = "braid deviation (" + letter(i) + "," + letter(j) + ")";
            try {
                auto eta = d.eta_coeffs(i, j);
                // m from the order of s_i s_j
                int m = 1;
                int g = W.multiply(W.simple_reflection(i), W.simple_reflection(j));
                for (int h = g; h != W.identity(); h = W.multiply(h, g)) ++m;
                std::vector<int> a;
                std::vector<int> b;
                for (int k = 0; k < m; ++k) {
                    a.push_back(k % 2 == 0 ? i : j);
                    b.push_back(k % 2 == 0 ? j : i);
                }
                QWElem residual = T.qw_sub(T.x_word(a), T.x_word(b));
                int cert = c.prec();
                bool parabolic = true;
                for (const auto& [w, coef] : eta) {
                    residual = T.qw_sub(residual, T.qw_scale(T.q(coef), d.to_qw(d.basis(w))));
                    cert = std::min(cert, coef.prec());
                    for (int letter_ : W.word(w)) parabolic = parabolic && (letter_ == i || letter_ == j);
                    parabolic = parabolic && W.length(w) < m;
                }
                auto [zero, p] = qw_agree(T, residual, {});
                rep.add(name, zero && parabolic,
                        std::to_string(eta.size()) + " nonzero coefficients certified to degree " + std::to_string(std::min(cert, p)) +
                            (parabolic ? "" : "; support leaves the parabolic subgroup"));
            } catch (const Error& e) {
                rep.add(name, false, e.reason() + ": " + e.what());
            }
        }
    }
    return rep;
}

SuiteReport verify_triangularity(const DemazureAlgebra& d) {
    SuiteReport rep{"triangularity", {}};
    const TwistedAlgebra& T = d.qw();
    const WeylGroup& W = d.weyl();
    int bad_support = 0;
    int bad_diag = 0;
    std::string first;
    for (int v = 0; v < W.size(); ++v) {
        const QWElem& x = T.x_basis(v);
        for (const auto& [w, q] : x) {
            if (!W.bruhat_leq(w, v) && !T.q_is_zero(q)) {
                ++bad_support;
                if (first.empty()) first = "support of " + W.word_string(v) + " contains " + W.word_string(w);
            }
        }
        QElem diag = T.q(W.length(v) % 2 == 0 ? d.ctx().one() : -d.ctx().one());
        for (int r : W.inversion_set(v)) diag = T.q_div_x(diag, r);
        auto it = x.find(v);
        if (it == x.end() || !T.q_equal(it->second, diag)) {
            ++bad_diag;
            if (first.empty()) first = "diagonal coefficient of " + W.word_string(v);
        }
    }
    rep.add("support in the Bruhat interval", bad_support == 0, std::to_string(W.size()) + " elements" + (first.empty() ? "" : "; " + first));
    rep.add("diagonal (-1)^l prod 1/x_alpha", bad_diag == 0, std::to_string(bad_diag) + " mismatches");
    return rep;
}

SuiteReport verify_coproduct(const DemazureAlgebra& d, const CoproductTable& table) {
    SuiteReport rep{"coproduct", {}};
    const WeylGroup& W = d.weyl();
    const FGAContext& c = d.ctx();
    std::string mismatch;
    int compared = 0;
    // The Q_W route rebases onto canonical words only.
    for (int w = 0; w < W.size() && d.canonical_words(); ++w) {
        std::string diff = slice_diff(table.slices[static_cast<std::size_t>(w)], d.coproduct_basis_qw(w), W, c);
        ++compared;
        if (!diff.empty() && mismatch.empty()) mismatch = "w = " + W.word_string(w) + " at " + diff;
    }
    if (d.canonical_words()) {
        rep.add("formula equals the Q_W route", mismatch.empty(), std::to_string(compared) + " basis words" + (mismatch.empty() ? "" : "; " + mismatch));
    }

    std::string counit;
    std::string cocomm;
    for (int w = 0; w < W.size(); ++w) {
        for (int v = 0; v < W.size(); ++v) {
            TruncSeries s = table.sigma(W.identity(), v, w, c);
            TruncSeries want = v == w ? c.one() : c.zero();
            if (!s.agrees_with(want, s.prec()) && counit.empty()) counit = "sigma^{e," + W.word_string(v) + "}_" + W.word_string(w);
        }
        for (const auto& [k, s] : table.slices[static_cast<std::size_t>(w)]) {
            if (!series_agree(s, table.sigma(k.second, k.first, w, c)) && cocomm.empty()) {
                cocomm = "w = " + W.word_string(w) + " at (" + W.word_string(k.first) + ", " + W.word_string(k.second) + ")";
            }
        }
    }
    rep.add("counit rows are Kronecker", counit.empty(), counit);
    rep.add("cocommutativity", cocomm.empty(), cocomm);
    rep.add("certified precision", table.certified(c.prec()) >= 0, "degree " + std::to_string(table.certified(c.prec())));
    return rep;
}

SuiteReport verify_coassociativity(const DemazureAlgebra& d, const CoproductTable& t) {
    SuiteReport rep{"coassociativity", {}};
    const WeylGroup& W = d.weyl();
    std::string bad;
    int triples = 0;
    for (int w = 0; w < W.size() && bad.empty(); ++w) {
        std::map<std::tuple<int, int, int>, TruncSeries> left;
        std::map<std::tuple<int, int, int>, TruncSeries> right;
        auto acc = [](auto& m, std::tuple<int, int, int> k, TruncSeries s) {
            auto it = m.find(k);
            if (it == m.end()) {
                m.emplace(k, std::move(s));
            } else {
                it->second += s;
            }
        };
        for (const auto& [k, s] : t.slices[static_cast<std::size_t>(w)]) {
            for (const auto& [k2, s2] : t.slices[static_cast<std::size_t>(k.first)]) acc(left, {k2.first, k2.second, k.second}, mul(s, s2));
            for (const auto& [k2, s2] : t.slices[static_cast<std::size_t>(k.second)]) acc(right, {k.first, k2.first, k2.second}, mul(s, s2));
        }
        std::map<std::tuple<int, int, int>, int> keys;
        for (const auto& [k, s] : left) keys[k] = 0;
        for (const auto& [k, s] : right) keys[k] = 0;
        for (const auto& [k, unused] : keys) {
            ++triples;
            auto il = left.find(k);
            auto ir = right.find(k);
            TruncSeries l = il == left.end() ? d.ctx().zero().truncated(ir->second.prec()) : il->second;
            TruncSeries r = ir == right.end() ? d.ctx().zero().truncated(l.prec()) : ir->second;
            if (!series_agree(l, r)) {
                auto [a, b, e] = k;
                bad = "w = " + W.word_string(w) + " at (" + W.word_string(a) + ", " + W.word_string(b) + ", " + W.word_string(e) + ")";
                break;
            }
        }
    }
    rep.add("coassociativity", bad.empty(), std::to_string(triples) + " triples compared" + (bad.empty() ? "" : "; " + bad));
    return rep;
}

SuiteReport verify_product_formula(const DemazureAlgebra& d, uint64_t seed, int max_len, int pairs) {
    SuiteReport rep{"product", {}};
    const FGAContext& c = d.ctx();
    std::mt19937_64 rng(seed);
    std::vector<std::pair<TruncSeries, TruncSeries>> uv;
    for (int k = 0; k < pairs; ++k) {
        TruncSeries u = sample_series(c, rng, 6, 4);
        TruncSeries v = sample_series(c, rng, 6, 4);
        uv.emplace_back(u, v);
    }
    auto words = all_words(c.rank(), std::min(max_len, c.prec()));
    int bad = 0;
    int prec_bad = 0;
    std::string first;
    for (const auto& word : words) {
        const uint32_t full = (1U << word.size()) - 1;
        std::vector<std::tuple<uint32_t, uint32_t, TruncSeries>> ps;
        for (uint32_t e1 = 0; e1 <= full; ++e1) {
            for (uint32_t e2 = 0; e2 <= full; ++e2) {
                TruncSeries p = c.p_coeff(word, e1, e2);
                if (!p.is_zero()) ps.emplace_back(e1, e2, std::move(p));
            }
        }
        const int target = c.prec() - static_cast<int>(word.size());
        for (const auto& [u, v] : uv) {
            TruncSeries sum = c.zero();
            for (const auto& [e1, e2, p] : ps) sum += mul(p, mul(c.demazure_seq(subword(word, e1), u), c.demazure_seq(subword(word, e2), v)));
            TruncSeries lhs = c.demazure_seq(word, mul(u, v));
            if (lhs.prec() != target || sum.prec() < target) ++prec_bad;
            if (!lhs.agrees_with(sum, target)) {
                ++bad;
                if (first.empty()) first = "word (" + word_to_string(word) + ")";
            }
        }
    }
    rep.add("product formula", bad == 0,
            std::to_string(words.size()) + " words x " + std::to_string(pairs) + " pairs, exact to prec - |I|" + (first.empty() ? "" : "; first failure " + first));
    rep.add("precision ledger prec - |I|", prec_bad == 0, std::to_string(prec_bad) + " deviations");
    return rep;
}

SuiteReport verify_dual(const DualAlgebra& D, uint64_t seed, int pairs, bool triples) {
    SuiteReport rep{"dual", {}};
    const int n = D.demazure().weyl().size();
    const WeylGroup& W = D.demazure().weyl();
    std::string unit;
    std::string comm;
    std::string assoc;
    std::vector<DualElem> b;
    for (int w = 0; w < n; ++w) b.push_back(D.basis(w));
    std::vector<std::vector<DualElem>> prod(static_cast<std::size_t>(n), std::vector<DualElem>(static_cast<std::size_t>(n)));
    for (int u = 0; u < n; ++u) {
        if (!D.equal(D.mul(D.unit(), b[static_cast<std::size_t>(u)]), b[static_cast<std::size_t>(u)]) && unit.empty()) unit = W.word_string(u);
        for (int v = 0; v < n; ++v) prod[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = D.mul(b[static_cast<std::size_t>(u)], b[static_cast<std::size_t>(v)]);
    }
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (!D.equal(prod[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)], prod[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) && comm.empty()) {
                comm = "(" + W.word_string(u) + ", " + W.word_string(v) + ")";
            }
            if (!triples) continue;
            for (int w = 0; w < n && assoc.empty(); ++w) {
                DualElem l = D.mul(prod[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)], b[static_cast<std::size_t>(w)]);
                DualElem r = D.mul(b[static_cast<std::size_t>(u)], prod[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]);
                if (!D.equal(l, r)) assoc = "(" + W.word_string(u) + ", " + W.word_string(v) + ", " + W.word_string(w) + ")";
            }
        }
    }
    rep.add("unit X*_e", unit.empty(), unit);
    rep.add("commutativity", comm.empty(), std::to_string(n * n) + " basis pairs" + (comm.empty() ? "" : "; " + comm));
    if (triples) rep.add("associativity", assoc.empty(), std::to_string(n * n * n) + " basis triples" + (assoc.empty() ? "" : "; " + assoc));
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int k = 0; k < pairs; ++k) {
        TruncSeries s1 = sample_series(D.ctx(), rng, 6, 4);
        TruncSeries s2 = sample_series(D.ctx(), rng, 6, 4);
        if (!D.equal(D.mul(D.ev(s1), D.ev(s2)), D.ev(mul(s1, s2)))) ++bad;
    }
    rep.add("ev(s1) ev(s2) = ev(s1 s2)", bad == 0, std::to_string(pairs) + " seeded pairs, " + std::to_string(bad) + " failures");
    return rep;
}

SuiteReport verify_augmented(const DemazureAlgebra& d, const CoproductTable& table, uint64_t seed) {
    SuiteReport rep{"augmented", {}};
    for (int i = 0; i < d.ctx().rank(); ++i) {
        AugmentedCheck r = d.augmented_coproduct_check(i, table, seed + static_cast<uint64_t>(i));
        rep.add("augmented coproduct of X_" + letter(i) + " is primitive", r.ok, r.witness);
    }
    return rep;
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{"relations", "triangularity", "coproduct", "coassociativity", "product", "dual", "augmented", "all"};
    return names;
}

SuiteReport run_verify_suite(const std::string& name, std::shared_ptr<const DemazureAlgebra> d, uint64_t seed) {
    const auto& names = verify_suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw config_error("InvalidArgument", "unknown verify suite '" + name + "' (known: " + list + ")");
    }
    const bool all = name == "all";
    SuiteReport rep{name, {}};
    if (all || name == "relations") rep.merge(verify_relations(*d, seed));
    if (all || name == "triangularity") rep.merge(verify_triangularity(*d));
    if (all || name == "product") rep.merge(verify_product_formula(*d, seed));
    const bool need_table = all || name == "coproduct" || name == "coassociativity" || name == "dual" || name == "augmented";
    if (!need_table) return rep;
    CoproductTable table = d->coproduct_table();
    if (all || name == "coproduct") rep.merge(verify_coproduct(*d, table));
    if (all || name == "coassociativity") rep.merge(verify_coassociativity(*d, table));
    if (all || name == "augmented") rep.merge(verify_augmented(*d, table, seed));
    if (all || name == "dual") {
        DualAlgebra D(d, table);
        rep.merge(verify_dual(D, seed, 20, d->weyl().size() <= 12));
    }
    return rep;
}

}  // namespace demazure
