#include "demazure/twistedalgebra.hpp"

#include <algorithm>

#include "demazure/error.hpp"

namespace demazure {

int QElem::den_degree() const {
    int d = 0;
    for (int m : den) d += m;
    return d;
}

TwistedAlgebra::TwistedAlgebra(ContextPtr ctx) : ctx_(std::move(ctx)), npos_(ctx_->datum().num_positive()) {}

// ---------------------------------------------------------------------------
// Q

QElem TwistedAlgebra::q(const TruncSeries& s) const { return QElem{s, std::vector<int>(static_cast<std::size_t>(npos_), 0)}; }

QElem TwistedAlgebra::q_times_x(const QElem& a, int root) const {
    QElem out = a;
    if (root < npos_ && out.den[static_cast<std::size_t>(root)] > 0) {
        --out.den[static_cast<std::size_t>(root)];
        return out;
    }
    out.num = mul_tracked(out.num, ctx_->x_root(root), ctx_->prec());
    return out;
}

QElem TwistedAlgebra::q_div_x(const QElem& a, int root) const {
    QElem out = a;
    if (root < npos_) {
        ++out.den[static_cast<std::size_t>(root)];
        return out;
    }
    // 1/x_{-g} = unit^{-1} / x_g
    int g = root - npos_;
    out.num = mul_tracked(out.num, ctx_->neg_unit_inverse(g), ctx_->prec());
    ++out.den[static_cast<std::size_t>(g)];
    return out;
}

namespace {

TruncSeries times_x_power(const FGAContext& c, TruncSeries s, int root, int k) {
    for (int j = 0; j < k; ++j) s = mul_tracked(s, c.x_root(root), c.prec());
    return s;
}

}  // namespace

QElem TwistedAlgebra::q_add(const QElem& a, const QElem& b) const {
    QElem out = q_zero();
    TruncSeries an = a.num;
    TruncSeries bn = b.num;
    for (int r = 0; r < npos_; ++r) {
        int da = a.den[static_cast<std::size_t>(r)];
        int db = b.den[static_cast<std::size_t>(r)];
        int d = std::max(da, db);
        out.den[static_cast<std::size_t>(r)] = d;
        if (d > da) an = times_x_power(*ctx_, std::move(an), r, d - da);
        if (d > db) bn = times_x_power(*ctx_, std::move(bn), r, d - db);
    }
    out.num = an + bn;
    return out;
}

QElem TwistedAlgebra::q_neg(const QElem& a) const { return QElem{-a.num, a.den}; }

QElem TwistedAlgebra::q_sub(const QElem& a, const QElem& b) const { return q_add(a, q_neg(b)); }

QElem TwistedAlgebra::q_mul(const QElem& a, const QElem& b) const {
    QElem out{mul_tracked(a.num, b.num, ctx_->prec()), a.den};
    for (int r = 0; r < npos_; ++r) out.den[static_cast<std::size_t>(r)] += b.den[static_cast<std::size_t>(r)];
    return out;
}

QElem TwistedAlgebra::q_act(int w, const QElem& a) const {
    if (w == 0) return a;
    QElem out = q(ctx_->weyl_act(w, a.num));
    for (int r = 0; r < npos_; ++r) {
        int m = a.den[static_cast<std::size_t>(r)];
        for (int k = 0; k < m; ++k) out = q_div_x(out, weyl().act_on_root(w, r));
    }
    return out;
}

QElem TwistedAlgebra::normalize(QElem a) const {
    if (a.num.is_zero()) {
        int c = a.certified();
        std::fill(a.den.begin(), a.den.end(), 0);
        a.num = TruncSeries::zero(a.num.ring(), a.num.nvars(), std::max(c, 0));
        if (c < 0) throw precision_exhausted("fraction lost all certified precision");
        return a;
    }
    for (int r = 0; r < npos_; ++r) {
        const LinearDivider* d = ctx_->divider(r);
        if (d == nullptr) continue;
        while (a.den[static_cast<std::size_t>(r)] > 0 && a.num.prec() >= 1) {
            auto q = d->try_divide(a.num);
            if (!q) break;
            a.num = std::move(*q);
            --a.den[static_cast<std::size_t>(r)];
            if (a.num.is_zero()) return normalize(std::move(a));
        }
    }
    return a;
}

bool TwistedAlgebra::q_is_zero(const QElem& a) const { return normalize(a).num.is_zero(); }

TruncSeries TwistedAlgebra::certify_in_s(const QElem& a) const {
    QElem n = normalize(a);
    TruncSeries s = n.num;
    for (int r = 0; r < npos_; ++r) {
        for (int k = 0; k < n.den[static_cast<std::size_t>(r)]; ++k) {
            try {
                if (s.prec() < 1) throw precision_exhausted("no precision left to clear denominators");
                const LinearDivider* d = ctx_->divider(r);
                s = d ? d->divide(s) : exact_div_linear(s, ctx_->x_root(r));
            } catch (const Error& e) {
                if (e.error_class() == ErrorClass::PrecisionExhausted) throw;
                auto details = e.details();
                details["root"] = std::to_string(r);
                throw hypothesis_error("NotInS", "coefficient is not in S: a factor x_alpha remains in the denominator",
                                       details);
            }
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Q_W

QWElem TwistedAlgebra::delta(int w) const { return {{w, q_one()}}; }

void TwistedAlgebra::add_into(QWElem& acc, int w, const QElem& c) const {
    auto it = acc.find(w);
    if (it == acc.end()) {
        acc.emplace(w, c);
    } else {
        it->second = q_add(it->second, c);
    }
}

QWElem TwistedAlgebra::qw_add(const QWElem& a, const QWElem& b) const {
    QWElem out = a;
    for (const auto& [w, c] : b) add_into(out, w, c);
    return out;
}

QWElem TwistedAlgebra::qw_sub(const QWElem& a, const QWElem& b) const {
    QWElem out = a;
    for (const auto& [w, c] : b) add_into(out, w, q_neg(c));
    return out;
}

QWElem TwistedAlgebra::qw_scale(const QElem& c, const QWElem& a) const {
    QWElem out;
    for (const auto& [w, x] : a) out.emplace(w, normalize(q_mul(c, x)));
    return out;
}

QWElem TwistedAlgebra::qw_mul(const QWElem& a, const QWElem& b) const {
    // (q delta_v)(q' delta_w) = q v(q') delta_{vw}
    QWElem out;
    for (const auto& [v, qa] : a) {
        for (const auto& [w, qb] : b) add_into(out, weyl().multiply(v, w), q_mul(qa, q_act(v, qb)));
    }
    for (auto& [w, c] : out) c = normalize(c);
    return out;
}

bool TwistedAlgebra::qw_is_zero(const QWElem& a) const {
    return std::all_of(a.begin(), a.end(), [&](const auto& kv) { return q_is_zero(kv.second); });
}

int TwistedAlgebra::qw_certified(const QWElem& a) const {
    int c = ctx_->prec();
    for (const auto& [w, x] : a) c = std::min(c, x.certified());
    return c;
}

QWElem TwistedAlgebra::demazure_elem(int root) const {
    // x_alpha^{-1} (1 - delta_{s_alpha})
    QElem inv = q_div_x(q_one(), root);
    return {{0, inv}, {weyl().reflection(root), q_neg(inv)}};
}

QWElem TwistedAlgebra::anti_involution(const QWElem& a) const {
    QWElem out;
    for (const auto& [w, c] : a) {
        int wi = weyl().inverse(w);
        add_into(out, wi, q_act(wi, c));
    }
    for (auto& [w, c] : out) c = normalize(c);
    return out;
}

QWElem TwistedAlgebra::x_word(const std::vector<int>& word) const {
    QWElem cur = delta(0);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        // X_i (q delta_w) = x_i^{-1} q delta_w - x_i^{-1} s_i(q) delta_{s_i w}
        const int i = *it;
        const int root = ctx_->datum().simple_root(i);
        const int s = weyl().simple_reflection(i);
        QWElem next;
        for (const auto& [w, c] : cur) {
            add_into(next, w, q_div_x(c, root));
            add_into(next, weyl().multiply(s, w), q_neg(q_div_x(q_act(s, c), root)));
        }
        cur.clear();
        for (auto& [w, c] : next) {
            QElem n = normalize(std::move(c));
            if (!n.num.is_zero()) cur.emplace(w, std::move(n));
        }
    }
    return cur;
}

const QWElem& TwistedAlgebra::x_basis(int w) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = basis_cache_.find(w);
        if (it != basis_cache_.end()) return *it->second;
    }
    auto x = std::make_shared<const QWElem>(x_word(weyl().word(w)));
    std::lock_guard<std::mutex> lock(mu_);
    return *basis_cache_.emplace(w, x).first->second;
}

std::map<int, QElem> TwistedAlgebra::rebase_to_x(const QWElem& a, const std::vector<std::vector<int>>* words) const {
    std::map<int, QElem> out;
    QWElem rem;
    for (const auto& [w, c] : a) {
        QElem n = normalize(c);
        if (!n.num.is_zero()) rem.emplace(w, std::move(n));
    }
    while (!rem.empty()) {
        // Largest index first: it has maximal length in the support.
        auto last = std::prev(rem.end());
        const int v = last->first;
        QElem av = last->second;
        rem.erase(last);
        // Divide by the diagonal (-1)^l prod_{inv(v)} x_alpha^{-1}.
        QElem c = av;
        for (int r : weyl().inversion_set(v)) c = q_times_x(c, r);
        if (weyl().length(v) % 2 == 1) c = q_neg(c);
        c = normalize(std::move(c));
        QWElem xv;
        if (words != nullptr) {
            const auto& word = (*words)[static_cast<std::size_t>(v)];
            if (static_cast<int>(word.size()) != weyl().length(v) || weyl().word_to_element(word) != v) {
                throw config_error("InvalidWord", "basis word override is not a reduced word of its element",
                                   {{"element", weyl().word_string(v)}});
            }
            xv = x_word(word);
        } else {
            xv = x_basis(v);
        }
        for (const auto& [w, x] : xv) {
            if (w == v) continue;
            add_into(rem, w, q_neg(q_mul(c, x)));
        }
        for (auto it = rem.begin(); it != rem.end();) {
            it->second = normalize(std::move(it->second));
            if (it->second.num.is_zero()) {
                it = rem.erase(it);
            } else {
                ++it;
            }
        }
        if (!c.num.is_zero()) out.emplace(v, std::move(c));
    }
    return out;
}

QWElem TwistedAlgebra::expand_x(const std::map<int, QElem>& coeffs) const {
    QWElem out;
    for (const auto& [v, c] : coeffs) {
        for (const auto& [w, x] : x_basis(v)) add_into(out, w, q_mul(c, x));
    }
    for (auto& [w, c] : out) c = normalize(c);
    return out;
}

QElem TwistedAlgebra::act_on_series(const QWElem& a, const TruncSeries& s) const {
    QElem out = q(TruncSeries::zero(s.ring(), s.nvars(), s.prec()));
    for (const auto& [w, c] : a) out = q_add(out, q_mul(c, ctx_->weyl_act(w, s)));
    return normalize(out);
}

// ---------------------------------------------------------------------------
// Tensors

QWTensor TwistedAlgebra::coproduct_qw(const QWElem& a) const {
    QWTensor out;
    for (const auto& [w, c] : a) out.emplace(std::make_pair(w, w), c);
    return out;
}

QWTensor TwistedAlgebra::tensor_add(const QWTensor& a, const QWTensor& b) const {
    QWTensor out = a;
    for (const auto& [k, c] : b) {
        auto it = out.find(k);
        if (it == out.end()) {
            out.emplace(k, c);
        } else {
            it->second = q_add(it->second, c);
        }
    }
    return out;
}

QWTensor TwistedAlgebra::tensor_mul(const QWTensor& a, const QWTensor& b) const {
    // (q d_v (x) d_w)(q' d_v' (x) d_w') = q v(q') d_{vv'} (x) d_{ww'}
    QWTensor out;
    for (const auto& [ka, qa] : a) {
        for (const auto& [kb, qb] : b) {
            auto key = std::make_pair(weyl().multiply(ka.first, kb.first), weyl().multiply(ka.second, kb.second));
            QElem t = q_mul(qa, q_act(ka.first, qb));
            auto it = out.find(key);
            if (it == out.end()) {
                out.emplace(key, std::move(t));
            } else {
                it->second = q_add(it->second, t);
            }
        }
    }
    for (auto& [k, c] : out) c = normalize(c);
    return out;
}

bool TwistedAlgebra::tensor_is_zero(const QWTensor& a) const {
    return std::all_of(a.begin(), a.end(), [&](const auto& kv) { return q_is_zero(kv.second); });
}

const std::map<int, QElem>& TwistedAlgebra::delta_rebase(int v) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = delta_rebase_cache_.find(v);
        if (it != delta_rebase_cache_.end()) return *it->second;
    }
    auto r = std::make_shared<const std::map<int, QElem>>(rebase_to_x(delta(v)));
    std::lock_guard<std::mutex> lock(mu_);
    return *delta_rebase_cache_.emplace(v, r).first->second;
}

QWTensor TwistedAlgebra::tensor_rebase(const QWTensor& a) const {
    // q d_v (x) d_w = sum q c_{v,u} c_{w,u'} X_u (x) X_u'; Q moves across the tensor sign.
    QWTensor out;
    for (const auto& [k, c] : a) {
        const auto& rv = delta_rebase(k.first);
        const auto& rw = delta_rebase(k.second);
        for (const auto& [u, cu] : rv) {
            QElem left = q_mul(c, cu);
            for (const auto& [u2, cu2] : rw) {
                QElem t = q_mul(left, cu2);
                auto key = std::make_pair(u, u2);
                auto it = out.find(key);
                if (it == out.end()) {
                    out.emplace(key, std::move(t));
                } else {
                    it->second = q_add(it->second, t);
                }
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it->second = normalize(std::move(it->second));
        if (it->second.num.is_zero()) {
            it = out.erase(it);
        } else {
            ++it;
        }
    }
    return out;
}

}  // namespace demazure
