#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "demazure/formalgroupalgebra.hpp"

namespace demazure {

// num / prod_alpha x_alpha^{den[alpha]} over positive roots alpha.
// num is known to degree num.prec(); the value is known to certified().
struct QElem {
    TruncSeries num;
    std::vector<int> den;

    int den_degree() const;
    int certified() const { return num.prec() - den_degree(); }
};

// Sum of q_w delta_w, coefficients on the left, keyed by Weyl element index.
using QWElem = std::map<int, QElem>;
// Sum of q delta_v (x) delta_w, keyed by (v, w).
using QWTensor = std::map<std::pair<int, int>, QElem>;

// Q_W over an FGA context, with the delta <-> X basis changes.
class TwistedAlgebra {
public:
    explicit TwistedAlgebra(ContextPtr ctx);

    const FGAContext& ctx() const { return *ctx_; }
    ContextPtr ctx_ptr() const { return ctx_; }
    const WeylGroup& weyl() const { return ctx_->weyl(); }

    // --- Q ---
    QElem q(const TruncSeries& s) const;
    QElem q_one() const { return q(ctx_->one()); }
    QElem q_zero() const { return q(ctx_->zero()); }
    QElem q_add(const QElem& a, const QElem& b) const;
    QElem q_sub(const QElem& a, const QElem& b) const;
    QElem q_neg(const QElem& a) const;
    QElem q_mul(const QElem& a, const QElem& b) const;
    QElem q_mul(const QElem& a, const TruncSeries& s) const { return q_mul(a, q(s)); }
    // Multiply or divide by x_root for any root.
    QElem q_times_x(const QElem& a, int root) const;
    QElem q_div_x(const QElem& a, int root) const;
    QElem q_act(int w, const QElem& a) const;
    // Cancels every denominator factor that divides the numerator.
    QElem normalize(QElem a) const;
    bool q_is_zero(const QElem& a) const;
    bool q_equal(const QElem& a, const QElem& b) const { return q_is_zero(q_sub(a, b)); }
    // Throws NotInS naming the root and degree when a denominator remains.
    TruncSeries certify_in_s(const QElem& a) const;

    // --- Q_W ---
    QWElem delta(int w) const;
    QWElem scalar(const QElem& a) const { return {{0, a}}; }
    QWElem qw_add(const QWElem& a, const QWElem& b) const;
    QWElem qw_sub(const QWElem& a, const QWElem& b) const;
    QWElem qw_scale(const QElem& c, const QWElem& a) const;
    QWElem qw_mul(const QWElem& a, const QWElem& b) const;
    bool qw_is_zero(const QWElem& a) const;
    int qw_certified(const QWElem& a) const;
    QWElem demazure_elem(int root) const;
    QWElem anti_involution(const QWElem& a) const;
    // X_{i_1} ... X_{i_l}, letters 0-based simple indices.
    QWElem x_word(const std::vector<int>& word) const;
    // X_{I_w} for the canonical word of w, cached.
    const QWElem& x_basis(int w) const;
    // Coefficients c_w with a = sum c_w X_{I_w}; words default to canonical ones.
    std::map<int, QElem> rebase_to_x(const QWElem& a, const std::vector<std::vector<int>>* words = nullptr) const;
    // sum c_w X_{I_w} back in the delta basis.
    QWElem expand_x(const std::map<int, QElem>& coeffs) const;
    // Action on S: (q delta_w)(s) = q w(s).
    QElem act_on_series(const QWElem& a, const TruncSeries& s) const;

    // --- Q_W (x)_Q Q_W ---
    QWTensor coproduct_qw(const QWElem& a) const;
    QWTensor tensor_mul(const QWTensor& a, const QWTensor& b) const;
    QWTensor tensor_add(const QWTensor& a, const QWTensor& b) const;
    bool tensor_is_zero(const QWTensor& a) const;
    // Coefficients on X_{I_u} (x) X_{I_v}.
    QWTensor tensor_rebase(const QWTensor& a) const;

private:
    ContextPtr ctx_;
    int npos_;
    mutable std::mutex mu_;
    mutable std::map<int, std::shared_ptr<const QWElem>> basis_cache_;
    mutable std::map<int, std::shared_ptr<const std::map<int, QElem>>> delta_rebase_cache_;

    const std::map<int, QElem>& delta_rebase(int v) const;
    void add_into(QWElem& acc, int w, const QElem& c) const;
};

}  // namespace demazure
