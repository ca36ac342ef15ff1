#pragma once

#include <map>
#include <memory>
#include <string>

#include "demazure/powerseries.hpp"

namespace demazure {

enum class LawKind { Additive, Multiplicative, Custom };

// A one-dimensional commutative formal group law F(u,v) over a coefficient
// ring, checked against the unit, commutativity and associativity axioms to
// its precision. Series in u use one variable; F and G use (u, v).
class FormalGroupLaw {
public:
    static std::shared_ptr<const FormalGroupLaw> additive(RingPtr ring, int prec);
    // u + v - beta*u*v.
    static std::shared_ptr<const FormalGroupLaw> multiplicative(const RingElem& beta, int prec);
    // Throws Error(AxiomViolation) naming the axiom and the first bad degree.
    static std::shared_ptr<const FormalGroupLaw> custom(const TruncSeries& F, int mult_bound = 6);
    // The law g(F(g^-1 u, g^-1 v)) for a series g = x + O(x^2).
    static std::shared_ptr<const FormalGroupLaw> conjugate(const FormalGroupLaw& law, const TruncSeries& g);

    LawKind kind() const { return kind_; }
    RingPtr ring() const { return F_.ring(); }
    int prec() const { return F_.prec(); }
    const TruncSeries& F() const { return F_; }
    const RingElem& beta() const { return beta_; }
    std::string description() const;

    // iota with F(x, iota(x)) = 0.
    const TruncSeries& formal_inverse() const { return inverse_; }
    // m._F x, at precision prec().
    TruncSeries multiple(int m) const;
    // (m._F x)/x, at precision prec()-1.
    TruncSeries psi(int m) const;
    // (F(u,v) - u)/v, at precision prec()-1.
    const TruncSeries& quotient_G() const { return G_; }
    // (t + iota(t)) / (t iota(t)), at precision prec()-2.
    const TruncSeries& kappa_series() const { return kappa_; }

    // F(a, b) for series a, b without constant term.
    TruncSeries add(const TruncSeries& a, const TruncSeries& b) const;
    // G(a, b).
    TruncSeries apply_G(const TruncSeries& a, const TruncSeries& b) const;

    FormalGroupLaw(LawKind kind, TruncSeries F, RingElem beta, int mult_bound);

private:
    LawKind kind_;
    TruncSeries F_;
    RingElem beta_;
    TruncSeries inverse_;
    TruncSeries G_;
    TruncSeries kappa_;
    std::map<int, TruncSeries> multiples_;

    TruncSeries compute_multiple(int m) const;
};

using LawPtr = std::shared_ptr<const FormalGroupLaw>;

// Composition f(g) of univariate series, g without constant term.
TruncSeries compose_univariate(const TruncSeries& f, const TruncSeries& g);
// Compositional inverse of g = x + O(x^2).
TruncSeries reversion(const TruncSeries& g);

}  // namespace demazure
