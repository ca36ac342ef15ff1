#include "demazure/fgl.hpp"

#include <array>

#include "demazure/error.hpp"

namespace demazure {

namespace {

TruncSeries uvar(RingPtr r, int nvars, int prec, int i) { return TruncSeries::variable(r, nvars, prec, i); }

// Lowest degree at which a and b differ, or -1.
int first_difference(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries d = a - b;
    return d.is_zero() ? -1 : d.valuation();
}

Error axiom_violation(const std::string& axiom, int degree) {
    return config_error("AxiomViolation", "formal group law fails " + axiom + " in degree " + std::to_string(degree),
                        {{"axiom", axiom}, {"degree", std::to_string(degree)}});
}

void verify_axioms(const TruncSeries& F) {
    RingPtr r = F.ring();
    const int p = F.prec();
    if (F.nvars() != 2) throw config_error("InvalidLaw", "a formal group law is a series in two variables");
    TruncSeries u = uvar(r, 2, p, 0);
    TruncSeries v = uvar(r, 2, p, 1);
    TruncSeries zero = TruncSeries::zero(r, 2, p);
    std::array<TruncSeries, 2> left{u, zero};
    if (int d = first_difference(substitute(F, left), u); d >= 0) throw axiom_violation("unit F(u,0)=u", d);
    std::array<TruncSeries, 2> right{zero, v};
    if (int d = first_difference(substitute(F, right), v); d >= 0) throw axiom_violation("unit F(0,v)=v", d);
    std::array<TruncSeries, 2> swap{v, u};
    if (int d = first_difference(substitute(F, swap), F); d >= 0) throw axiom_violation("commutativity", d);
    TruncSeries a = uvar(r, 3, p, 0);
    TruncSeries b = uvar(r, 3, p, 1);
    TruncSeries c = uvar(r, 3, p, 2);
    std::array<TruncSeries, 2> ab{a, b};
    std::array<TruncSeries, 2> bc{b, c};
    TruncSeries Fab = substitute(F, ab);
    TruncSeries Fbc = substitute(F, bc);
    std::array<TruncSeries, 2> lhs{Fab, c};
    std::array<TruncSeries, 2> rhs{a, Fbc};
    if (int d = first_difference(substitute(F, lhs), substitute(F, rhs)); d >= 0) throw axiom_violation("associativity", d);
}

}  // namespace

TruncSeries compose_univariate(const TruncSeries& f, const TruncSeries& g) {
    std::array<TruncSeries, 1> im{g};
    return substitute(f, im);
}

TruncSeries reversion(const TruncSeries& g) {
    RingPtr r = g.ring();
    const int p = g.prec();
    TruncSeries x = uvar(r, 1, p, 0);
    if (!g.constant_term().is_zero() || !g.coeff(Mono::var(0)).is_one()) {
        throw config_error("InvalidSeries", "reversion needs a series x + O(x^2)");
    }
    // h <- h - (g(h) - x): each pass fixes one more degree.
    TruncSeries h = x;
    for (int k = 1; k < p; ++k) h = h - (compose_univariate(g, h) - x);
    return h;
}

FormalGroupLaw::FormalGroupLaw(LawKind kind, TruncSeries F, RingElem beta, int mult_bound)
    : kind_(kind), F_(std::move(F)), beta_(std::move(beta)) {
    RingPtr r = F_.ring();
    const int p = F_.prec();
    if (p < 3) throw config_error("InvalidLaw", "formal group laws need precision at least 3");
    TruncSeries x = uvar(r, 1, p, 0);
    // iota <- iota - F(x, iota); the derivative in v is a unit 1 + O(x).
    TruncSeries iota = -x;
    for (int k = 1; k < p; ++k) {
        std::array<TruncSeries, 2> im{x, iota};
        iota = iota - substitute(F_, im);
    }
    inverse_ = iota;
    G_ = divide_by_coordinate(F_ - uvar(r, 2, p, 0), 1);
    TruncSeries num = divide_by_coordinate(divide_by_coordinate(x + inverse_, 0), 0);
    TruncSeries den = invert_unit(divide_by_coordinate(inverse_, 0));
    kappa_ = mul(num, den);
    for (int m = -mult_bound; m <= mult_bound; ++m) multiples_.emplace(m, compute_multiple(m));
}

TruncSeries FormalGroupLaw::compute_multiple(int m) const {
    RingPtr r = F_.ring();
    const int p = F_.prec();
    TruncSeries x = uvar(r, 1, p, 0);
    if (m == 0) return TruncSeries::zero(r, 1, p);
    if (m < 0) return compose_univariate(inverse_, compute_multiple(-m));
    TruncSeries acc = x;
    for (int k = 1; k < m; ++k) {
        std::array<TruncSeries, 2> im{acc, x};
        acc = substitute(F_, im);
    }
    return acc;
}

TruncSeries FormalGroupLaw::multiple(int m) const {
    auto it = multiples_.find(m);
    if (it != multiples_.end()) return it->second;
    return compute_multiple(m);
}

TruncSeries FormalGroupLaw::psi(int m) const { return divide_by_coordinate(multiple(m), 0); }

TruncSeries FormalGroupLaw::add(const TruncSeries& a, const TruncSeries& b) const {
    std::array<TruncSeries, 2> im{a, b};
    return substitute(F_, im);
}

TruncSeries FormalGroupLaw::apply_G(const TruncSeries& a, const TruncSeries& b) const {
    std::array<TruncSeries, 2> im{a, b};
    return substitute(G_, im);
}

std::string FormalGroupLaw::description() const {
    switch (kind_) {
        case LawKind::Additive:
            return "additive";
        case LawKind::Multiplicative:
            return "multiplicative(beta=" + beta_.to_string() + ")";
        case LawKind::Custom: {
            std::vector<std::string> names{"u", "v"};
            return "custom(" + F_.to_string(names) + ")";
        }
    }
    return "?";
}

LawPtr FormalGroupLaw::additive(RingPtr ring, int prec) {
    TruncSeries F = uvar(ring, 2, prec, 0) + uvar(ring, 2, prec, 1);
    return std::make_shared<const FormalGroupLaw>(LawKind::Additive, F, RingElem::zero(ring), 6);
}

LawPtr FormalGroupLaw::multiplicative(const RingElem& beta, int prec) {
    RingPtr r = beta.ring();
    TruncSeries u = uvar(r, 2, prec, 0);
    TruncSeries v = uvar(r, 2, prec, 1);
    TruncSeries F = u + v - mul(u, v).scaled(beta);
    return std::make_shared<const FormalGroupLaw>(LawKind::Multiplicative, F, beta, 6);
}

LawPtr FormalGroupLaw::custom(const TruncSeries& F, int mult_bound) {
    verify_axioms(F);
    return std::make_shared<const FormalGroupLaw>(LawKind::Custom, F, RingElem::zero(F.ring()), mult_bound);
}

LawPtr FormalGroupLaw::conjugate(const FormalGroupLaw& law, const TruncSeries& g) {
    const int p = std::min(law.prec(), g.prec());
    TruncSeries gp = g.truncated(p);
    TruncSeries ginv = reversion(gp);
    RingPtr r = law.ring();
    std::array<TruncSeries, 1> gu{uvar(r, 2, p, 0)};
    std::array<TruncSeries, 1> gv{uvar(r, 2, p, 1)};
    TruncSeries a = substitute(ginv, gu);
    TruncSeries b = substitute(ginv, gv);
    TruncSeries inner = law.add(a, b);
    std::array<TruncSeries, 1> outer{inner};
    return custom(substitute(gp, outer));
}

}  // namespace demazure
