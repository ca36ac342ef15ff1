#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "demazure/bigint.hpp"
#include "demazure/monomial.hpp"

namespace demazure {

enum class RingKind { Integers, IntegersMod, IntegersInv, Poly };

class Ring;
using RingPtr = const Ring*;

// Interned ring descriptor. Descriptors are created once and live for the
// whole process, so equality of rings is pointer equality.
class Ring {
public:
    static RingPtr integers();
    static RingPtr integers_mod(const Int& m);
    static RingPtr integers_inv(std::vector<Int> primes);
    static RingPtr poly(RingPtr base, std::vector<std::string> vars);
    // Accepts "Z", "Z/4", "Z[1/2,1/3]", "Z[a,b]", "Z/4[t]", "Z[1/2][a]".
    static RingPtr parse(std::string_view text);

    RingKind kind() const { return kind_; }
    const Int& modulus() const { return modulus_; }
    const std::vector<Int>& inverted_primes() const { return primes_; }
    RingPtr base() const { return base_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    // Coefficient ring of a polynomial ring, or the ring itself.
    RingPtr scalars() const { return kind_ == RingKind::Poly ? base_ : this; }
    bool is_domain() const;
    std::string name() const;

    Ring(RingKind kind, Int modulus, std::vector<Int> primes, RingPtr base, std::vector<std::string> vars)
        : kind_(kind), modulus_(std::move(modulus)), primes_(std::move(primes)), base_(base), vars_(std::move(vars)) {}

private:
    RingKind kind_;
    Int modulus_;
    std::vector<Int> primes_;
    RingPtr base_ = nullptr;
    std::vector<std::string> vars_;
};

// Element of a non-polynomial ring: an integer, a residue, or a reduced
// fraction whose denominator is a product of inverted primes.
struct Scalar {
    Int num;
    Int den{1};
    friend bool operator==(const Scalar&, const Scalar&) = default;
};

struct PolyTerm {
    Mono mono;
    Scalar coef;
    friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

class RingElem {
public:
    RingElem() = default;

    static RingElem zero(RingPtr r);
    static RingElem one(RingPtr r);
    static RingElem from_int(RingPtr r, const Int& v);
    static RingElem fraction(RingPtr r, const Int& num, const Int& den);
    static RingElem variable(RingPtr r, int index);
    static RingElem variable(RingPtr r, std::string_view name);
    static RingElem from_terms(RingPtr r, std::vector<PolyTerm> terms);
    static RingElem parse(RingPtr r, std::string_view text);

    RingPtr ring() const { return ring_; }
    bool is_zero() const;
    bool is_one() const;
    const Scalar& scalar() const { return s_; }
    const std::vector<PolyTerm>& terms() const { return poly_; }

    RingElem& operator+=(const RingElem& b);
    RingElem& operator-=(const RingElem& b);
    RingElem& operator*=(const RingElem& b);
    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
    RingElem operator-() const;
    // this += a*b without a temporary for the common scalar case.
    void add_product(const RingElem& a, const RingElem& b);
    RingElem scaled(const Int& k) const;

    friend bool operator==(const RingElem& a, const RingElem& b);

    // q with q*b == *this; the smallest such q in the canonical order when
    // several exist. nullopt when no solution exists.
    std::optional<RingElem> try_exact_div(const RingElem& b) const;
    // Throws Error(NotDivisible) carrying both operands.
    RingElem exact_div(const RingElem& b) const;
    // Multiplication by *this is injective.
    bool is_regular() const;
    bool is_unit() const;
    RingElem inverse() const;

    // Integer value when the element is the image of an integer under Z -> R
    // (for residues the representative in [0, m)).
    std::optional<Int> as_integer() const;
    std::string to_string() const;
    // Strings of the form "coef*mono" in grlex order (polynomial rings) or a
    // single string (other rings).
    std::vector<std::string> to_term_strings() const;

    // Total order on normal forms, used to pick canonical solutions.
    friend bool canonical_less(const RingElem& a, const RingElem& b);

private:
    RingPtr ring_ = nullptr;
    Scalar s_;
    std::vector<PolyTerm> poly_;

    void check_same(const RingElem& b) const;
};

// Ring operations on raw scalars of a non-polynomial ring.
namespace scalar_ops {
Scalar normalize(RingPtr r, Scalar s);
bool is_zero(const Scalar& s);
Scalar add(RingPtr r, const Scalar& a, const Scalar& b);
Scalar sub(RingPtr r, const Scalar& a, const Scalar& b);
Scalar mul(RingPtr r, const Scalar& a, const Scalar& b);
Scalar neg(RingPtr r, const Scalar& a);
std::optional<Scalar> try_div(RingPtr r, const Scalar& a, const Scalar& b);
bool is_unit(RingPtr r, const Scalar& a);
bool is_nilpotent(RingPtr r, const Scalar& a);
bool is_regular(RingPtr r, const Scalar& a);
std::string to_string(RingPtr r, const Scalar& a);
Scalar parse(RingPtr r, std::string_view text);
}  // namespace scalar_ops

bool is_probable_prime_small(const Int& p);

}  // namespace demazure
