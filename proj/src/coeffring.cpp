#include "demazure/coeffring.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>

#include "demazure/error.hpp"

namespace demazure {

bool is_probable_prime_small(const Int& p) {
    if (p < Int(2)) return false;
    if (!p.fits_int64()) throw config_error("InvalidRing", "inverted prime too large: " + p.to_string());
    int64_t v = p.small();
    for (int64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) return false;
    }
    return true;
}

namespace {

struct RingRegistry {
    std::mutex mu;
    std::deque<Ring> rings;

    RingPtr intern(RingKind kind, const Int& modulus, const std::vector<Int>& primes, RingPtr base,
                   const std::vector<std::string>& vars) {
        std::lock_guard<std::mutex> lock(mu);
        for (const Ring& r : rings) {
            if (r.kind() == kind && r.modulus() == modulus && r.inverted_primes() == primes && r.base() == base &&
                r.vars() == vars) {
                return &r;
            }
        }
        rings.emplace_back(kind, modulus, primes, base, vars);
        return &rings.back();
    }
};

RingRegistry& registry() {
    static RingRegistry reg;
    return reg;
}

}  // namespace

RingPtr Ring::integers() { return registry().intern(RingKind::Integers, Int(0), {}, nullptr, {}); }

RingPtr Ring::integers_mod(const Int& m) {
    if (m < Int(2)) throw config_error("InvalidRing", "modulus must be at least 2");
    return registry().intern(RingKind::IntegersMod, m, {}, nullptr, {});
}

RingPtr Ring::integers_inv(std::vector<Int> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Int& p : primes) {
        if (!is_probable_prime_small(p)) throw config_error("InvalidRing", "inverted element is not prime: " + p.to_string());
    }
    if (primes.empty()) return integers();
    return registry().intern(RingKind::IntegersInv, Int(0), primes, nullptr, {});
}

RingPtr Ring::poly(RingPtr base, std::vector<std::string> vars) {
    if (base == nullptr || base->kind() == RingKind::Poly) {
        throw config_error("InvalidRing", "polynomial rings nest at most one level");
    }
    if (vars.empty() || static_cast<int>(vars.size()) > kMaxVars) {
        throw config_error("InvalidRing", "polynomial ring needs between 1 and 8 variables");
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].empty()) throw config_error("InvalidRing", "empty variable name");
        for (std::size_t j = 0; j < i; ++j) {
            if (vars[i] == vars[j]) throw config_error("InvalidRing", "duplicate variable name: " + vars[i]);
        }
    }
    return registry().intern(RingKind::Poly, Int(0), {}, base, vars);
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace

RingPtr Ring::parse(std::string_view text) {
    std::string s = trim(text);
    if (s.empty() || (s[0] != 'Z')) throw config_error("InvalidRing", "cannot parse ring: " + s);
    std::size_t pos = 1;
    if (pos < s.size() && s[pos] == 'Z') ++pos;  // accept "ZZ"
    RingPtr base = integers();
    if (pos < s.size() && s[pos] == '/') {
        std::size_t end = s.find('[', pos);
        std::string m = s.substr(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1);
        try {
            base = integers_mod(Int::parse(trim(m)));
        } catch (const std::invalid_argument&) {
            throw config_error("InvalidRing", "bad modulus in ring: " + s);
        }
        pos = end == std::string::npos ? s.size() : end;
    }
    std::vector<std::vector<std::string>> groups;
    while (pos < s.size()) {
        if (s[pos] != '[') throw config_error("InvalidRing", "cannot parse ring: " + s);
        std::size_t close = s.find(']', pos);
        if (close == std::string::npos) throw config_error("InvalidRing", "unbalanced bracket in ring: " + s);
        groups.push_back(split(s.substr(pos + 1, close - pos - 1), ','));
        pos = close + 1;
    }
    RingPtr out = base;
    for (const auto& g : groups) {
        bool inverses = !g.empty() && g[0].rfind("1/", 0) == 0;
        if (inverses) {
            if (out->kind() != RingKind::Integers) throw config_error("InvalidRing", "only Z admits inverted primes: " + s);
            std::vector<Int> primes;
            for (const auto& item : g) {
                if (item.rfind("1/", 0) != 0) throw config_error("InvalidRing", "mixed inverse list in ring: " + s);
                try {
                    primes.push_back(Int::parse(item.substr(2)));
                } catch (const std::invalid_argument&) {
                    throw config_error("InvalidRing", "bad inverted prime in ring: " + s);
                }
            }
            out = integers_inv(primes);
        } else {
            out = poly(out, g);
        }
    }
    return out;
}

bool Ring::is_domain() const {
    switch (kind_) {
        case RingKind::Integers:
        case RingKind::IntegersInv:
            return true;
        case RingKind::IntegersMod:
            return is_probable_prime_small(modulus_);
        case RingKind::Poly:
            return base_->is_domain();
    }
    return false;
}

std::string Ring::name() const {
    switch (kind_) {
        case RingKind::Integers:
            return "Z";
        case RingKind::IntegersMod:
            return "Z/" + modulus_.to_string();
        case RingKind::IntegersInv: {
            std::string out = "Z[";
            for (std::size_t i = 0; i < primes_.size(); ++i) {
                if (i > 0) out += ",";
                out += "1/" + primes_[i].to_string();
            }
            return out + "]";
        }
        case RingKind::Poly: {
            std::string out = base_->name() + "[";
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (i > 0) out += ",";
                out += vars_[i];
            }
            return out + "]";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Scalars

namespace scalar_ops {

namespace {

// Removes every allowed prime from v; returns the cofactor.
Int strip_primes(RingPtr r, Int v) {
    v = abs(v);
    for (const Int& p : r->inverted_primes()) {
        if (v.is_zero()) break;
        Int q;
        Int rem;
        while (true) {
            Int::floor_divmod(v, p, q, rem);
            if (!rem.is_zero()) break;
            v = q;
        }
    }
    return v;
}

}  // namespace

Scalar normalize(RingPtr r, Scalar s) {
    switch (r->kind()) {
        case RingKind::Integers:
            return s;
        case RingKind::IntegersMod:
            if (s.num.sign() < 0 || s.num >= r->modulus()) s.num = Int::mod(s.num, r->modulus());
            return s;
        case RingKind::IntegersInv: {
            if (s.den.is_zero()) throw config_error("InvalidElement", "zero denominator");
            if (s.num.is_zero()) return Scalar{Int(0), Int(1)};
            if (s.den.sign() < 0) {
                s.num = -s.num;
                s.den = -s.den;
            }
            if (!s.den.is_one()) {
                Int g = gcd(s.num, s.den);
                if (!g.is_one()) {
                    s.num = Int::divexact(s.num, g);
                    s.den = Int::divexact(s.den, g);
                }
                if (!strip_primes(r, s.den).is_one()) {
                    throw config_error("InvalidElement", "denominator uses primes that are not inverted in " + r->name());
                }
            }
            return s;
        }
        case RingKind::Poly:
            break;
    }
    throw std::logic_error("scalar_ops on polynomial ring");
}

bool is_zero(const Scalar& s) { return s.num.is_zero(); }

Scalar add(RingPtr r, const Scalar& a, const Scalar& b) {
    if (r->kind() == RingKind::IntegersInv && !(a.den.is_one() && b.den.is_one())) {
        return normalize(r, Scalar{a.num * b.den + b.num * a.den, a.den * b.den});
    }
    Scalar out{a.num + b.num, Int(1)};
    if (r->kind() == RingKind::IntegersMod && out.num >= r->modulus()) out.num -= r->modulus();
    return out;
}

Scalar sub(RingPtr r, const Scalar& a, const Scalar& b) { return add(r, a, neg(r, b)); }

Scalar mul(RingPtr r, const Scalar& a, const Scalar& b) {
    if (r->kind() == RingKind::IntegersInv && !(a.den.is_one() && b.den.is_one())) {
        return normalize(r, Scalar{a.num * b.num, a.den * b.den});
    }
    Scalar out{a.num * b.num, Int(1)};
    if (r->kind() == RingKind::IntegersMod) return normalize(r, std::move(out));
    return out;
}

Scalar neg(RingPtr r, const Scalar& a) {
    if (r->kind() == RingKind::IntegersMod) {
        if (a.num.is_zero()) return a;
        return Scalar{r->modulus() - a.num, Int(1)};
    }
    return Scalar{-a.num, a.den};
}

std::optional<Scalar> try_div(RingPtr r, const Scalar& a, const Scalar& b) {
    if (is_zero(b)) return std::nullopt;
    switch (r->kind()) {
        case RingKind::Integers: {
            Int q;
            Int rem;
            Int::floor_divmod(a.num, b.num, q, rem);
            if (!rem.is_zero()) return std::nullopt;
            return Scalar{q, Int(1)};
        }
        case RingKind::IntegersMod: {
            const Int& m = r->modulus();
            Int g;
            Int s;
            Int t;
            Int::ext_gcd(b.num, m, g, s, t);
            if (!Int::divides(g, a.num)) return std::nullopt;
            // Solutions form a residue class modulo m/g; return its least member.
            Int mg = Int::divexact(m, g);
            Int q = Int::mod(Int::divexact(a.num, g) * s, mg);
            return Scalar{q, Int(1)};
        }
        case RingKind::IntegersInv: {
            Scalar out{a.num * b.den, a.den * b.num};
            if (out.num.is_zero()) return Scalar{Int(0), Int(1)};
            if (out.den.sign() < 0) {
                out.num = -out.num;
                out.den = -out.den;
            }
            Int g = gcd(out.num, out.den);
            out.num = Int::divexact(out.num, g);
            out.den = Int::divexact(out.den, g);
            if (!strip_primes(r, out.den).is_one()) return std::nullopt;
            return out;
        }
        case RingKind::Poly:
            break;
    }
    throw std::logic_error("scalar_ops on polynomial ring");
}

bool is_unit(RingPtr r, const Scalar& a) {
    switch (r->kind()) {
        case RingKind::Integers:
            return abs(a.num).is_one();
        case RingKind::IntegersMod:
            return gcd(a.num, r->modulus()).is_one();
        case RingKind::IntegersInv:
            return !a.num.is_zero() && strip_primes(r, a.num).is_one();
        case RingKind::Poly:
            break;
    }
    return false;
}

bool is_nilpotent(RingPtr r, const Scalar& a) {
    if (r->kind() != RingKind::IntegersMod) return a.num.is_zero();
    Int v = a.num;
    for (int i = 0; i < 130 && !v.is_zero(); ++i) v = Int::mod(v * v, r->modulus());
    return v.is_zero();
}

bool is_regular(RingPtr r, const Scalar& a) {
    if (r->kind() == RingKind::IntegersMod) return gcd(a.num, r->modulus()).is_one();
    return !a.num.is_zero();
}

std::string to_string(RingPtr r, const Scalar& a) {
    if (r->kind() == RingKind::IntegersInv && !a.den.is_one()) return a.num.to_string() + "/" + a.den.to_string();
    return a.num.to_string();
}

Scalar parse(RingPtr r, std::string_view text) {
    std::string s = trim(text);
    try {
        std::size_t slash = s.find('/');
        if (slash != std::string::npos) {
            if (r->kind() != RingKind::IntegersInv) throw config_error("InvalidElement", "fraction in ring " + r->name());
            return normalize(r, Scalar{Int::parse(trim(s.substr(0, slash))), Int::parse(trim(s.substr(slash + 1)))});
        }
        return normalize(r, Scalar{Int::parse(s), Int(1)});
    } catch (const std::invalid_argument&) {
        throw config_error("InvalidElement", "cannot parse coefficient '" + s + "' in " + r->name());
    }
}

}  // namespace scalar_ops

// ---------------------------------------------------------------------------
// RingElem

namespace {

void normalize_terms(RingPtr base, std::vector<PolyTerm>& terms) {
    GrlexLess less;
    std::sort(terms.begin(), terms.end(), [&](const PolyTerm& a, const PolyTerm& b) { return less(a.mono, b.mono); });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        PolyTerm acc = std::move(terms[i]);
        std::size_t j = i + 1;
        while (j < terms.size() && terms[j].mono == acc.mono) {
            acc.coef = scalar_ops::add(base, acc.coef, terms[j].coef);
            ++j;
        }
        if (!scalar_ops::is_zero(acc.coef)) terms[out++] = std::move(acc);
        i = j;
    }
    terms.resize(out);
}

std::vector<PolyTerm> poly_add(RingPtr base, const std::vector<PolyTerm>& a, const std::vector<PolyTerm>& b) {
    std::vector<PolyTerm> out;
    out.reserve(a.size() + b.size());
    GrlexLess less;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && less(a[i].mono, b[j].mono))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || less(b[j].mono, a[i].mono)) {
            out.push_back(b[j++]);
        } else {
            Scalar c = scalar_ops::add(base, a[i].coef, b[j].coef);
            if (!scalar_ops::is_zero(c)) out.push_back(PolyTerm{a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

std::vector<PolyTerm> poly_mul(RingPtr base, const std::vector<PolyTerm>& a, const std::vector<PolyTerm>& b) {
    std::vector<PolyTerm> out;
    if (a.empty() || b.empty()) return out;
    out.reserve(a.size() * b.size());
    for (const auto& ta : a) {
        for (const auto& tb : b) {
            if (ta.mono.degree() + tb.mono.degree() > kMaxDegree) {
                throw config_error("DegreeOverflow", "polynomial coefficient degree exceeds supported maximum");
            }
            out.push_back(PolyTerm{ta.mono * tb.mono, scalar_ops::mul(base, ta.coef, tb.coef)});
        }
    }
    normalize_terms(base, out);
    return out;
}

}  // namespace

void RingElem::check_same(const RingElem& b) const {
    if (ring_ != b.ring_) {
        throw config_error("DescriptorMismatch", "ring mismatch: " + (ring_ ? ring_->name() : std::string("<null>")) +
                                                     " vs " + (b.ring_ ? b.ring_->name() : std::string("<null>")));
    }
}

RingElem RingElem::zero(RingPtr r) {
    RingElem out;
    out.ring_ = r;
    return out;
}

RingElem RingElem::one(RingPtr r) { return from_int(r, Int(1)); }

RingElem RingElem::from_int(RingPtr r, const Int& v) {
    RingElem out;
    out.ring_ = r;
    if (r->kind() == RingKind::Poly) {
        Scalar s = scalar_ops::normalize(r->base(), Scalar{v, Int(1)});
        if (!scalar_ops::is_zero(s)) out.poly_.push_back(PolyTerm{Mono(), std::move(s)});
    } else {
        out.s_ = scalar_ops::normalize(r, Scalar{v, Int(1)});
    }
    return out;
}

RingElem RingElem::fraction(RingPtr r, const Int& num, const Int& den) {
    RingPtr sr = r->scalars();
    if (sr->kind() != RingKind::IntegersInv && !den.is_one()) {
        throw config_error("InvalidElement", "fractions need inverted primes, ring is " + r->name());
    }
    Scalar s = scalar_ops::normalize(sr, Scalar{num, den});
    RingElem out;
    out.ring_ = r;
    if (r->kind() == RingKind::Poly) {
        if (!scalar_ops::is_zero(s)) out.poly_.push_back(PolyTerm{Mono(), std::move(s)});
    } else {
        out.s_ = std::move(s);
    }
    return out;
}

RingElem RingElem::variable(RingPtr r, int index) {
    if (r->kind() != RingKind::Poly || index < 0 || index >= r->nvars()) {
        throw config_error("InvalidElement", "no variable " + std::to_string(index) + " in " + r->name());
    }
    RingElem out;
    out.ring_ = r;
    out.poly_.push_back(PolyTerm{Mono::var(index), scalar_ops::normalize(r->base(), Scalar{Int(1), Int(1)})});
    return out;
}

RingElem RingElem::variable(RingPtr r, std::string_view name) {
    if (r->kind() == RingKind::Poly) {
        for (int i = 0; i < r->nvars(); ++i) {
            if (r->vars()[static_cast<std::size_t>(i)] == name) return variable(r, i);
        }
    }
    throw config_error("InvalidElement", "no variable '" + std::string(name) + "' in " + r->name());
}

RingElem RingElem::from_terms(RingPtr r, std::vector<PolyTerm> terms) {
    if (r->kind() != RingKind::Poly) throw std::logic_error("from_terms on non-polynomial ring");
    for (auto& t : terms) t.coef = scalar_ops::normalize(r->base(), std::move(t.coef));
    normalize_terms(r->base(), terms);
    RingElem out;
    out.ring_ = r;
    out.poly_ = std::move(terms);
    return out;
}

RingElem RingElem::parse(RingPtr r, std::string_view text) {
    if (r->kind() != RingKind::Poly) {
        RingElem out;
        out.ring_ = r;
        out.s_ = scalar_ops::parse(r, text);
        return out;
    }
    std::string s = trim(text);
    std::vector<PolyTerm> terms;
    // Terms are separated by " + "; a term is coef or coef*mono.
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(" + ", pos);
        std::string term = trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (term.empty()) throw config_error("InvalidElement", "empty term in '" + s + "'");
        std::vector<std::string> factors = split(term, '*');
        Scalar coef{Int(1), Int(1)};
        std::vector<int> exps(static_cast<std::size_t>(r->nvars()), 0);
        std::size_t start = 0;
        if (!factors.empty() && !factors[0].empty() &&
            (std::isdigit(static_cast<unsigned char>(factors[0][0])) != 0 || factors[0][0] == '-')) {
            if (factors[0] == "-") throw config_error("InvalidElement", "bad term '" + term + "'");
            coef = scalar_ops::parse(r->base(), factors[0]);
            start = 1;
        }
        for (std::size_t f = start; f < factors.size(); ++f) {
            std::string name = factors[f];
            int e = 1;
            std::size_t caret = name.find('^');
            if (caret != std::string::npos) {
                try {
                    e = std::stoi(name.substr(caret + 1));
                } catch (const std::exception&) {
                    throw config_error("InvalidElement", "bad exponent in '" + term + "'");
                }
                name = name.substr(0, caret);
            }
            bool found = false;
            for (int v = 0; v < r->nvars(); ++v) {
                if (r->vars()[static_cast<std::size_t>(v)] == name) {
                    exps[static_cast<std::size_t>(v)] += e;
                    found = true;
                }
            }
            if (!found) throw config_error("InvalidElement", "unknown variable '" + name + "' in " + r->name());
        }
        terms.push_back(PolyTerm{Mono::from_exponents(exps), coef});
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    return from_terms(r, std::move(terms));
}

bool RingElem::is_zero() const {
    if (ring_ != nullptr && ring_->kind() == RingKind::Poly) return poly_.empty();
    return s_.num.is_zero();
}

bool RingElem::is_one() const {
    if (ring_ != nullptr && ring_->kind() == RingKind::Poly) {
        return poly_.size() == 1 && poly_[0].mono.is_one() && poly_[0].coef.num.is_one() && poly_[0].coef.den.is_one();
    }
    return s_.num.is_one() && s_.den.is_one();
}

RingElem& RingElem::operator+=(const RingElem& b) {
    check_same(b);
    if (ring_->kind() == RingKind::Poly) {
        poly_ = poly_add(ring_->base(), poly_, b.poly_);
    } else {
        s_ = scalar_ops::add(ring_, s_, b.s_);
    }
    return *this;
}

RingElem& RingElem::operator-=(const RingElem& b) { return *this += -b; }

RingElem& RingElem::operator*=(const RingElem& b) {
    check_same(b);
    if (ring_->kind() == RingKind::Poly) {
        poly_ = poly_mul(ring_->base(), poly_, b.poly_);
    } else {
        s_ = scalar_ops::mul(ring_, s_, b.s_);
    }
    return *this;
}

void RingElem::add_product(const RingElem& a, const RingElem& b) {
    if (ring_ == nullptr) *this = zero(a.ring_);
    check_same(a);
    check_same(b);
    if (ring_->kind() == RingKind::Integers) {
        // Common hot path: plain integer multiply-accumulate.
        s_.num += a.s_.num * b.s_.num;
        return;
    }
    *this += a * b;
}

RingElem RingElem::scaled(const Int& k) const { return *this * from_int(ring_, k); }

RingElem RingElem::operator-() const {
    RingElem out;
    out.ring_ = ring_;
    if (ring_->kind() == RingKind::Poly) {
        out.poly_ = poly_;
        for (auto& t : out.poly_) t.coef = scalar_ops::neg(ring_->base(), t.coef);
    } else {
        out.s_ = scalar_ops::neg(ring_, s_);
    }
    return out;
}

bool operator==(const RingElem& a, const RingElem& b) {
    if (a.ring_ != b.ring_) return false;
    if (a.ring_ != nullptr && a.ring_->kind() == RingKind::Poly) return a.poly_ == b.poly_;
    return a.s_ == b.s_;
}

bool canonical_less(const RingElem& a, const RingElem& b) {
    a.check_same(b);
    auto scalar_less = [](const Scalar& x, const Scalar& y) {
        if (x.num != y.num) return x.num < y.num;
        return x.den < y.den;
    };
    if (a.ring_->kind() != RingKind::Poly) return scalar_less(a.s_, b.s_);
    // Fewer terms first, then term-by-term from the top of the grlex order.
    if (a.poly_.size() != b.poly_.size()) return a.poly_.size() < b.poly_.size();
    GrlexLess less;
    for (std::size_t k = a.poly_.size(); k-- > 0;) {
        const auto& ta = a.poly_[k];
        const auto& tb = b.poly_[k];
        if (ta.mono != tb.mono) return less(ta.mono, tb.mono);
        if (!(ta.coef == tb.coef)) return scalar_less(ta.coef, tb.coef);
    }
    return false;
}

std::optional<RingElem> RingElem::try_exact_div(const RingElem& b) const {
    check_same(b);
    if (b.is_zero()) return std::nullopt;
    if (ring_->kind() != RingKind::Poly) {
        auto q = scalar_ops::try_div(ring_, s_, b.s_);
        if (!q) return std::nullopt;
        RingElem out;
        out.ring_ = ring_;
        out.s_ = std::move(*q);
        return out;
    }
    // Leading-term division in grlex order; exact for coefficient domains.
    RingPtr base = ring_->base();
    const PolyTerm& lead = b.poly_.back();
    std::vector<PolyTerm> rem = poly_;
    std::vector<PolyTerm> quot;
    std::size_t guard = 0;
    while (!rem.empty()) {
        if (++guard > 100000) return std::nullopt;
        const PolyTerm& top = rem.back();
        if (!lead.mono.divides(top.mono)) return std::nullopt;
        auto c = scalar_ops::try_div(base, top.coef, lead.coef);
        if (!c) return std::nullopt;
        PolyTerm qt{lead.mono.quotient_of(top.mono), *c};
        std::vector<PolyTerm> sub = poly_mul(base, {qt}, b.poly_);
        for (auto& t : sub) t.coef = scalar_ops::neg(base, t.coef);
        Mono before = top.mono;
        rem = poly_add(base, rem, sub);
        if (!rem.empty() && rem.back().mono == before) return std::nullopt;
        quot.push_back(std::move(qt));
    }
    normalize_terms(base, quot);
    RingElem out;
    out.ring_ = ring_;
    out.poly_ = std::move(quot);
    return out;
}

RingElem RingElem::exact_div(const RingElem& b) const {
    auto q = try_exact_div(b);
    if (!q) {
        throw hypothesis_error("NotDivisible", to_string() + " is not divisible by " + b.to_string() + " in " + ring_->name(),
                               {{"dividend", to_string()}, {"divisor", b.to_string()}, {"ring", ring_->name()}});
    }
    return *q;
}

bool RingElem::is_regular() const {
    if (ring_->kind() != RingKind::Poly) return scalar_ops::is_regular(ring_, s_);
    if (poly_.empty()) return false;
    RingPtr base = ring_->base();
    if (base->kind() != RingKind::IntegersMod) return true;
    // McCoy: a zero divisor is killed by a nonzero constant, i.e. the content
    // shares a factor with the modulus.
    Int g = base->modulus();
    for (const auto& t : poly_) g = gcd(g, t.coef.num);
    return g.is_one();
}

bool RingElem::is_unit() const {
    if (ring_->kind() != RingKind::Poly) return scalar_ops::is_unit(ring_, s_);
    if (poly_.empty()) return false;
    RingPtr base = ring_->base();
    if (!poly_[0].mono.is_one() || !scalar_ops::is_unit(base, poly_[0].coef)) return false;
    for (std::size_t i = 1; i < poly_.size(); ++i) {
        if (!scalar_ops::is_nilpotent(base, poly_[i].coef)) return false;
    }
    return true;
}

RingElem RingElem::inverse() const {
    if (!is_unit()) {
        throw hypothesis_error("NotAUnit", to_string() + " is not a unit in " + ring_->name(), {{"element", to_string()}});
    }
    if (ring_->kind() != RingKind::Poly) return one(ring_).exact_div(*this);
    // c0 + n with n nilpotent: c0^{-1} * sum_k (-n c0^{-1})^k terminates.
    RingPtr base = ring_->base();
    Scalar c0inv = *scalar_ops::try_div(base, Scalar{Int(1), Int(1)}, poly_[0].coef);
    RingElem c0i;
    c0i.ring_ = ring_;
    c0i.poly_.push_back(PolyTerm{Mono(), c0inv});
    RingElem rest = *this;
    rest.poly_.erase(rest.poly_.begin());
    RingElem step = -(rest * c0i);
    RingElem term = one(ring_);
    RingElem sum = one(ring_);
    for (int k = 0; k < 4096; ++k) {
        term *= step;
        if (term.is_zero()) return sum * c0i;
        sum += term;
    }
    throw hypothesis_error("NotAUnit", "inverse series did not terminate for " + to_string());
}

std::optional<Int> RingElem::as_integer() const {
    if (ring_->kind() == RingKind::Poly) {
        if (poly_.empty()) return Int(0);
        if (poly_.size() != 1 || !poly_[0].mono.is_one() || !poly_[0].coef.den.is_one()) return std::nullopt;
        return poly_[0].coef.num;
    }
    if (!s_.den.is_one()) return std::nullopt;
    return s_.num;
}

std::vector<std::string> RingElem::to_term_strings() const {
    if (ring_->kind() != RingKind::Poly) return {scalar_ops::to_string(ring_, s_)};
    std::vector<std::string> out;
    for (const auto& t : poly_) {
        std::string c = scalar_ops::to_string(ring_->base(), t.coef);
        if (t.mono.is_one()) {
            out.push_back(c);
        } else {
            out.push_back(c + "*" + mono_to_string(t.mono, ring_->nvars(), ring_->vars()));
        }
    }
    return out;
}

std::string RingElem::to_string() const {
    if (ring_ == nullptr) return "<uninitialized>";
    if (ring_->kind() != RingKind::Poly) return scalar_ops::to_string(ring_, s_);
    if (poly_.empty()) return "0";
    std::string out;
    for (const auto& s : to_term_strings()) {
        if (!out.empty()) out += " + ";
        out += s;
    }
    return out;
}

}  // namespace demazure
