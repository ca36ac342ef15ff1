#include "demazure/bigint.hpp"

#include <gmp.h>

#include <functional>
#include <limits>
#include <stdexcept>

namespace demazure {

namespace {

// Scoped mpz view of an Int; copies only small values.
class MpzView {
public:
    explicit MpzView(const Int& v, const __mpz_struct* big) {
        if (big != nullptr) {
            ptr_ = big;
        } else {
            mpz_init(tmp_);
            set_int64(tmp_, v.small());
            owned_ = true;
            ptr_ = tmp_;
        }
    }
    ~MpzView() {
        if (owned_) mpz_clear(tmp_);
    }
    MpzView(const MpzView&) = delete;
    MpzView& operator=(const MpzView&) = delete;
    const __mpz_struct* get() const { return ptr_; }

    static void set_int64(mpz_ptr dst, int64_t v) {
        if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
            mpz_set_si(dst, static_cast<long>(v));
        } else {
            // long is 64-bit on the supported platforms; keep the branch for completeness.
            mpz_set_si(dst, static_cast<long>(v / 2));
            mpz_mul_ui(dst, dst, 2);
            if (v % 2 != 0) mpz_add_ui(dst, dst, 1);
        }
    }

private:
    mpz_t tmp_{};
    bool owned_ = false;
    const __mpz_struct* ptr_ = nullptr;
};

}  // namespace

Int::Int(const Int& other) : small_(other.small_) {
    if (other.big_ != nullptr) set_big_from(other.big_);
}

Int& Int::operator=(const Int& other) {
    if (this == &other) return *this;
    if (other.big_ == nullptr) {
        if (big_ != nullptr) {
            mpz_clear(big_);
            delete big_;
            big_ = nullptr;
        }
        small_ = other.small_;
    } else {
        if (big_ == nullptr) {
            set_big_from(other.big_);
        } else {
            mpz_set(big_, other.big_);
        }
    }
    return *this;
}

Int& Int::operator=(Int&& other) noexcept {
    if (this == &other) return *this;
    if (big_ != nullptr) {
        mpz_clear(big_);
        delete big_;
    }
    small_ = other.small_;
    big_ = other.big_;
    other.big_ = nullptr;
    return *this;
}

Int::~Int() {
    if (big_ != nullptr) {
        mpz_clear(big_);
        delete big_;
    }
}

void Int::set_big_from(const __mpz_struct* src) {
    big_ = new __mpz_struct;
    mpz_init_set(big_, src);
}

void Int::promote() {
    if (big_ != nullptr) return;
    big_ = new __mpz_struct;
    mpz_init(big_);
    MpzView::set_int64(big_, small_);
}

void Int::demote() {
    if (big_ == nullptr) return;
    if (mpz_fits_slong_p(big_) != 0) {
        small_ = mpz_get_si(big_);
        mpz_clear(big_);
        delete big_;
        big_ = nullptr;
    }
}

Int Int::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed integer literal: " + s);
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer literal: " + s);
    }
    if (s[0] == '+') s.erase(0, 1);
    Int out;
    out.big_ = new __mpz_struct;
    mpz_init_set_str(out.big_, s.c_str(), 10);
    out.demote();
    return out;
}

int Int::sign() const noexcept {
    if (big_ != nullptr) return mpz_sgn(big_);
    return (small_ > 0) - (small_ < 0);
}

int64_t Int::to_int64() const {
    if (big_ != nullptr) throw std::overflow_error("integer does not fit in 64 bits");
    return small_;
}

Int& Int::operator+=(const Int& b) {
    if (big_ == nullptr && b.big_ == nullptr) {
        int64_t r = 0;
        if (!__builtin_add_overflow(small_, b.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    promote();
    MpzView vb(b, b.big_);
    mpz_add(big_, big_, vb.get());
    demote();
    return *this;
}

Int& Int::operator-=(const Int& b) {
    if (big_ == nullptr && b.big_ == nullptr) {
        int64_t r = 0;
        if (!__builtin_sub_overflow(small_, b.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    promote();
    MpzView vb(b, b.big_);
    mpz_sub(big_, big_, vb.get());
    demote();
    return *this;
}

Int& Int::operator*=(const Int& b) {
    if (big_ == nullptr && b.big_ == nullptr) {
        int64_t r = 0;
        if (!__builtin_mul_overflow(small_, b.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    promote();
    MpzView vb(b, b.big_);
    mpz_mul(big_, big_, vb.get());
    demote();
    return *this;
}

Int Int::operator-() const {
    Int out(*this);
    if (out.big_ == nullptr && out.small_ != std::numeric_limits<int64_t>::min()) {
        out.small_ = -out.small_;
        return out;
    }
    out.promote();
    mpz_neg(out.big_, out.big_);
    out.demote();
    return out;
}

bool operator==(const Int& a, const Int& b) noexcept {
    if (a.big_ == nullptr && b.big_ == nullptr) return a.small_ == b.small_;
    if (a.big_ == nullptr || b.big_ == nullptr) return false;  // canonical: small values are never big
    return mpz_cmp(a.big_, b.big_) == 0;
}

std::strong_ordering operator<=>(const Int& a, const Int& b) noexcept {
    if (a.big_ == nullptr && b.big_ == nullptr) return a.small_ <=> b.small_;
    int c = 0;
    if (a.big_ != nullptr && b.big_ != nullptr) {
        c = mpz_cmp(a.big_, b.big_);
    } else if (a.big_ != nullptr) {
        c = mpz_cmp_si(a.big_, static_cast<long>(b.small_));
    } else {
        c = -mpz_cmp_si(b.big_, static_cast<long>(a.small_));
    }
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

void Int::floor_divmod(const Int& a, const Int& b, Int& q, Int& r) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.big_ == nullptr && b.big_ == nullptr &&
        !(a.small_ == std::numeric_limits<int64_t>::min() && b.small_ == -1)) {
        int64_t qq = a.small_ / b.small_;
        int64_t rr = a.small_ % b.small_;
        if (rr != 0 && ((rr < 0) != (b.small_ < 0))) {
            qq -= 1;
            rr += b.small_;
        }
        q = Int(qq);
        r = Int(rr);
        return;
    }
    MpzView va(a, a.big_);
    MpzView vb(b, b.big_);
    Int qq;
    Int rr;
    qq.promote();
    rr.promote();
    mpz_fdiv_qr(qq.big_, rr.big_, va.get(), vb.get());
    qq.demote();
    rr.demote();
    q = std::move(qq);
    r = std::move(rr);
}

Int Int::divexact(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.big_ == nullptr && b.big_ == nullptr &&
        !(a.small_ == std::numeric_limits<int64_t>::min() && b.small_ == -1)) {
        return Int(a.small_ / b.small_);
    }
    MpzView va(a, a.big_);
    MpzView vb(b, b.big_);
    Int out;
    out.promote();
    mpz_divexact(out.big_, va.get(), vb.get());
    out.demote();
    return out;
}

Int Int::mod(const Int& a, const Int& m) {
    Int q;
    Int r;
    floor_divmod(a, m, q, r);
    return r;
}

bool Int::divides(const Int& d, const Int& a) {
    if (d.is_zero()) return a.is_zero();
    Int q;
    Int r;
    floor_divmod(a, d, q, r);
    return r.is_zero();
}

Int gcd(const Int& a, const Int& b) {
    if (a.big_ == nullptr && b.big_ == nullptr && a.small_ != std::numeric_limits<int64_t>::min() &&
        b.small_ != std::numeric_limits<int64_t>::min()) {
        int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
        int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
        while (y != 0) {
            int64_t t = x % y;
            x = y;
            y = t;
        }
        return Int(x);
    }
    MpzView va(a, a.big_);
    MpzView vb(b, b.big_);
    Int out;
    out.promote();
    mpz_gcd(out.big_, va.get(), vb.get());
    out.demote();
    return out;
}

Int abs(const Int& a) { return a.sign() < 0 ? -a : a; }

void Int::ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    MpzView va(a, a.big_);
    MpzView vb(b, b.big_);
    Int gg;
    Int ss;
    Int tt;
    gg.promote();
    ss.promote();
    tt.promote();
    mpz_gcdext(gg.big_, ss.big_, tt.big_, va.get(), vb.get());
    gg.demote();
    ss.demote();
    tt.demote();
    g = std::move(gg);
    s = std::move(ss);
    t = std::move(tt);
}

std::string Int::to_string() const {
    if (big_ == nullptr) return std::to_string(small_);
    std::string out(mpz_sizeinbase(big_, 10) + 2, '\0');
    mpz_get_str(out.data(), 10, big_);
    out.resize(std::char_traits<char>::length(out.c_str()));
    return out;
}

std::size_t Int::hash() const noexcept {
    if (big_ == nullptr) return std::hash<int64_t>{}(small_);
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < mpz_size(big_); ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(big_, static_cast<mp_size_t>(i)));
        h *= 0x100000001b3ULL;
    }
    return h ^ static_cast<std::size_t>(mpz_sgn(big_));
}

std::string to_string(const Int& v) { return v.to_string(); }

}  // namespace demazure
