#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmp.h>

namespace demazure {

// Arbitrary precision integer with an inline int64 fast path.
// Values that fit in int64 never touch the heap; overflow promotes to GMP.
class Int {
public:
    Int() noexcept = default;
    Int(int64_t v) noexcept : small_(v) {}  // NOLINT(google-explicit-constructor)
    Int(int v) noexcept : small_(v) {}      // NOLINT(google-explicit-constructor)
    Int(const Int& other);
    Int(Int&& other) noexcept : small_(other.small_), big_(other.big_) { other.big_ = nullptr; }
    Int& operator=(const Int& other);
    Int& operator=(Int&& other) noexcept;
    ~Int();

    static Int parse(std::string_view text);

    bool is_zero() const noexcept { return big_ == nullptr && small_ == 0; }
    bool is_one() const noexcept { return big_ == nullptr && small_ == 1; }
    int sign() const noexcept;
    bool is_small() const noexcept { return big_ == nullptr; }
    int64_t small() const noexcept { return small_; }
    // Throws std::overflow_error when the value does not fit.
    int64_t to_int64() const;
    bool fits_int64() const noexcept { return big_ == nullptr; }

    Int& operator+=(const Int& b);
    Int& operator-=(const Int& b);
    Int& operator*=(const Int& b);

    friend Int operator+(Int a, const Int& b) { return a += b; }
    friend Int operator-(Int a, const Int& b) { return a -= b; }
    friend Int operator*(Int a, const Int& b) { return a *= b; }
    Int operator-() const;

    friend bool operator==(const Int& a, const Int& b) noexcept;
    friend std::strong_ordering operator<=>(const Int& a, const Int& b) noexcept;

    // Floor division and the matching nonnegative-for-positive-divisor remainder.
    static void floor_divmod(const Int& a, const Int& b, Int& q, Int& r);
    // Truncating division; caller guarantees b divides a.
    static Int divexact(const Int& a, const Int& b);
    // Nonnegative residue of a modulo m > 0.
    static Int mod(const Int& a, const Int& m);
    static bool divides(const Int& d, const Int& a);

    friend Int gcd(const Int& a, const Int& b);
    friend Int abs(const Int& a);
    // g = gcd(a,b) >= 0 and s*a + t*b = g.
    static void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t);

    std::string to_string() const;
    std::size_t hash() const noexcept;

private:
    int64_t small_ = 0;
    __mpz_struct* big_ = nullptr;

    void promote();
    void demote();
    void set_big_from(const __mpz_struct* src);
};

std::string to_string(const Int& v);

}  // namespace demazure
