#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace demazure {

inline constexpr int kMaxVars = 8;
inline constexpr int kMaxDegree = 250;

// Exponent vector packed one byte per variable, variable 0 in the most
// significant byte, so that integer order on equal-degree monomials is
// lexicographic order on (e_0, e_1, ...).
class Mono {
public:
    constexpr Mono() = default;
    static constexpr Mono from_bits(uint64_t bits) { return Mono(bits); }
    static Mono from_exponents(std::span<const int> exps);
    static constexpr Mono var(int i) { return Mono(uint64_t{1} << shift(i)); }

    constexpr uint64_t bits() const { return bits_; }
    constexpr int exp(int i) const { return static_cast<int>((bits_ >> shift(i)) & 0xffU); }
    int degree() const;
    bool is_one() const { return bits_ == 0; }

    // Caller keeps degrees below kMaxDegree, so bytes never carry.
    constexpr Mono operator*(Mono o) const { return Mono(bits_ + o.bits_); }
    bool divides(Mono o) const;
    // Precondition: divides(o).
    constexpr Mono quotient_of(Mono o) const { return Mono(o.bits_ - bits_); }

    std::vector<int> exponents(int nvars) const;

    friend constexpr bool operator==(Mono a, Mono b) { return a.bits_ == b.bits_; }

private:
    explicit constexpr Mono(uint64_t bits) : bits_(bits) {}
    static constexpr int shift(int i) { return 8 * (kMaxVars - 1 - i); }
    uint64_t bits_ = 0;
};

// Graded lexicographic order: total degree first, then (e_0, e_1, ...).
struct GrlexLess {
    bool operator()(Mono a, Mono b) const {
        int da = a.degree();
        int db = b.degree();
        if (da != db) return da < db;
        return a.bits() < b.bits();
    }
};

struct MonoHash {
    std::size_t operator()(Mono m) const noexcept {
        uint64_t x = m.bits() * 0x9E3779B97F4A7C15ULL;
        return static_cast<std::size_t>(x ^ (x >> 29));
    }
};

// All monomials in nvars variables of degree <= max_degree, in grlex order,
// with constant-time rank lookup.
class MonomialIndex {
public:
    static std::shared_ptr<const MonomialIndex> get(int nvars, int max_degree);

    MonomialIndex(int nvars, int max_degree);

    int nvars() const { return nvars_; }
    int max_degree() const { return max_degree_; }
    std::size_t size() const { return monos_.size(); }
    Mono mono(std::size_t rank) const { return monos_[rank]; }
    // First rank of each degree; degree_begin(d+1) is one past the last.
    std::size_t degree_begin(int d) const { return degree_start_[static_cast<std::size_t>(d)]; }
    // -1 when m is outside the index.
    int rank(Mono m) const;

private:
    int nvars_;
    int max_degree_;
    std::vector<Mono> monos_;
    std::vector<std::size_t> degree_start_;
    // Direct addressing for small variable counts, hashing otherwise.
    std::vector<int32_t> direct_;
    std::unordered_map<Mono, int32_t, MonoHash> hashed_;
    int radix_ = 0;
};

std::string mono_to_string(Mono m, int nvars, std::span<const std::string> names);

}  // namespace demazure
