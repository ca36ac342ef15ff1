#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "demazure/coeffring.hpp"
#include "demazure/intlinalg.hpp"
#include "demazure/monomial.hpp"

namespace demazure {

struct SeriesTerm {
    Mono mono;
    RingElem coef;
    friend bool operator==(const SeriesTerm&, const SeriesTerm&) = default;
};

// Multivariate power series known up to and including total degree prec().
// Terms are kept in grlex order with no zero coefficients and no degree
// above prec().
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(RingPtr ring, int nvars, int prec);

    static TruncSeries zero(RingPtr ring, int nvars, int prec) { return {ring, nvars, prec}; }
    static TruncSeries constant(RingPtr ring, int nvars, int prec, const RingElem& c);
    static TruncSeries one(RingPtr ring, int nvars, int prec);
    static TruncSeries variable(RingPtr ring, int nvars, int prec, int i);
    // Sorts, merges and truncates.
    static TruncSeries from_terms(RingPtr ring, int nvars, int prec, std::vector<SeriesTerm> terms);
    // Terms must already be sorted, distinct, nonzero and within prec.
    static TruncSeries from_sorted_terms(RingPtr ring, int nvars, int prec, std::vector<SeriesTerm> terms);

    RingPtr ring() const { return ring_; }
    int nvars() const { return nvars_; }
    int prec() const { return prec_; }
    const std::vector<SeriesTerm>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    // Lowest degree carrying a nonzero term; prec()+1 for the zero series.
    int valuation() const;
    RingElem constant_term() const;
    RingElem coeff(Mono m) const;

    TruncSeries truncated(int p) const;
    TruncSeries homogeneous_part(int d) const;
    TruncSeries with_prec(int p) const { return truncated(p); }

    TruncSeries& operator+=(const TruncSeries& b);
    TruncSeries& operator-=(const TruncSeries& b);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    TruncSeries operator-() const;
    TruncSeries scaled(const RingElem& c) const;
    TruncSeries scaled(const Int& c) const;

    // Agreement of all coefficients of degree <= p.
    bool agrees_with(const TruncSeries& b, int p) const;
    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

    std::string to_string(std::span<const std::string> names = {}) const;

private:
    friend TruncSeries mul(const TruncSeries&, const TruncSeries&);
    friend TruncSeries mul_tracked(const TruncSeries&, const TruncSeries&, int);
    friend class MonomialOperator;

    void check_compatible(const TruncSeries& b) const;

    RingPtr ring_ = nullptr;
    int nvars_ = 0;
    int prec_ = 0;
    std::vector<SeriesTerm> terms_;
};

// Product at precision min(prec f, prec g).
TruncSeries mul(const TruncSeries& f, const TruncSeries& g);
// Product at the precision actually determined by the inputs,
// min(prec f + val g, prec g + val f), capped at cap.
TruncSeries mul_tracked(const TruncSeries& f, const TruncSeries& g, int cap);

// Substitutes x_i -> images[i]; images have zero constant term and share a
// ring and variable count. Result precision is the least input precision.
TruncSeries substitute(const TruncSeries& f, std::span<const TruncSeries> images);
// x_i -> sum_j A_ij x_j, at unchanged precision.
TruncSeries change_vars(const TruncSeries& f, const IntMatrix& A);
// g with g * x_i = f, at precision prec f - 1.
TruncSeries divide_by_coordinate(const TruncSeries& f, int i);
// q with q * g = f, at precision min(prec f, prec g) - 1.
TruncSeries exact_div_linear(const TruncSeries& f, const TruncSeries& g);
TruncSeries invert_unit(const TruncSeries& f);

// Counts of series divisions and of those confirmed by multiplying back.
struct DivisionAudit {
    uint64_t performed = 0;
    uint64_t verified = 0;
};
DivisionAudit division_audit();
void reset_division_audit();
// Multiply-back checks run unless disabled (benchmarks only).
void set_division_verification(bool on);

// Linear map on series given by the images of monomials of degree <= max
// degree. Images are exact up to image_prec; an input of precision p yields
// an output of precision min(min(p, max_degree) + shift, image_prec).
class MonomialOperator {
public:
    struct Entry {
        int32_t rank;
        RingElem coef;
    };

    MonomialOperator() = default;
    // images[r] is the image of monomial rank r of MonomialIndex(nvars, max_degree).
    MonomialOperator(RingPtr ring, int nvars, int max_degree, int shift, int image_prec,
                     std::vector<std::vector<Entry>> images);

    int max_degree() const { return max_degree_; }
    int shift() const { return shift_; }
    int image_prec() const { return image_prec_; }
    int output_prec(int input_prec) const;
    const std::vector<Entry>& image(std::size_t rank) const { return images_[rank]; }

    // Gather form over output monomials, parallel with OpenMP.
    TruncSeries apply(const TruncSeries& f) const;
    // Scatter form over input terms; the serial reference.
    TruncSeries apply_serial(const TruncSeries& f) const;

private:
    RingPtr ring_ = nullptr;
    int nvars_ = 0;
    int max_degree_ = 0;
    int shift_ = 0;
    int image_prec_ = 0;
    std::shared_ptr<const MonomialIndex> index_;
    std::vector<std::vector<Entry>> images_;
    // Transposed images: rows indexed by output rank.
    std::vector<std::size_t> row_start_;
    std::vector<int32_t> col_;
    std::vector<RingElem> val_;
};

// Operator of the linear substitution x_i -> sum_j A_ij x_j.
MonomialOperator linear_substitution(RingPtr ring, const IntMatrix& A, int max_degree);

// Division by a fixed series g with zero constant term, reusing the change of
// coordinates that moves the linear part of g onto the first variable.
class LinearDivider {
public:
    LinearDivider(const TruncSeries& g, int max_degree);
    TruncSeries divide(const TruncSeries& f) const;
    std::optional<TruncSeries> try_divide(const TruncSeries& f) const;
    const TruncSeries& divisor() const { return g_; }

private:
    TruncSeries g_;
    int max_degree_;
    RingElem content_;
    bool identity_ = true;
    MonomialOperator to_y_;    // x = U^{-1} y
    MonomialOperator to_x_;    // y = U x
    std::vector<TruncSeries> g_parts_;  // homogeneous parts of g in y coordinates

    std::optional<TruncSeries> solve(const TruncSeries& f, int* failed_degree) const;
};

}  // namespace demazure
