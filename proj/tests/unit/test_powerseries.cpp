#include "doctest.h"

#include "demazure/error.hpp"
#include "demazure/powerseries.hpp"
#include "generators.hpp"

using namespace demazure;

namespace {

RingPtr ZZ() { return Ring::integers(); }

TruncSeries var(int n, int p, int i, RingPtr r = Ring::integers()) { return TruncSeries::variable(r, n, p, i); }
TruncSeries cst(int n, int p, int64_t c, RingPtr r = Ring::integers()) {
    return TruncSeries::constant(r, n, p, RingElem::from_int(r, c));
}

}  // namespace

TEST_SUITE("powerseries") {
TEST_CASE("multiplication examples and precision") {
    TruncSeries x = var(1, 5, 0);
    TruncSeries one = cst(1, 5, 1);
    TruncSeries p = mul(one + x, one - x);
    CHECK(p == one - mul(x, x));
    CHECK(p.prec() == 5);
    TruncSeries a = var(2, 1, 0);
    TruncSeries b = var(2, 1, 1);
    TruncSeries ab = mul(a, b);
    CHECK(ab.is_zero());
    CHECK(ab.prec() == 1);
    RingPtr z3 = Ring::integers_mod(3);
    TruncSeries y = var(1, 4, 0, z3);
    CHECK(mul(y + y.scaled(Int(2)), cst(1, 4, 1, z3)).is_zero());
}

TEST_CASE("precision ledger for add and mul") {
    testgen::Gen gen(1);
    for (int k = 0; k < 50; ++k) {
        int pa = static_cast<int>(gen.range(0, 7));
        int pb = static_cast<int>(gen.range(0, 7));
        TruncSeries a = gen.series(ZZ(), 2, pa);
        TruncSeries b = gen.series(ZZ(), 2, pb);
        CHECK((a + b).prec() == std::min(pa, pb));
        CHECK(mul(a, b).prec() == std::min(pa, pb));
        int cap = 20;
        CHECK(mul_tracked(a, b, cap).prec() == std::min({pa + b.valuation(), pb + a.valuation(), cap}));
    }
}

TEST_CASE("tracked multiplication agrees with higher-precision truth") {
    testgen::Gen gen(2);
    for (int k = 0; k < 40; ++k) {
        // Exact polynomials viewed at two precisions.
        TruncSeries a = gen.series(ZZ(), 2, 12, 5, 1, 4);
        TruncSeries b = gen.series(ZZ(), 2, 12, 5, 2, 4);
        TruncSeries lo = mul_tracked(a.truncated(5), b.truncated(6), 30);
        TruncSeries truth = mul(a, b);
        CHECK(lo.agrees_with(truth, lo.prec()));
    }
}

TEST_CASE("substitution") {
    TruncSeries x = var(1, 4, 0);
    TruncSeries y = var(2, 4, 0);
    TruncSeries z = var(2, 4, 1);
    std::vector<TruncSeries> im{y + z};
    TruncSeries out = substitute(mul(x, x), im);
    CHECK(out == mul(y, y) + mul(y, z).scaled(Int(2)) + mul(z, z));
    testgen::Gen gen(3);
    TruncSeries f = gen.series(ZZ(), 2, 6);
    std::vector<TruncSeries> ident{var(2, 6, 0), var(2, 6, 1)};
    CHECK(substitute(f, ident) == f);
    TruncSeries x3 = var(1, 3, 0);
    std::vector<TruncSeries> sq{x3 + mul(x3, x3)};
    CHECK(substitute(x3, sq) == x3 + mul(x3, x3));
    std::vector<TruncSeries> bad{cst(1, 3, 1) + x3};
    CHECK_THROWS_AS(substitute(x3, bad), Error);
}

TEST_CASE("change of variables") {
    testgen::Gen gen(4);
    IntMatrix U = complete_unimodular_row(std::vector<Int>{Int(1), Int(1)});
    TruncSeries x1 = var(2, 5, 0);
    CHECK(change_vars(x1, U) == var(2, 5, 0) + var(2, 5, 1));
    IntMatrix Ui = unimodular_inverse(U);
    for (int k = 0; k < 30; ++k) {
        TruncSeries f = gen.series(ZZ(), 2, 6);
        TruncSeries g = gen.series(ZZ(), 2, 6);
        CHECK(change_vars(f, IntMatrix::identity(2)) == f);
        CHECK(change_vars(change_vars(f, U), Ui) == f);
        CHECK(change_vars(mul(f, g), U) == mul(change_vars(f, U), change_vars(g, U)));
        // Oracle: generic substitution.
        std::vector<TruncSeries> im{var(2, 6, 0).scaled(U(0, 0)) + var(2, 6, 1).scaled(U(0, 1)),
                                    var(2, 6, 0).scaled(U(1, 0)) + var(2, 6, 1).scaled(U(1, 1))};
        CHECK(change_vars(f, U) == substitute(f, im));
    }
}

TEST_CASE("divide by coordinate") {
    TruncSeries x = var(2, 5, 0);
    TruncSeries y = var(2, 5, 1);
    TruncSeries q = divide_by_coordinate(mul(mul(x, x), y), 0);
    CHECK(q == mul(x, y).truncated(4));
    CHECK(q.prec() == 4);
    try {
        (void)divide_by_coordinate(x + y, 0);
        FAIL("expected NotDivisible");
    } catch (const Error& e) {
        CHECK(e.reason() == "NotDivisible");
        CHECK(e.details().at("witness") == "x2");
    }
    TruncSeries z = divide_by_coordinate(TruncSeries::zero(ZZ(), 2, 5), 1);
    CHECK(z.is_zero());
    CHECK(z.prec() == 4);
    CHECK_THROWS_AS(divide_by_coordinate(TruncSeries::zero(ZZ(), 2, 0), 0), Error);
}

TEST_CASE("exact division by a series with unimodular linear part") {
    TruncSeries x = var(2, 6, 0);
    TruncSeries y = var(2, 6, 1);
    TruncSeries q = exact_div_linear(mul(x, x) + mul(x, mul(y, y)), x + mul(y, y));
    CHECK(q == x.truncated(5));
    CHECK_THROWS_AS(exact_div_linear(x, y), Error);
    TruncSeries t = var(1, 5, 0);
    TruncSeries g = t.scaled(Int(2)) + mul(t, t);
    TruncSeries one = exact_div_linear(g, g);
    CHECK(one == cst(1, 4, 1));
}

TEST_CASE("exact division properties") {
    testgen::Gen gen(5);
    for (const char* rn : {"Z", "Z/4", "Z[a]", "Z[1/2]"}) {
        RingPtr r = Ring::parse(rn);
        for (int k = 0; k < 25; ++k) {
            int n = static_cast<int>(gen.range(1, 3));
            // g: random primitive linear part plus higher terms.
            std::vector<SeriesTerm> lin;
            int64_t a = gen.range(-3, 3);
            int64_t b = (n > 1) ? gen.range(-3, 3) : 0;
            if (n == 1 || gcd(Int(a), Int(b)) != Int(1)) {
                a = 1;
                b = 0;
            }
            lin.push_back(SeriesTerm{Mono::var(0), RingElem::from_int(r, a)});
            if (n > 1) lin.push_back(SeriesTerm{Mono::var(1), RingElem::from_int(r, b)});
            TruncSeries g = TruncSeries::from_terms(r, n, 7, lin) + gen.series(r, n, 7, 4, 2, 4);
            TruncSeries h = gen.series(r, n, 7);
            TruncSeries f = mul(h, g);
            TruncSeries q = exact_div_linear(f, g);
            CHECK(q.prec() == 6);
            CHECK(q.agrees_with(h, 6));
            // Bare coordinates agree with the exponent shift.
            TruncSeries xv = TruncSeries::variable(r, n, 7, n - 1);
            TruncSeries fx = mul(h, xv);
            CHECK(exact_div_linear(fx, xv) == divide_by_coordinate(fx, n - 1));
        }
    }
}

TEST_CASE("division with a non-unit content") {
    // Linear part 2*(x1 + x2) over Z: divisible inputs go through, others fail.
    TruncSeries x = var(2, 6, 0);
    TruncSeries y = var(2, 6, 1);
    TruncSeries g = (x + y).scaled(Int(2)) + mul(x, y);
    testgen::Gen gen(6);
    for (int k = 0; k < 10; ++k) {
        TruncSeries h = gen.series(ZZ(), 2, 6);
        CHECK(exact_div_linear(mul(h, g), g).agrees_with(h, 5));
    }
    CHECK_THROWS_AS(exact_div_linear(x, g), Error);
    // Over Z/2 the linear part of 2x + x^2 vanishes.
    RingPtr z2 = Ring::integers_mod(2);
    TruncSeries t = var(1, 5, 0, z2);
    try {
        (void)exact_div_linear(mul(t, t), t.scaled(Int(2)) + mul(t, t));
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.reason() == "NotUnimodularLinearPart");
    }
}

TEST_CASE("unit inversion") {
    TruncSeries t = var(1, 6, 0);
    TruncSeries one = cst(1, 6, 1);
    TruncSeries g = invert_unit(one - t);
    TruncSeries geo = one;
    TruncSeries pw = one;
    for (int k = 1; k <= 6; ++k) {
        pw = mul(pw, t);
        geo += pw;
    }
    CHECK(g == geo);
    RingPtr z3 = Ring::integers_mod(3);
    CHECK(invert_unit(cst(1, 4, 2, z3)) == cst(1, 4, 2, z3));
    CHECK_THROWS_AS(invert_unit(cst(1, 4, 2)), Error);
    testgen::Gen gen(8);
    for (int k = 0; k < 20; ++k) {
        TruncSeries f = cst(2, 6, gen.coin() ? 1 : -1) + gen.series(ZZ(), 2, 6, 5, 1, 6);
        CHECK(mul(f, invert_unit(f)) == cst(2, 6, 1));
    }
}

TEST_CASE("operator gather and scatter forms agree") {
    testgen::Gen gen(9);
    IntMatrix A = IntMatrix::from_rows(std::vector<std::vector<int>>{{2, 1, 0}, {1, 1, 0}, {0, 3, 1}});
    MonomialOperator op = linear_substitution(ZZ(), A, 8);
    for (int k = 0; k < 10; ++k) {
        TruncSeries f = gen.series(ZZ(), 3, static_cast<int>(gen.range(0, 10)), 12);
        CHECK(op.apply(f) == op.apply_serial(f));
        CHECK(op.apply(f).prec() == std::min(f.prec(), 8));
    }
}

TEST_CASE("every division is verified") {
    reset_division_audit();
    TruncSeries x = var(2, 6, 0);
    TruncSeries y = var(2, 6, 1);
    (void)exact_div_linear(mul(x + y, y), x + y);
    (void)divide_by_coordinate(mul(x, y), 1);
    (void)invert_unit(cst(2, 6, 1) + x);
    DivisionAudit a = division_audit();
    CHECK(a.performed == 3);
    CHECK(a.verified == a.performed);
}
}
