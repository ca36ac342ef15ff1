#include "doctest.h"

#include <vector>

#include "demazure/monomial.hpp"

using namespace demazure;

TEST_SUITE("monomial") {
TEST_CASE("packing and degree") {
    std::vector<int> e{2, 0, 3};
    Mono m = Mono::from_exponents(e);
    CHECK(m.degree() == 5);
    CHECK(m.exp(0) == 2);
    CHECK(m.exp(2) == 3);
    CHECK((m * Mono::var(1)).exp(1) == 1);
    CHECK(Mono::var(0).divides(m));
    CHECK_FALSE(Mono::var(1).divides(m));
    CHECK(Mono::var(2).quotient_of(m).exp(2) == 2);
}

TEST_CASE("index enumerates grlex with dense ranks") {
    auto idx = MonomialIndex::get(3, 4);
    // C(3+4, 3) = 35 monomials of degree <= 4 in 3 variables.
    CHECK(idx->size() == 35);
    GrlexLess less;
    for (std::size_t r = 0; r + 1 < idx->size(); ++r) CHECK(less(idx->mono(r), idx->mono(r + 1)));
    for (std::size_t r = 0; r < idx->size(); ++r) CHECK(idx->rank(idx->mono(r)) == static_cast<int>(r));
    std::vector<int> e{5, 0, 0};
    CHECK(idx->rank(Mono::from_exponents(e)) == -1);
    CHECK(idx->degree_begin(1) == 1);
    CHECK(idx->degree_begin(2) == 4);
}

TEST_CASE("printing") {
    std::vector<std::string> names{"a", "b"};
    std::vector<int> e{1, 2};
    CHECK(mono_to_string(Mono::from_exponents(e), 2, names) == "a*b^2");
    CHECK(mono_to_string(Mono(), 2, names) == "1");
}
}
