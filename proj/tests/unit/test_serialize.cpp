#include "doctest.h"

#include "contexts.hpp"
#include "demazure/error.hpp"
#include "demazure/serialize.hpp"
#include "generators.hpp"

using namespace demazure;
using testctx::Law;

namespace {

std::string reason_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.reason();
    }
    return "";
}

}  // namespace

TEST_SUITE("serialize") {
    TEST_CASE("ring elements") {
        for (const char* r : {"Z", "Z/4", "Z[1/2]", "Z[a,b]"}) {
            RingPtr ring = Ring::parse(r);
            RingElem x = ring->kind() == RingKind::Poly ? RingElem::parse(ring, "3*a^2*b + -2*b + 5") : RingElem::parse(ring, "3");
            Json j = ring_elem_to_json(x);
            CHECK(j.at("ring") == ring->name());
            CHECK(ring_elem_from_json(j) == x);
        }
        Json p = ring_elem_to_json(RingElem::parse(Ring::parse("Z[a]"), "2*a + 1"));
        CHECK(p.at("value").is_array());
        CHECK(p.at("value").size() == 2);
        CHECK(ring_elem_to_json(RingElem::fraction(Ring::parse("Z[1/2]"), Int(3), Int(4))).at("value") == "3/4");
    }

    TEST_CASE("series golden form") {
        RingPtr z = Ring::integers();
        TruncSeries s = TruncSeries::from_terms(z, 2, 3, {{Mono::from_exponents(std::vector<int>{1, 1}), RingElem::from_int(z, Int(3))},
                                                         {Mono::from_exponents(std::vector<int>{0, 1}), RingElem::from_int(z, Int(-1))},
                                                         {Mono::from_exponents(std::vector<int>{1, 0}), RingElem::from_int(z, Int(2))}});
        CHECK(series_to_json(s).dump() ==
              R"({"prec":3,"terms":[{"exp":[0,1],"coef":"-1"},{"exp":[1,0],"coef":"2"},{"exp":[1,1],"coef":"3"}]})");
        testgen::Gen gen(3);
        for (const char* r : {"Z", "Z/6", "Z[1/3]", "Z[a]"}) {
            RingPtr ring = Ring::parse(r);
            for (int k = 0; k < 10; ++k) {
                TruncSeries t = gen.series(ring, 3, 5, 6, 0, 4);
                CHECK(series_from_json(series_to_json(t), ring, 3) == t);
            }
        }
        CHECK(reason_of([&] { series_from_json(Json::parse(R"({"prec":2,"terms":[{"exp":[1],"coef":"1"}]})"), z, 2); }) == "InvalidSeries");
        CHECK(reason_of([&] { series_from_json(Json::parse(R"({"terms":[]})"), z, 2); }) == "InvalidSeries");
    }

    TEST_CASE("integers and matrices") {
        Int big = Int::parse("123456789012345678901234567890");
        CHECK(int_to_json(Int(-5)) == -5);
        CHECK(int_to_json(big) == "123456789012345678901234567890");
        CHECK(int_from_json(int_to_json(big)) == big);
        IntMatrix m = IntMatrix::from_rows(std::vector<std::vector<int>>{{1, -2}, {0, 7}});
        m(1, 0) = big;
        CHECK(matrix_to_json(m).dump() == R"([[1,-2],["123456789012345678901234567890",7]])");
        CHECK(matrix_from_json(matrix_to_json(m)) == m);
    }

    TEST_CASE("Q_W elements and coproduct tables") {
        auto t = std::make_shared<TwistedAlgebra>(testctx::make("A2", "sc", Law::Multiplicative, 8));
        const auto& W = t->weyl();
        QWElem x = t->x_word({0, 1, 0});
        Json j = qw_to_json(x, W);
        CHECK(j.at("terms").size() == x.size());
        CHECK(j.at("terms")[0].at("w") == "e");
        QWElem back = qw_from_json(j, *t);
        CHECK(t->qw_is_zero(t->qw_sub(back, x)));
        CHECK(reason_of([&] { qw_from_json(Json::parse(R"({"terms":[{"w":"1,1","num":{"prec":1,"terms":[]},"den":[]}]})"), *t); }) == "InvalidWord");

        DemazureAlgebra d(t);
        CoproductTable table = d.coproduct_table();
        Json tj = coproduct_table_to_json(table, W);
        CHECK(tj.contains("1|e|1"));
        CHECK(tj.contains("e|1|1"));
        CoproductTable rt = coproduct_table_from_json(tj, W, t->ctx().ring(), 2);
        for (int w = 0; w < W.size(); ++w) CHECK(rt.slices[static_cast<std::size_t>(w)] == table.slices[static_cast<std::size_t>(w)]);
    }

    TEST_CASE("root datum configs") {
        RootDatumSpec s = datum_spec_from_json(Json::parse(R"({"type":"g2","lattice":"adj"})"));
        CHECK(s.type_name() == "G2");
        CHECK(s.lattice == LatticeKind::Adjoint);
        CHECK(datum_spec_from_json(datum_spec_to_json(s)).lattice == LatticeKind::Adjoint);
        RootDatumSpec mid = datum_spec_from_json(Json::parse(R"({"type":"A3","lattice":{"basis":[[2,0,0],[0,1,0],[0,0,2]]}})"));
        CHECK(mid.lattice == LatticeKind::Intermediate);
        CHECK(datum_spec_to_json(mid).at("lattice").at("basis")[0] == Json::parse("[2,0,0]"));
        CHECK(reason_of([] { datum_spec_from_json(Json::parse(R"({"type":"A2","lattice":"mid"})")); }) == "InvalidLattice");
        CHECK(reason_of([] { datum_spec_from_json(Json::parse(R"({"type":"A2","lattice":{"basis":"x"}})")); }) == "InvalidLattice");
        CHECK(reason_of([] { datum_spec_from_json(Json::parse(R"({"lattice":"sc"})")); }) == "UnknownType");
    }

    TEST_CASE("law configs") {
        RingPtr z = Ring::integers();
        CHECK(law_from_json("additive", z, 6)->kind() == LawKind::Additive);
        auto m = law_from_json(Json::parse(R"({"multiplicative":{"beta":2}})"), z, 6);
        CHECK(m->kind() == LawKind::Multiplicative);
        CHECK(m->beta() == RingElem::from_int(z, Int(2)));
        CHECK(law_json_from_flag("multiplicative:beta=3") == Json::parse(R"({"multiplicative":{"beta":"3"}})"));
        CHECK(law_json_from_flag("additive") == "additive");
        CHECK(reason_of([] { law_json_from_flag("elliptic"); }) == "InvalidArgument");

        RingPtr za = Ring::parse("Z[a]");
        Json custom = Json::parse(R"({"custom":{"prec":12,"terms":[{"exp":[1,0],"coef":"1"},{"exp":[0,1],"coef":"1"},{"exp":[1,1],"coef":"1*a"}]}})");
        auto c = law_from_json(custom, za, 8);
        CHECK(c->prec() == 8);
        CHECK(c->F() == testctx::make_law(Law::CustomA, 6)->F());
        custom["custom"]["prec"] = 4;
        CHECK(reason_of([&] { law_from_json(custom, za, 8); }) == "PrecisionExhausted");
        Json bad = Json::parse(R"({"custom":{"prec":8,"terms":[{"exp":[1,0],"coef":"1"},{"exp":[0,1],"coef":"1"},{"exp":[2,1],"coef":"1"}]}})");
        CHECK(reason_of([&] { law_from_json(bad, z, 8); }) == "AxiomViolation");
    }
}
