#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "demazure/demazurealgebra.hpp"
#include "demazure/intlinalg.hpp"
#include "demazure/rootdata.hpp"

namespace demazure {

// Insertion-ordered so that output bytes follow construction order.
using Json = nlohmann::ordered_json;

// {"ring": descriptor, "value": string} or, over a polynomial ring, a list of
// "coef*mono" strings in grlex order.
Json ring_elem_to_json(const RingElem& a);
RingElem ring_elem_from_json(const Json& j);

// {"prec": d, "terms": [{"exp": [...], "coef": "..."}]} in grlex order.
Json series_to_json(const TruncSeries& s);
TruncSeries series_from_json(const Json& j, RingPtr ring, int nvars);

// Integers that fit in 64 bits become numbers, larger ones strings.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

// {"terms": [{"w": word, "num": series, "den": [{"root": index, "mult": m}]}]}
Json qelem_den_to_json(const std::vector<int>& den);
Json qw_to_json(const QWElem& a, const WeylGroup& W);
QWElem qw_from_json(const Json& j, const TwistedAlgebra& T);

// {"u|v|w": series} over canonical words, in (w, u, v) order.
Json coproduct_table_to_json(const CoproductTable& t, const WeylGroup& W);
CoproductTable coproduct_table_from_json(const Json& j, const WeylGroup& W, RingPtr ring, int nvars);

// {"type": "G2", "lattice": "sc" | "adj" | {"basis": [[...]]}}
RootDatumSpec datum_spec_from_json(const Json& j);
Json datum_spec_to_json(const RootDatumSpec& s);

// "additive" | {"multiplicative": {"beta": ...}} | {"custom": series}. The law
// is built at precision prec over ring.
LawPtr law_from_json(const Json& j, RingPtr ring, int prec);
// Short flag syntax: "additive", "multiplicative", "multiplicative:beta=2",
// or a JSON document.
Json law_json_from_flag(const std::string& text);

}  // namespace demazure
