#include "demazure/serialize.hpp"

#include "demazure/error.hpp"

namespace demazure {

namespace {

// Weyl element whose canonical word is `text`; non-canonical words are rejected.
int canonical_element(const WeylGroup& W, const std::string& text) {
    auto w = W.parse_word(text);
    if (!w || W.word_string(*w) != word_to_string(parse_word_sequence(text, W.datum().rank()))) {
        throw config_error("InvalidWord", "'" + text + "' is not a canonical Weyl word");
    }
    return *w;
}

}  // namespace

Json ring_elem_to_json(const RingElem& a) {
    Json j;
    j["ring"] = a.ring()->name();
    if (a.ring()->kind() == RingKind::Poly) {
        j["value"] = a.to_term_strings();
    } else {
        j["value"] = a.to_string();
    }
    return j;
}

RingElem ring_elem_from_json(const Json& j) {
    RingPtr r = Ring::parse(j.at("ring").get<std::string>());
    const Json& v = j.at("value");
    if (v.is_array()) {
        RingElem out = RingElem::zero(r);
        for (const auto& t : v) out += RingElem::parse(r, t.get<std::string>());
        return out;
    }
    return RingElem::parse(r, v.is_string() ? v.get<std::string>() : v.dump());
}

Json series_to_json(const TruncSeries& s) {
    Json j;
    j["prec"] = s.prec();
    Json terms = Json::array();
    for (const auto& t : s.terms()) {
        Json e;
        e["exp"] = t.mono.exponents(s.nvars());
        e["coef"] = t.coef.to_string();
        terms.push_back(std::move(e));
    }
    j["terms"] = std::move(terms);
    return j;
}

TruncSeries series_from_json(const Json& j, RingPtr ring, int nvars) {
    try {
        int prec = j.at("prec").get<int>();
        std::vector<SeriesTerm> terms;
        for (const auto& t : j.at("terms")) {
            auto exps = t.at("exp").get<std::vector<int>>();
            if (static_cast<int>(exps.size()) != nvars) {
                throw config_error("InvalidSeries", "exponent vector has " + std::to_string(exps.size()) + " entries, expected " + std::to_string(nvars));
            }
            const Json& c = t.at("coef");
            RingElem coef = RingElem::parse(ring, c.is_string() ? c.get<std::string>() : c.dump());
            terms.push_back({Mono::from_exponents(exps), coef});
        }
        return TruncSeries::from_terms(ring, nvars, prec, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw config_error("InvalidSeries", std::string("malformed series JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw config_error("InvalidSeries", e.what());
    }
}

Json int_to_json(const Int& v) {
    if (v.fits_int64()) return v.to_int64();
    return v.to_string();
}

Int int_from_json(const Json& j) {
    if (j.is_string()) return Int::parse(j.get<std::string>());
    return Int(j.get<int64_t>());
}

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(int_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j) {
    std::vector<std::vector<Int>> rows;
    for (const auto& r : j) {
        std::vector<Int> row;
        for (const auto& v : r) row.push_back(int_from_json(v));
        rows.push_back(std::move(row));
    }
    return IntMatrix::from_rows(rows);
}

Json qelem_den_to_json(const std::vector<int>& den) {
    Json out = Json::array();
    for (std::size_t r = 0; r < den.size(); ++r) {
        if (den[r] == 0) continue;
        out.push_back(Json{{"root", r}, {"mult", den[r]}});
    }
    return out;
}

Json qw_to_json(const QWElem& a, const WeylGroup& W) {
    Json terms = Json::array();
    for (const auto& [w, q] : a) {
        Json t;
        t["w"] = W.word_string(w);
        t["num"] = series_to_json(q.num);
        t["den"] = qelem_den_to_json(q.den);
        terms.push_back(std::move(t));
    }
    return Json{{"terms", std::move(terms)}};
}

QWElem qw_from_json(const Json& j, const TwistedAlgebra& T) {
    const FGAContext& c = T.ctx();
    QWElem out;
    for (const auto& t : j.at("terms")) {
        const int w = canonical_element(T.weyl(), t.at("w").get<std::string>());
        QElem q = T.q(series_from_json(t.at("num"), c.ring(), c.rank()));
        for (const auto& d : t.at("den")) {
            int root = d.at("root").get<int>();
            int mult = d.at("mult").get<int>();
            if (root < 0 || root >= c.datum().num_positive() || mult < 0) throw config_error("InvalidArgument", "bad denominator entry");
            for (int k = 0; k < mult; ++k) q = T.q_div_x(q, root);
        }
        out = T.qw_add(out, QWElem{{w, q}});
    }
    return out;
}

Json coproduct_table_to_json(const CoproductTable& t, const WeylGroup& W) {
    Json out = Json::object();
    for (std::size_t w = 0; w < t.slices.size(); ++w) {
        for (const auto& [k, s] : t.slices[w]) {
            out[W.word_string(k.first) + "|" + W.word_string(k.second) + "|" + W.word_string(static_cast<int>(w))] = series_to_json(s);
        }
    }
    return out;
}

CoproductTable coproduct_table_from_json(const Json& j, const WeylGroup& W, RingPtr ring, int nvars) {
    CoproductTable t;
    for (int w = 0; w < W.size(); ++w) t.words.push_back(W.word(w));
    t.slices.resize(static_cast<std::size_t>(W.size()));
    for (const auto& [key, val] : j.items()) {
        auto a = key.find('|');
        auto b = key.find('|', a == std::string::npos ? 0 : a + 1);
        if (a == std::string::npos || b == std::string::npos) throw config_error("InvalidArgument", "bad table key '" + key + "'");
        const int u = canonical_element(W, key.substr(0, a));
        const int v = canonical_element(W, key.substr(a + 1, b - a - 1));
        const int w = canonical_element(W, key.substr(b + 1));
        t.slices[static_cast<std::size_t>(w)][{u, v}] = series_from_json(val, ring, nvars);
    }
    return t;
}

RootDatumSpec datum_spec_from_json(const Json& j) {
    if (!j.contains("type") || !j.at("type").is_string()) throw config_error("UnknownType", "config needs a string \"type\"");
    const std::string type = j.at("type").get<std::string>();
    if (!j.contains("lattice")) return RootDatumSpec::parse(type, "sc");
    const Json& lat = j.at("lattice");
    if (lat.is_string()) return RootDatumSpec::parse(type, lat.get<std::string>());
    if (lat.is_object() && lat.contains("basis")) {
        RootDatumSpec s = RootDatumSpec::parse(type, "sc");
        s.lattice = LatticeKind::Intermediate;
        try {
            s.basis = lat.at("basis").get<std::vector<std::vector<int64_t>>>();
        } catch (const nlohmann::json::exception&) {
            throw config_error("InvalidLattice", "lattice basis must be an integer matrix");
        }
        return s;
    }
    throw config_error("InvalidLattice", "lattice must be \"sc\", \"adj\" or {\"basis\": [[...]]}");
}

Json datum_spec_to_json(const RootDatumSpec& s) {
    Json j;
    j["type"] = s.type_name();
    if (s.lattice == LatticeKind::Intermediate) {
        j["lattice"] = Json{{"basis", s.basis}};
    } else {
        j["lattice"] = s.lattice_name();
    }
    return j;
}

LawPtr law_from_json(const Json& j, RingPtr ring, int prec) {
    if (j.is_string()) {
        std::string k = j.get<std::string>();
        if (k == "additive") return FormalGroupLaw::additive(ring, prec);
        if (k == "multiplicative") return FormalGroupLaw::multiplicative(RingElem::one(ring), prec);
        throw config_error("InvalidArgument", "unknown formal group law '" + k + "'");
    }
    if (j.is_object() && j.contains("multiplicative")) {
        const Json& m = j.at("multiplicative");
        RingElem beta = RingElem::one(ring);
        if (m.is_object() && m.contains("beta")) {
            const Json& b = m.at("beta");
            beta = RingElem::parse(ring, b.is_string() ? b.get<std::string>() : b.dump());
        }
        return FormalGroupLaw::multiplicative(beta, prec);
    }
    if (j.is_object() && j.contains("custom")) {
        TruncSeries F = series_from_json(j.at("custom"), ring, 2);
        if (F.prec() < prec) {
            throw precision_exhausted("custom law known to degree " + std::to_string(F.prec()) + ", " + std::to_string(prec) + " needed",
                                      {{"needed", std::to_string(prec)}, {"given", std::to_string(F.prec())}});
        }
        return FormalGroupLaw::custom(F.truncated(prec));
    }
    throw config_error("InvalidArgument", "formal group law must be \"additive\", {\"multiplicative\": ...} or {\"custom\": ...}");
}

Json law_json_from_flag(const std::string& text) {
    if (!text.empty() && text.front() == '{') {
        try {
            return Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw config_error("InvalidArgument", std::string("bad law JSON: ") + e.what());
        }
    }
    if (text == "additive" || text == "multiplicative") return text;
    const std::string pre = "multiplicative:beta=";
    if (text.rfind(pre, 0) == 0) return Json{{"multiplicative", {{"beta", text.substr(pre.size())}}}};
    throw config_error("InvalidArgument", "unknown formal group law '" + text + "'");
}

}  // namespace demazure
