// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact
// equalities of coefficients up to a certified degree; the degrees are pinned
// below.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "contexts.hpp"
#include "demazure/dualalgebra.hpp"
#include "demazure/error.hpp"
#include "demazure/intlinalg.hpp"
#include "demazure/job.hpp"
#include "demazure/verify.hpp"

using namespace demazure;
using testctx::Law;

namespace {

// Output precision of every criterion that names one.
constexpr int kOutPrec = 8;
// Seeded samples per simple root in the operator oracle of criterion 1.
constexpr int kOracleSamples = 4;
constexpr uint64_t kSeed = 1;

struct Outcome {
    bool ok = true;
    std::string info;
    std::vector<std::string> notes;
    int checks = 0;

    void check(bool cond, const std::string& what) {
        ++checks;
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void suite(const SuiteReport& r, const std::string& where) {
        for (const auto& c : r.checks) check(c.passed, where + ": " + c.name + (c.detail.empty() ? "" : " [" + c.detail + "]"));
    }
};

using AlgebraPtr = std::shared_ptr<const DemazureAlgebra>;

AlgebraPtr algebra(const std::string& type, const std::string& lattice, Law law, int prec, RingPtr base = Ring::integers(),
                   bool cross_check = false) {
    auto ctx = testctx::make(type, lattice, law, prec, base, cross_check);
    return std::make_shared<const DemazureAlgebra>(std::make_shared<const TwistedAlgebra>(ctx));
}

int npos_of(const std::string& type) {
    return RootDatum::build(RootDatumSpec::parse(type, "adj"))->num_positive();
}

// The oracle applies Demazure operators by series division, the route the
// library avoids in its division-free kernels.
TruncSeries seq_by_division(const FGAContext& c, const std::vector<int>& word, TruncSeries f) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) f = c.demazure_by_division(c.datum().simple_root(*it), f);
    return f;
}

bool agree_to(const TruncSeries& a, const TruncSeries& b, int degree) {
    return a.prec() >= degree && b.prec() >= degree && a.agrees_with(b, degree);
}

std::vector<int> alternating(int i, int j, int m) {
    std::vector<int> w;
    for (int k = 0; k < m; ++k) w.push_back(k % 2 == 0 ? i : j);
    return w;
}

int braid_order(const WeylGroup& W, int i, int j) {
    int g = W.multiply(W.simple_reflection(i), W.simple_reflection(j));
    int m = 1;
    for (int h = g; h != W.identity(); h = W.multiply(h, g)) ++m;
    return m;
}

struct GridEntry {
    std::string type;
    std::string lattice;
    Law law;
    AlgebraPtr d;
};

// {A2, B2, G2} x {adj, sc} x three laws at output precision 8.
std::vector<GridEntry>& relation_grid() {
    static std::vector<GridEntry> grid = [] {
        std::vector<GridEntry> g;
        for (const char* type : {"A2", "B2", "G2"}) {
            const int working = kOutPrec + npos_of(type) + 2;
            for (const char* lattice : {"adj", "sc"}) {
                for (Law law : {Law::Additive, Law::Multiplicative, Law::CustomA}) {
                    g.push_back({type, lattice, law, algebra(type, lattice, law, working)});
                }
            }
        }
        return g;
    }();
    return grid;
}

std::string label(const GridEntry& e) { return e.type + " " + e.lattice + " " + testctx::law_name(e.law); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome out;
    for (const auto& e : relation_grid()) {
        const DemazureAlgebra& d = *e.d;
        const TwistedAlgebra& T = d.qw();
        const FGAContext& c = d.ctx();
        const WeylGroup& W = d.weyl();
        out.suite(verify_relations(d, kSeed, 20), label(e));

        std::mt19937_64 rng(kSeed + 10);
        for (int i = 0; i < c.rank(); ++i) {
            const int root = c.datum().simple_root(i);
            const QWElem x = T.demazure_elem(root);
            for (int k = 0; k < kOracleSamples; ++k) {
                TruncSeries q = sample_series(c, rng, 5, 3);
                TruncSeries f = sample_series(c, rng, 5, 3);
                // (X_i q)(f) = Delta_i(q f).
                TruncSeries lhs = T.certify_in_s(T.act_on_series(T.qw_mul(x, T.scalar(T.q(q))), f));
                TruncSeries rhs = c.demazure_by_division(root, mul(q, f));
                out.check(agree_to(lhs, rhs, kOutPrec), label(e) + ": operator oracle X_" + std::to_string(i + 1) + " q");
                // Delta_i Delta_i f = kappa_i Delta_i f.
                TruncSeries once = c.demazure_by_division(root, f);
                TruncSeries twice = c.demazure_by_division(root, once);
                out.check(agree_to(twice, mul(c.kappa(root), once), kOutPrec), label(e) + ": operator oracle X_i^2");
            }
        }
        for (int i = 0; i < c.rank(); ++i) {
            for (int j = i + 1; j < c.rank(); ++j) {
                auto eta = d.eta_coeffs(i, j);
                int cert = c.prec();
                for (const auto& [w, s] : eta) cert = std::min(cert, s.prec());
                out.check(cert >= kOutPrec, label(e) + ": eta certified to " + std::to_string(cert));
                const int m = braid_order(W, i, j);
                for (int k = 0; k < kOracleSamples; ++k) {
                    TruncSeries f = sample_series(c, rng, 6, 4);
                    TruncSeries lhs = seq_by_division(c, alternating(i, j, m), f) - seq_by_division(c, alternating(j, i, m), f);
                    TruncSeries rhs = c.zero();
                    for (const auto& [w, s] : eta) rhs += mul(s, seq_by_division(c, W.word(w), f));
                    out.check(agree_to(lhs, rhs, kOutPrec), label(e) + ": braid operator oracle");
                }
            }
        }
    }
    return out;
}

Outcome criterion2() {
    Outcome out;
    for (const char* type : {"B2", "G2"}) {
        for (const char* lattice : {"adj", "sc"}) {
            for (Law law : {Law::Additive, Law::Multiplicative, Law::Conjugate}) {
                auto d = algebra(type, lattice, law, kOutPrec + npos_of(type) + 2);
                std::string where = std::string(type) + " " + lattice + " " + testctx::law_name(law);
                out.suite(verify_triangularity(*d), where);
                // Oracle: Bruhat order by the subword criterion, and the
                // diagonal from the roots a_1, s_1 a_2, s_1 s_2 a_3, ...
                const TwistedAlgebra& T = d->qw();
                const WeylGroup& W = d->weyl();
                for (int v = 0; v < W.size(); ++v) {
                    const QWElem& xv = T.x_basis(v);
                    for (const auto& [w, q] : xv) {
                        if (!T.q_is_zero(q)) out.check(W.bruhat_leq_subword(w, v), where + ": support of " + W.word_string(v));
                    }
                    QElem diag = T.q(W.length(v) % 2 == 0 ? d->ctx().one() : -d->ctx().one());
                    int prefix = W.identity();
                    for (int letter : W.word(v)) {
                        int r = W.act_on_root(prefix, d->ctx().datum().simple_root(letter));
                        diag = T.q_div_x(diag, r);
                        prefix = W.multiply(prefix, W.simple_reflection(letter));
                    }
                    auto it = xv.find(v);
                    out.check(it != xv.end() && T.q_equal(it->second, diag), where + ": diagonal of " + W.word_string(v));
                }
            }
        }
    }
    return out;
}

Outcome criterion3() {
    Outcome out;
    for (const char* type : {"A2", "B2"}) {
        // The Q_W route loses about 2 l(w0) degrees.
        const int working = kOutPrec + 2 * npos_of(type) + 2;
        for (Law law : {Law::Additive, Law::Multiplicative}) {
            auto d = algebra(type, "sc", law, working);
            std::string where = std::string(type) + " " + testctx::law_name(law);
            CoproductTable table = d->coproduct_table();
            out.suite(verify_coproduct(*d, table), where);
            out.check(table.certified(working) >= kOutPrec, where + ": table certified to " + std::to_string(table.certified(working)));
            if (std::string(type) == "A2") out.suite(verify_coassociativity(*d, table), where);
        }
    }
    return out;
}

Outcome criterion4() {
    Outcome out;
    for (const char* lattice : {"adj", "sc"}) {
        for (Law law : {Law::Additive, Law::Multiplicative, Law::CustomA}) {
            // Cross-checked context: every Demazure value is recomputed by division.
            auto d = algebra("B2", lattice, law, kOutPrec, Ring::integers(), true);
            out.suite(verify_product_formula(*d, kSeed, 4, 10), std::string("B2 ") + lattice + " " + testctx::law_name(law));
        }
    }
    return out;
}

Outcome criterion5() {
    Outcome out;
    for (Law law : {Law::Additive, Law::Multiplicative}) {
        auto a2 = algebra("A2", "sc", law, kOutPrec + npos_of("A2") + 2);
        out.suite(verify_dual(DualAlgebra(a2), kSeed, 20, true), std::string("A2 ") + testctx::law_name(law));
        auto b2 = algebra("B2", "sc", law, kOutPrec + npos_of("B2") + 2);
        out.suite(verify_dual(DualAlgebra(b2), kSeed, 20, false), std::string("B2 sc ") + testctx::law_name(law));
    }
    return out;
}

Outcome criterion6() {
    Outcome out;
    constexpr int P = 6;
    RingPtr zb = Ring::parse("Z[b]");
    for (const char* type : {"A2", "B2", "G2", "A3", "B3", "C3"}) {
        for (const char* lattice : {"adj", "sc"}) {
            auto datum = RootDatum::build(RootDatumSpec::parse(type, lattice));
            FGAOptions o;
            o.prec = P;
            struct Case {
                LawPtr law;
                RingElem beta;
            };
            std::vector<Case> cases{
                {FormalGroupLaw::additive(Ring::integers(), P + 2), RingElem::zero(Ring::integers())},
                {FormalGroupLaw::multiplicative(RingElem::one(Ring::integers()), P + 2), RingElem::one(Ring::integers())},
                {FormalGroupLaw::multiplicative(RingElem::variable(zb, "b"), P + 2), RingElem::variable(zb, "b")},
            };
            for (const auto& cs : cases) {
                auto c = FGAContext::create(datum, cs.law, o);
                for (int r = 0; r < static_cast<int>(datum->roots().size()); ++r) {
                    TruncSeries k = c->kappa(r);
                    out.check(agree_to(k, c->constant(cs.beta), P), std::string(type) + " " + lattice + " " + cs.law->description() + ": kappa of root " + std::to_string(r));
                }
            }
        }
    }

    // A2 over Z/3, additive: x_{a1+2a2} = x_{3 w2} vanishes in the weight
    // lattice and not in the root lattice.
    RingPtr z3 = Ring::integers_mod(Int(3));
    {
        FGAOptions o;
        o.prec = P;
        auto sc = FGAContext::create(RootDatum::build(RootDatumSpec::parse("A2", "sc")), FormalGroupLaw::additive(z3, P + 2), o);
        auto adj = FGAContext::create(RootDatum::build(RootDatumSpec::parse("A2", "adj")), FormalGroupLaw::additive(z3, P + 2), o);
        out.check(sc->x_of({0, 3}).is_zero(), "x_{3 w2} = 0 over Z/3");
        TruncSeries in_root = adj->x_of({1, 2});
        out.check(!in_root.is_zero(), "x_{a1+2a2} != 0 over Z/3 in the root lattice");
        out.check(agree_to(in_root, adj->coordinate(0) + adj->coordinate(1).scaled(Int(2)), P), "x_{a1+2a2} = x_{a1} + 2 x_{a2}");
    }
    // C1 sc multiplicative over Z/2: x_a = x_{2w} = x_w^2.
    {
        RingPtr z2 = Ring::integers_mod(Int(2));
        FGAOptions o;
        o.prec = P;
        auto c = FGAContext::create(RootDatum::build(RootDatumSpec::parse("C1", "sc")),
                                    FormalGroupLaw::multiplicative(RingElem::one(z2), P + 2), o);
        TruncSeries xw = c->coordinate(0);
        out.check(agree_to(c->x_root(c->datum().simple_root(0)), mul(xw, xw), P), "x_a = x_w^2 over Z/2 in C1 sc");
    }
    // Cartan determinants and torsion primes, simply connected table.
    struct Row {
        char t;
        int lo, hi;
        std::function<Int(int)> det;
        std::vector<int> primes;
    };
    const std::vector<Row> table{
        {'A', 1, 8, [](int l) { return Int(l + 1); }, {}},
        {'B', 3, 8, [](int) { return Int(2); }, {2}},
        {'C', 2, 8, [](int) { return Int(2); }, {}},
        {'D', 4, 8, [](int) { return Int(4); }, {2}},
        {'G', 2, 2, [](int) { return Int(1); }, {2}},
        {'F', 4, 4, [](int) { return Int(1); }, {2, 3}},
        {'E', 6, 6, [](int) { return Int(3); }, {2, 3}},
        {'E', 7, 7, [](int) { return Int(2); }, {2, 3}},
        {'E', 8, 8, [](int) { return Int(1); }, {2, 3, 5}},
    };
    int checked = 0;
    for (const auto& row : table) {
        for (int l = row.lo; l <= row.hi; ++l) {
            std::string name = std::string(1, row.t) + std::to_string(l);
            Int want = row.det(l);
            out.check(determinant(cartan_matrix(row.t, l)) == want, name + ": det of the Cartan matrix");
            out.check(RootDatum::build(RootDatumSpec::parse(name, "sc"))->cartan_determinant() == want, name + ": datum determinant");
            out.check(expected_cartan_determinant(row.t, l) == want, name + ": tabulated determinant");
            out.check(torsion_primes(row.t, l) == row.primes, name + ": torsion primes");
            ++checked;
        }
    }
    out.check(checked == 31, "type table size");
    return out;
}

Outcome criterion7() {
    Outcome out;
    struct Case {
        const char* type;
        const char* lattice;
        Int want;  // 0: only the prime constraint applies
    };
    for (const Case& cs : {Case{"A2", "sc", Int(1)}, Case{"A3", "sc", Int(1)}, Case{"G2", "sc", Int(2)}, Case{"G2", "adj", Int(2)},
                           Case{"B3", "sc", Int(0)}}) {
        std::string where = std::string(cs.type) + " " + cs.lattice;
        const int n = npos_of(cs.type);
        auto d = algebra(cs.type, cs.lattice, Law::Additive, n);
        TorsionResult r = torsion_gcd(*d);
        if (cs.want != Int(0)) out.check(r.gcd == cs.want, where + ": gcd " + r.gcd.to_string());
        out.check(r.vanishing_ok, where + ": vanishing below degree N " + r.vanishing_witness);
        // Oracle: top values by division from scratch.
        const FGAContext& c = d->ctx();
        const auto& i0 = d->weyl().word(d->weyl().longest());
        Int g(0);
        for (std::size_t j = 0; j < r.monomials.size(); ++j) {
            TruncSeries m = TruncSeries::from_terms(c.ring(), c.rank(), c.prec(), {{r.monomials[j], RingElem::one(c.ring())}});
            Int v = *seq_by_division(c, i0, m).constant_term().as_integer();
            out.check(v == r.values[j], where + ": value of monomial " + std::to_string(j));
            g = gcd(g, v);
        }
        out.check(g == r.gcd, where + ": oracle gcd " + g.to_string());
        out.check(*seq_by_division(c, i0, r.u0).constant_term().as_integer() == r.gcd, where + ": u0 attains the gcd");
        auto primes = torsion_primes(cs.type[0], cs.type[1] - '0');
        for (int p : {2, 3, 5, 7}) {
            if (Int::divides(Int(p), r.gcd)) {
                out.check(std::find(primes.begin(), primes.end(), p) != primes.end(), where + ": prime " + std::to_string(p) + " not in the table");
            }
        }
    }
    return out;
}

// epsilon Delta_{I_v} Delta_{I_w}(u) by division.
Int certificate_entry(const DemazureAlgebra& d, int v, int w, const TruncSeries& u) {
    const WeylGroup& W = d.weyl();
    std::vector<int> word = W.word(v);
    word.insert(word.end(), W.word(w).begin(), W.word(w).end());
    return *seq_by_division(d.ctx(), word, u).constant_term().as_integer();
}

Outcome criterion8() {
    Outcome out;
    int surjective_cases = 0;
    struct Case {
        const char* type;
        const char* lattice;
        Law law;
        int expect_surjective;  // 1 yes, 0 no, -1 not prescribed
        Int obstruction;
    };
    for (const Case& cs : {Case{"G2", "sc", Law::Multiplicative, 1, Int(1)}, Case{"G2", "sc", Law::Additive, 0, Int(2)},
                           Case{"A2", "sc", Law::Additive, -1, Int(0)}, Case{"A2", "sc", Law::Multiplicative, -1, Int(0)},
                           Case{"B2", "sc", Law::Multiplicative, -1, Int(0)}}) {
        std::string where = std::string(cs.type) + " " + cs.lattice + " " + testctx::law_name(cs.law);
        const int n = npos_of(cs.type);
        auto d = algebra(cs.type, cs.lattice, cs.law, 2 * n);
        CharmapResult cm = charmap_surjectivity(*d);
        if (cs.expect_surjective == 1) {
            out.check(cm.surjective, where + ": u0' exists " + cm.failure);
            out.check(cm.unitriangular, where + ": certificate unitriangular");
        } else if (cs.expect_surjective == 0) {
            out.check(!cm.surjective, where + ": u0' must not exist");
            out.check(cm.obstruction == cs.obstruction, where + ": obstruction " + cm.obstruction.to_string());
        }
        if (!cm.surjective) continue;
        ++surjective_cases;
        // Oracle: recompute the certificate by division.
        const WeylGroup& W = d->weyl();
        for (int w = 0; w < W.size(); ++w) {
            Int top = *seq_by_division(d->ctx(), W.word(w), cm.u0_prime).constant_term().as_integer();
            out.check(top == (w == W.longest() ? Int(1) : Int(0)), where + ": epsilon Delta_w(u0') at " + W.word_string(w));
            for (int v = 0; v < W.size(); ++v) {
                out.check(certificate_entry(*d, v, w, cm.u0_prime) == cm.certificate(v, w),
                          where + ": certificate entry");
            }
        }
        try {
            BorelReport br = borel_presentation_check(DualAlgebra(d), cm);
            out.check(br.ok, where + ": Borel presentation certificate");
            out.check(br.determinant == Int(1) || br.determinant == Int(-1), where + ": determinant " + br.determinant.to_string());
        } catch (const Error& e) {
            out.check(false, where + ": " + e.reason() + " " + e.what());
        }
    }
    out.check(surjective_cases >= 3, "surjective cases exercised: " + std::to_string(surjective_cases));
    return out;
}

Outcome criterion9() {
    Outcome out;
    for (const auto& e : relation_grid()) {
        CoproductTable table = e.d->coproduct_table();
        out.suite(verify_augmented(*e.d, table, kSeed), label(e));
    }
    return out;
}

// Precision ledger of the public operations at a working precision P.
void ledger_checks(Outcome& out) {
    constexpr int P = 9;
    auto d = algebra("B2", "sc", Law::Multiplicative, P);
    const FGAContext& c = d->ctx();
    const TwistedAlgebra& T = d->qw();
    std::mt19937_64 rng(kSeed + 20);
    TruncSeries f = sample_series(c, rng, 6, 4);
    TruncSeries g = sample_series(c, rng, 6, 4).truncated(P - 2);
    TruncSeries x0 = c.coordinate(0);
    TruncSeries x1sq = mul(c.coordinate(1), c.coordinate(1)).truncated(P - 3);
    const int a = c.datum().simple_root(0);
    auto expect = [&](const std::string& op, int got, int want) {
        out.check(got == want, "ledger " + op + ": precision " + std::to_string(got) + ", expected " + std::to_string(want));
    };
    expect("add", (f + g).prec(), P - 2);
    expect("mul", mul(f, g).prec(), P - 2);
    // valuations 1 and 2: min(P + 2, P - 3 + 1)
    expect("mul_tracked", mul_tracked(x0, x1sq, 100).prec(), P - 2);
    expect("change_vars", change_vars(f, IntMatrix::identity(2)).prec(), P);
    std::vector<TruncSeries> images{x0, x1sq};
    expect("substitute", substitute(f, images).prec(), P - 3);
    expect("divide_by_coordinate", divide_by_coordinate(mul(f, x0), 0).prec(), P - 1);
    expect("exact_div_linear", exact_div_linear(mul(f, c.x_root(a)), c.x_root(a)).prec(), P - 1);
    expect("invert_unit", invert_unit(c.one() + x0).prec(), P);
    expect("reflect", c.reflect(a, f).prec(), P);
    expect("weyl_act", c.weyl_act(c.weyl().longest(), f).prec(), P);
    expect("demazure", c.demazure(a, f).prec(), P - 1);
    expect("demazure_by_division", c.demazure_by_division(a, f).prec(), P - 1);
    expect("demazure_seq", c.demazure_seq({0, 1, 0}, f).prec(), P - 3);
    expect("demazure operator", c.demazure_operator(a).output_prec(P), P - 1);
    expect("reflection operator", c.reflection_operator(a).output_prec(P), P);
    expect("kappa", c.kappa(a).prec(), P);
    const FormalGroupLaw& L = c.law();
    expect("multiple", L.multiple(3).prec(), L.prec());
    expect("psi", L.psi(3).prec(), L.prec() - 1);
    expect("quotient_G", L.quotient_G().prec(), L.prec() - 1);
    expect("kappa_series", L.kappa_series().prec(), L.prec() - 2);
    expect("q_div_x", T.q_div_x(T.q(f), a).certified(), P - 1);
    expect("q_mul", T.q_mul(T.q(f), T.q(g)).certified(), P - 2);
    // The checks above must also agree with the division-free kernels.
    out.check(c.demazure(a, f).agrees_with(c.demazure_by_division(a, f), P - 1), "division-free Delta agrees with division");
    CoproductTable table = d->coproduct_table();
    const int N = c.datum().num_positive();
    out.check(table.certified(P) >= P - N - 1, "ledger coproduct table: certified " + std::to_string(table.certified(P)));
    DualAlgebra D(d, table);
    out.check(D.ev(f).certified(P) >= P - N, "ledger ev: certified " + std::to_string(D.ev(f).certified(P)));
    // Precision exhaustion is reported, never silently absorbed.
    bool raised = false;
    try {
        c.demazure_seq(std::vector<int>(static_cast<std::size_t>(P + 1), 0), f);
    } catch (const Error& e) {
        raised = e.reason() == "PrecisionExhausted";
    }
    out.check(raised, "demazure_seq past the working precision raises PrecisionExhausted");
}

std::string run_doc(const JobConfig& cfg, const std::vector<std::string>& args) { return run_command(cfg, args).doc.dump(2); }

Outcome criterion10() {
    Outcome out;
    // Byte-identical reruns, across thread counts.
    JobConfig cfg;
    cfg.datum = Json{{"type", "B2"}, {"lattice", "sc"}};
    cfg.fgl = "multiplicative";
    cfg.prec = 5;
    const std::vector<std::vector<std::string>> commands{{"coproduct", "1,2,1"}, {"dual-mult-table"}, {"verify", "all"}, {"charmap"}};
    const int threads = omp_get_max_threads();
    for (const auto& args : commands) {
        omp_set_num_threads(1);
        std::string serial = run_doc(cfg, args);
        omp_set_num_threads(std::max(threads, 4));
        std::string parallel = run_doc(cfg, args);
        std::string again = run_doc(cfg, args);
        out.check(serial == parallel && parallel == again, "determinism of " + args[0]);
    }
    omp_set_num_threads(threads);

    // Parallel kernels against their serial references.
    auto d = algebra("G2", "sc", Law::Multiplicative, 10);
    const FGAContext& c = d->ctx();
    std::mt19937_64 rng(kSeed + 30);
    for (int k = 0; k < 5; ++k) {
        TruncSeries f = sample_series(c, rng, 8, 6);
        for (int r = 0; r < c.datum().num_positive(); ++r) {
            const MonomialOperator& op = c.demazure_operator(r);
            TruncSeries a = op.apply(f);
            TruncSeries b = op.apply_serial(f);
            out.check(a.prec() == b.prec() && a.agrees_with(b, a.prec()), "operator apply equals apply_serial");
        }
    }
    DualAlgebra D(algebra("B2", "sc", Law::Multiplicative, 10));
    for (int k = 0; k < 5; ++k) {
        DualElem x = D.ev(sample_series(D.ctx(), rng, 6, 4));
        DualElem y = D.ev(sample_series(D.ctx(), rng, 6, 4));
        out.check(D.equal(D.mul(x, y), D.mul_serial(x, y)), "dual mul equals mul_serial");
    }
    ledger_checks(out);
    return out;
}

}  // namespace

int main() {
    reset_division_audit();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"relations on 3 types x 2 lattices x 3 laws", criterion1},
        {"triangularity on W(B2) and W(G2)", criterion2},
        {"coproduct formula, counit, cocommutativity, coassociativity", criterion3},
        {"product formula for words of length <= 4 on B2", criterion4},
        {"dual algebra product and ev multiplicativity", criterion5},
        {"kappa values, lattice examples, Cartan determinant table", criterion6},
        {"torsion image gcd", criterion7},
        {"characteristic map and Borel presentation", criterion8},
        {"augmented coproduct is primitive", criterion9},
        {"determinism, precision ledger, division audit", nullptr},
    };
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto& [name, fn] = criteria[k];
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            if (fn) {
                o = fn();
            } else {
                // Audit of the divisions performed by criteria 1 to 9.
                DivisionAudit audit = division_audit();
                o.check(audit.performed > 0, "no divisions were performed");
                o.check(audit.performed == audit.verified,
                        "divisions verified " + std::to_string(audit.verified) + " of " + std::to_string(audit.performed));
                Outcome rest = criterion10();
                o.ok = o.ok && rest.ok;
                o.checks += rest.checks;
                o.notes.insert(o.notes.end(), rest.notes.begin(), rest.notes.end());
                o.info = std::to_string(audit.performed) + " divisions performed, " + std::to_string(audit.verified) + " verified by multiplying back";
            }
        } catch (const Error& e) {
            o.check(false, "uncaught " + e.reason() + ": " + e.what());
        } catch (const std::exception& e) {
            o.check(false, std::string("uncaught exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu: %s  %s (%d checks, %.1f s)\n", k + 1, o.ok ? "PASS" : "FAIL", name.c_str(), o.checks, secs);
        if (!o.info.empty()) std::printf("    %s\n", o.info.c_str());
        std::size_t shown = 0;
        for (const auto& n : o.notes) {
            if (shown++ == 8) {
                std::printf("    ... %zu more\n", o.notes.size() - 8);
                break;
            }
            std::printf("    %s\n", n.c_str());
        }
        std::fflush(stdout);
        all = all && o.ok;
    }
    std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
    return all ? 0 : 1;
}
