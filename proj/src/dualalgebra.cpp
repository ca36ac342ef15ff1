#include "demazure/dualalgebra.hpp"

#include <algorithm>
#include <random>

#include "demazure/error.hpp"
#include "demazure/parallel.hpp"

namespace demazure {

int DualElem::certified(int cap) const {
    for (const auto& [w, c] : coords) cap = std::min(cap, c.prec());
    return cap;
}

DualAlgebra::DualAlgebra(std::shared_ptr<const DemazureAlgebra> d) : d_(std::move(d)), table_(d_->coproduct_table()) {}

DualAlgebra::DualAlgebra(std::shared_ptr<const DemazureAlgebra> d, CoproductTable table) : d_(std::move(d)), table_(std::move(table)) {
    if (table_.slices.size() != static_cast<std::size_t>(d_->weyl().size())) {
        throw config_error("InvalidArgument", "coproduct table does not match the Weyl group");
    }
}

DualElem DualAlgebra::basis(int w) const {
    DualElem out;
    out.coords.emplace(w, ctx().one());
    return out;
}

DualElem DualAlgebra::add(const DualElem& a, const DualElem& b) const {
    DualElem out = a;
    for (const auto& [w, c] : b.coords) {
        auto it = out.coords.find(w);
        if (it == out.coords.end()) {
            out.coords.emplace(w, c);
        } else {
            it->second += c;
        }
    }
    return out;
}

DualElem DualAlgebra::scale(const TruncSeries& s, const DualElem& a) const {
    DualElem out;
    for (const auto& [w, c] : a.coords) out.coords.emplace(w, demazure::mul(s, c));
    return out;
}

namespace {

std::optional<TruncSeries> dual_coord(const DualElem& a, const DualElem& b, const CoproductSlice& slice) {
    std::optional<TruncSeries> acc;
    for (const auto& [k, sigma] : slice) {
        auto ia = a.coords.find(k.first);
        if (ia == a.coords.end()) continue;
        auto ib = b.coords.find(k.second);
        if (ib == b.coords.end()) continue;
        TruncSeries term = demazure::mul(demazure::mul(ia->second, ib->second), sigma);
        acc = acc ? *acc + term : term;
    }
    return acc;
}

}  // namespace

DualElem DualAlgebra::mul(const DualElem& a, const DualElem& b) const {
    const int n = d_->weyl().size();
    std::vector<std::optional<TruncSeries>> out(static_cast<std::size_t>(n));
    parallel_for(n, [&](int w) { out[static_cast<std::size_t>(w)] = dual_coord(a, b, table_.slices[static_cast<std::size_t>(w)]); });
    DualElem r;
    for (int w = 0; w < n; ++w) {
        auto& c = out[static_cast<std::size_t>(w)];
        if (c) r.coords.emplace(w, std::move(*c));
    }
    return r;
}

DualElem DualAlgebra::mul_serial(const DualElem& a, const DualElem& b) const {
    DualElem r;
    for (int w = 0; w < d_->weyl().size(); ++w) {
        auto c = dual_coord(a, b, table_.slices[static_cast<std::size_t>(w)]);
        if (c) r.coords.emplace(w, std::move(*c));
    }
    return r;
}

DualElem DualAlgebra::ev(const TruncSeries& s) const {
    const int n = d_->weyl().size();
    std::vector<TruncSeries> out(static_cast<std::size_t>(n));
    parallel_for(n, [&](int w) { out[static_cast<std::size_t>(w)] = ctx().demazure_seq(d_->words()[static_cast<std::size_t>(w)], s); });
    DualElem r;
    // Zero coordinates are kept: their precision is part of the answer.
    for (int w = 0; w < n; ++w) r.coords.emplace(w, std::move(out[static_cast<std::size_t>(w)]));
    return r;
}

TruncSeries DualAlgebra::pair(const DualElem& a, const DFElem& d) const {
    std::optional<TruncSeries> acc;
    for (const auto& [w, c] : d.coeffs) {
        auto it = a.coords.find(w);
        if (it == a.coords.end()) continue;
        TruncSeries term = demazure::mul(c, it->second);
        acc = acc ? *acc + term : term;
    }
    return acc ? *acc : ctx().zero();
}

bool DualAlgebra::equal(const DualElem& a, const DualElem& b) const {
    for (int w = 0; w < d_->weyl().size(); ++w) {
        auto ia = a.coords.find(w);
        auto ib = b.coords.find(w);
        TruncSeries x = ia == a.coords.end() ? ctx().zero() : ia->second;
        TruncSeries y = ib == b.coords.end() ? ctx().zero() : ib->second;
        if (ia == a.coords.end()) x = x.truncated(y.prec());
        if (ib == b.coords.end()) y = y.truncated(x.prec());
        if (!x.agrees_with(y, std::min(x.prec(), y.prec()))) return false;
    }
    return true;
}

namespace {

std::optional<Int> solver_modulus(const FGAContext& ctx) {
    RingPtr r = ctx.ring();
    if (r->kind() == RingKind::Integers) return std::nullopt;
    if (r->kind() == RingKind::IntegersMod) return r->modulus();
    throw config_error("InvalidArgument", "integer solvers need the coefficient ring Z or Z/m", {{"ring", r->name()}});
}

Int integer_value(const RingElem& v) {
    auto k = v.as_integer();
    if (!k) throw config_error("InvalidArgument", "value is not an integer: " + v.to_string());
    return *k;
}

TruncSeries monomial(const FGAContext& ctx, Mono m, int prec) {
    return TruncSeries::from_terms(ctx.ring(), ctx.rank(), prec, {{m, RingElem::one(ctx.ring())}});
}

TruncSeries combination(const FGAContext& ctx, const std::vector<Mono>& monos, const std::vector<Int>& x, int prec) {
    std::vector<SeriesTerm> terms;
    for (std::size_t j = 0; j < monos.size(); ++j) {
        if (x[j].sign() != 0) terms.push_back({monos[j], RingElem::from_int(ctx.ring(), x[j])});
    }
    return TruncSeries::from_terms(ctx.ring(), ctx.rank(), prec, std::move(terms));
}

void require_prec(const FGAContext& ctx, int need, const char* what) {
    if (ctx.prec() < need) {
        throw precision_exhausted(std::string(what) + " needs working precision " + std::to_string(need),
                                  {{"needed", std::to_string(need)}, {"prec", std::to_string(ctx.prec())}});
    }
}

Int reduce(const Int& v, const std::optional<Int>& m) {
    return m ? Int::mod(v, *m) : v;
}

}  // namespace

TorsionResult torsion_gcd(const DemazureAlgebra& d) {
    const FGAContext& ctx = d.ctx();
    const WeylGroup& W = d.weyl();
    const auto modulus = solver_modulus(ctx);
    const int N = W.length(W.longest());
    require_prec(ctx, N, "torsion_gcd");
    const auto& i0 = d.words()[static_cast<std::size_t>(W.longest())];

    TorsionResult res;
    auto idx = MonomialIndex::get(ctx.rank(), N);
    for (std::size_t r = idx->degree_begin(N); r < idx->degree_begin(N + 1); ++r) res.monomials.push_back(idx->mono(r));
    res.values.resize(res.monomials.size());
    parallel_for(static_cast<int>(res.monomials.size()), [&](int j) {
        TruncSeries m = monomial(ctx, res.monomials[static_cast<std::size_t>(j)], N);
        res.values[static_cast<std::size_t>(j)] = integer_value(ctx.augmentation(ctx.demazure_seq(i0, m)));
    });

    Int g(0);
    for (const auto& v : res.values) g = gcd(g, v);
    if (modulus) g = gcd(g, *modulus);
    res.gcd = g;

    IntMatrix A(1, static_cast<int>(res.values.size()));
    for (std::size_t j = 0; j < res.values.size(); ++j) A(0, static_cast<int>(j)) = res.values[j];
    std::vector<Int> b{g};
    LinearSolution sol = solve_linear(A, b, modulus);
    if (!sol.solvable) throw hypothesis_error("CertificateFailure", "gcd of the image is not attained");
    res.u0 = combination(ctx, res.monomials, sol.x, N);

    auto expect = [&](const std::vector<int>& word) -> Int {
        if (static_cast<int>(word.size()) < N) return Int(0);
        return W.is_reduced(word) && W.word_to_element(word) == W.longest() ? reduce(g, modulus) : Int(0);
    };
    auto check = [&](const std::vector<int>& word) {
        Int got = reduce(integer_value(ctx.augmentation(ctx.demazure_seq(word, res.u0))), modulus);
        Int want = expect(word);
        ++res.sequences_checked;
        if (got != want && res.vanishing_ok) {
            res.vanishing_ok = false;
            res.vanishing_witness = "epsilon Delta_(" + word_to_string(word) + ")(u0) = " + got.to_string() + ", expected " + want.to_string();
        }
    };
    for (int w = 0; w < W.size(); ++w) check(d.words()[static_cast<std::size_t>(w)]);

    // Length-N sequences: all of them when few, else a fixed-seed sample.
    const int rank = ctx.rank();
    double total = 1.0;
    for (int k = 0; k < N; ++k) total *= rank;
    std::vector<int> word(static_cast<std::size_t>(N), 0);
    if (total <= 1024.0) {
        for (int c = 0; c < static_cast<int>(total); ++c) {
            int x = c;
            for (int k = N - 1; k >= 0; --k) {
                word[static_cast<std::size_t>(k)] = x % rank;
                x /= rank;
            }
            check(word);
        }
    } else {
        std::mt19937_64 rng(7);
        for (int c = 0; c < 256; ++c) {
            for (auto& l : word) l = static_cast<int>(rng() % static_cast<uint64_t>(rank));
            check(word);
        }
    }
    return res;
}

CharmapResult charmap_surjectivity(const DemazureAlgebra& d) {
    const FGAContext& ctx = d.ctx();
    const WeylGroup& W = d.weyl();
    const auto modulus = solver_modulus(ctx);
    const int N = W.length(W.longest());
    const int n = W.size();
    require_prec(ctx, 2 * N, "charmap_surjectivity");

    auto idx = MonomialIndex::get(ctx.rank(), N);
    std::vector<Mono> monos;
    for (std::size_t r = 0; r < idx->size(); ++r) monos.push_back(idx->mono(r));
    const int cols = static_cast<int>(monos.size());

    // A(w, m) = epsilon Delta_{I_w}(m); only degree <= l(w) can contribute.
    IntMatrix A(n, cols);
    parallel_for(cols, [&](int j) {
        TruncSeries m = monomial(ctx, monos[static_cast<std::size_t>(j)], N);
        for (int w = 0; w < n; ++w) {
            if (monos[static_cast<std::size_t>(j)].degree() > W.length(w)) continue;
            A(w, j) = integer_value(ctx.augmentation(ctx.demazure_seq(d.words()[static_cast<std::size_t>(w)], m)));
        }
    });
    std::vector<Int> b(static_cast<std::size_t>(n), Int(0));
    b[static_cast<std::size_t>(W.longest())] = Int(1);

    CharmapResult res;
    LinearSolution sol = solve_linear(A, b, modulus);
    res.surjective = sol.solvable;
    res.obstruction = sol.obstruction;
    res.image_invariants = sol.image_invariants;

    {
        const int top = static_cast<int>(idx->degree_begin(N));
        IntMatrix At(n, cols - top);
        for (int w = 0; w < n; ++w) {
            for (int j = top; j < cols; ++j) At(w, j - top) = A(w, j);
        }
        res.top_degree_solvable = solve_linear(At, b, modulus).solvable;
    }
    if (!res.surjective) {
        res.failure = "epsilon Delta_{I_w}(u) = delta_{w,w0} has no solution; obstruction " + res.obstruction.to_string();
        return res;
    }
    res.u0_prime = combination(ctx, monos, sol.x, 2 * N);

    // Certificate rows v: epsilon Delta_{I_v}(Delta_{I_w}(u0')) read off A.
    res.certificate = IntMatrix(n, n);
    std::vector<TruncSeries> images(static_cast<std::size_t>(n));
    parallel_for(n, [&](int w) { images[static_cast<std::size_t>(w)] = ctx.demazure_seq(d.words()[static_cast<std::size_t>(w)], res.u0_prime); });
    for (int w = 0; w < n; ++w) {
        for (const auto& t : images[static_cast<std::size_t>(w)].terms()) {
            int j = idx->rank(t.mono);
            if (j < 0) continue;
            Int c = integer_value(t.coef);
            for (int v = 0; v < n; ++v) res.certificate(v, w) += c * A(v, j);
        }
    }
    if (modulus) {
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < n; ++w) res.certificate(v, w) = reduce(res.certificate(v, w), modulus);
        }
    }
    // Entry (v, w) vanishes when l(v) + l(w) < N and equals [vw = w0] when the
    // lengths add to N; pairing v with v^{-1} w0 makes the matrix unitriangular.
    res.unitriangular = true;
    res.diagonal.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        res.diagonal[static_cast<std::size_t>(v)] = W.multiply(W.inverse(v), W.longest());
        for (int w = 0; w < n; ++w) {
            int len = W.length(v) + W.length(w);
            if (len > N) continue;
            Int want(len == N && W.multiply(v, w) == W.longest() ? 1 : 0);
            if (res.certificate(v, w) != want && res.unitriangular) {
                res.unitriangular = false;
                res.failure = "certificate entry (" + W.word_string(v) + ", " + W.word_string(w) + ") = " +
                              res.certificate(v, w).to_string() + ", expected " + want.to_string();
            }
        }
    }
    return res;
}

BorelReport borel_presentation_check(const DualAlgebra& dual, const CharmapResult& cm) {
    if (!cm.surjective) {
        throw hypothesis_error("CertificateFailure", "characteristic map is not surjective: " + cm.failure,
                               {{"obstruction", cm.obstruction.to_string()}});
    }
    const DemazureAlgebra& d = dual.demazure();
    const FGAContext& ctx = d.ctx();
    const WeylGroup& W = d.weyl();
    const auto modulus = solver_modulus(ctx);
    const int n = W.size();

    BorelReport rep;
    rep.epsilon_matrix = IntMatrix(n, n);
    std::vector<TruncSeries> gens(static_cast<std::size_t>(n));
    std::vector<DualElem> evs(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        gens[static_cast<std::size_t>(v)] = ctx.demazure_seq(d.words()[static_cast<std::size_t>(v)], cm.u0_prime);
        evs[static_cast<std::size_t>(v)] = dual.ev(gens[static_cast<std::size_t>(v)]);
        for (const auto& [w, c] : evs[static_cast<std::size_t>(v)].coords) {
            rep.epsilon_matrix(v, w) = reduce(integer_value(c.constant_term()), modulus);
        }
    }
    // Coordinates of ev(Delta_{I_v} u0') are Delta_{I_w} Delta_{I_v} u0', the
    // transpose of the certificate.
    if (!(rep.epsilon_matrix == cm.certificate.transpose())) {
        throw hypothesis_error("CertificateFailure", "ev coordinates disagree with the charmap certificate");
    }
    rep.determinant = determinant(rep.epsilon_matrix);
    Int det = abs(rep.determinant);
    bool unit = modulus ? gcd(det, *modulus) == Int(1) : det == Int(1);
    if (!unit) {
        throw hypothesis_error("CertificateFailure", "epsilon matrix is not invertible", {{"determinant", rep.determinant.to_string()}});
    }
    // ev is multiplicative on the generators: ev(a) ev(b) = ev(ab).
    for (int i = 0; i < ctx.rank() && i + 1 < n; ++i) {
        int a = W.simple_reflection(i);
        for (int b : {W.identity(), a, W.longest()}) {
            DualElem lhs = dual.mul(evs[static_cast<std::size_t>(a)], evs[static_cast<std::size_t>(b)]);
            DualElem rhs = dual.ev(demazure::mul(gens[static_cast<std::size_t>(a)], gens[static_cast<std::size_t>(b)]));
            ++rep.product_checks;
            if (!dual.equal(lhs, rhs)) {
                throw hypothesis_error("CertificateFailure", "ev is not multiplicative on (" + W.word_string(a) + ", " + W.word_string(b) + ")");
            }
        }
    }
    rep.ok = true;
    return rep;
}

}  // namespace demazure
