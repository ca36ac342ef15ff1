#include "demazure/formalgroupalgebra.hpp"

#include <array>
#include <stdexcept>

#include "demazure/error.hpp"

namespace demazure {

std::shared_ptr<const FGAContext> FGAContext::create(DatumPtr datum, LawPtr law, FGAOptions opts) {
    return std::make_shared<const FGAContext>(std::move(datum), std::move(law), opts);
}

FGAContext::FGAContext(DatumPtr datum, LawPtr law, FGAOptions opts)
    : datum_(std::move(datum)), law_(std::move(law)), opts_(opts) {
    if (opts_.prec < 1) throw precision_exhausted("working precision must be at least 1");
    if (law_->prec() < opts_.prec + 2) {
        throw std::invalid_argument("formal group law precision must exceed the working precision by 2");
    }
    weyl_ = WeylGroup::enumerate(datum_, opts_.weyl_cap);
    const int nroots = static_cast<int>(datum_->roots().size());
    const int npos = datum_->num_positive();
    for (int r = 0; r < nroots; ++r) x_roots_.push_back(x_of(datum_->root(r).lattice_coords));

    // iota(t)/t, a unit with constant term -1.
    TruncSeries iota_quot = divide_by_coordinate(law_->formal_inverse(), 0);
    for (int r = 0; r < npos; ++r) {
        std::array<TruncSeries, 1> im{x_roots_[static_cast<std::size_t>(r)]};
        TruncSeries u = substitute(iota_quot, im).truncated(prec());
        neg_unit_inv_.push_back(invert_unit(u));
        neg_unit_.push_back(std::move(u));
    }
    for (int r = 0; r < nroots; ++r) {
        try {
            dividers_.emplace_back(LinearDivider(x_roots_[static_cast<std::size_t>(r)], prec()));
        } catch (const Error&) {
            dividers_.emplace_back(std::nullopt);
        }
        if (r >= npos) continue;
        Int g;
        for (auto c : datum_->root(r).lattice_coords) g = gcd(g, Int(c));
        if (!g.is_one()) {
            RingElem content = RingElem::from_int(ring(), g);
            advisories_.push_back(RegularityAdvisory{r, g, content.is_regular()});
        }
    }
    // Warm the simple-root operators; other roots are built on first use.
    for (int i = 0; i < rank(); ++i) {
        reflection_operator(datum_->simple_root(i));
        demazure_operator(datum_->simple_root(i));
    }
}

std::vector<std::string> FGAContext::coordinate_names() const {
    std::vector<std::string> names;
    for (int i = 0; i < rank(); ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

TruncSeries FGAContext::embed(const TruncSeries& f, int var) const {
    std::vector<SeriesTerm> terms;
    std::vector<int> e(static_cast<std::size_t>(rank()), 0);
    for (const auto& t : f.terms()) {
        int k = t.mono.exp(0);
        if (k > prec()) break;
        e[static_cast<std::size_t>(var)] = k;
        terms.push_back(SeriesTerm{Mono::from_exponents(e), t.coef});
    }
    return TruncSeries::from_sorted_terms(ring(), rank(), std::min(f.prec(), prec()), std::move(terms));
}

TruncSeries FGAContext::compute_x(const Weight& lambda) const {
    // x_{sum m_i L_i} = (m_1 ._F x_1) +_F ... +_F (m_n ._F x_n)
    std::optional<TruncSeries> acc;
    for (int i = 0; i < rank(); ++i) {
        int64_t m = lambda[static_cast<std::size_t>(i)];
        if (m == 0) continue;
        TruncSeries term = embed(law_->multiple(static_cast<int>(m)), i);
        acc = acc ? law_->add(*acc, term).truncated(prec()) : term;
    }
    return acc ? *acc : zero();
}

TruncSeries FGAContext::x_of(const Weight& lambda) const {
    if (static_cast<int>(lambda.size()) != rank()) throw config_error("InvalidWeight", "weight has the wrong number of coordinates");
    {
        std::lock_guard<std::mutex> lock(x_mu_);
        auto it = x_cache_.find(lambda);
        if (it != x_cache_.end()) return it->second;
    }
    TruncSeries x = compute_x(lambda);
    std::lock_guard<std::mutex> lock(x_mu_);
    x_cache_.emplace(lambda, x);
    return x;
}

TruncSeries FGAContext::x_root_power(int root, int k) const {
    TruncSeries out = one();
    for (int j = 0; j < k; ++j) out = mul(out, x_root(root));
    return out;
}

namespace {

// Images of all monomials of degree <= max_degree as sparse rows.
std::vector<std::vector<MonomialOperator::Entry>> to_entries(const std::vector<TruncSeries>& images,
                                                              const MonomialIndex& idx) {
    std::vector<std::vector<MonomialOperator::Entry>> out(images.size());
    for (std::size_t r = 0; r < images.size(); ++r) {
        for (const auto& t : images[r].terms()) {
            int rank = idx.rank(t.mono);
            if (rank >= 0) out[r].push_back(MonomialOperator::Entry{rank, t.coef});
        }
    }
    return out;
}

// First variable occurring in m; m must not be 1.
int first_var(Mono m, int nvars) {
    for (int i = 0; i < nvars; ++i) {
        if (m.exp(i) > 0) return i;
    }
    return -1;
}

}  // namespace

std::shared_ptr<const MonomialOperator> FGAContext::build_reflection(int root) const {
    const int n = rank();
    auto idx = MonomialIndex::get(n, prec());
    std::vector<TruncSeries> coord;
    for (int j = 0; j < n; ++j) {
        Weight e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(j)] = 1;
        coord.push_back(x_of(datum_->reflect(root, e)));
    }
    std::vector<TruncSeries> images(idx->size());
    images[0] = one();
    for (std::size_t r = 1; r < idx->size(); ++r) {
        Mono m = idx->mono(r);
        int j = first_var(m, n);
        int prev = idx->rank(Mono::var(j).quotient_of(m));
        images[r] = mul(images[static_cast<std::size_t>(prev)], coord[static_cast<std::size_t>(j)]);
    }
    return std::make_shared<const MonomialOperator>(ring(), n, prec(), 0, prec(), to_entries(images, *idx));
}

std::shared_ptr<const MonomialOperator> FGAContext::build_demazure(int root) const {
    const int n = rank();
    const Root& a = datum_->root(root);
    auto idx = MonomialIndex::get(n, prec());
    std::vector<TruncSeries> refl;
    std::vector<TruncSeries> dcoord;
    for (int j = 0; j < n; ++j) {
        Weight e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(j)] = 1;
        int64_t m = datum_->pairing(root, e);
        Weight se = datum_->reflect(root, e);
        refl.push_back(x_of(se));
        if (m == 0) {
            dcoord.push_back(zero());
            continue;
        }
        // Delta(x_lambda) = psi_m(x_alpha) * G(x_{s lambda}, x_{m alpha}), m = alpha^vee(lambda).
        Weight ma = a.lattice_coords;
        for (auto& v : ma) v *= m;
        std::array<TruncSeries, 1> im{x_root(root)};
        TruncSeries psi = substitute(law_->psi(static_cast<int>(m)), im).truncated(prec());
        TruncSeries g = law_->apply_G(refl.back(), x_of(ma)).truncated(prec());
        dcoord.push_back(mul(psi, g));
    }
    // Twisted Leibniz: Delta(x_j u) = Delta(x_j) u + s(x_j) Delta(u).
    std::vector<TruncSeries> images(idx->size());
    images[0] = zero();
    for (std::size_t r = 1; r < idx->size(); ++r) {
        Mono m = idx->mono(r);
        int j = first_var(m, n);
        Mono rest = Mono::var(j).quotient_of(m);
        int prev = idx->rank(rest);
        TruncSeries rest_series = TruncSeries::from_sorted_terms(ring(), n, prec(), {SeriesTerm{rest, RingElem::one(ring())}});
        images[r] = mul(dcoord[static_cast<std::size_t>(j)], rest_series) +
                    mul(refl[static_cast<std::size_t>(j)], images[static_cast<std::size_t>(prev)]);
    }
    return std::make_shared<const MonomialOperator>(ring(), n, prec(), -1, prec(), to_entries(images, *idx));
}

const MonomialOperator& FGAContext::reflection_operator(int root) const {
    std::lock_guard<std::mutex> lock(refl_mu_);
    auto it = refl_ops_.find(root);
    if (it == refl_ops_.end()) it = refl_ops_.emplace(root, build_reflection(root)).first;
    return *it->second;
}

const MonomialOperator& FGAContext::demazure_operator(int root) const {
    std::lock_guard<std::mutex> lock(dem_mu_);
    auto it = dem_ops_.find(root);
    if (it == dem_ops_.end()) it = dem_ops_.emplace(root, build_demazure(root)).first;
    return *it->second;
}

const LinearDivider* FGAContext::divider(int root) const {
    const auto& d = dividers_[static_cast<std::size_t>(root)];
    return d ? &*d : nullptr;
}

TruncSeries FGAContext::reflect(int root, const TruncSeries& u) const { return reflection_operator(root).apply(u); }

TruncSeries FGAContext::weyl_act(int w, const TruncSeries& u) const {
    const auto& word = weyl_->word(w);
    TruncSeries out = u;
    for (auto it = word.rbegin(); it != word.rend(); ++it) out = reflect(datum_->simple_root(*it), out);
    return out;
}

TruncSeries FGAContext::demazure_by_division(int root, const TruncSeries& u) const {
    TruncSeries diff = u - reflect(root, u);
    if (const LinearDivider* d = divider(root)) return d->divide(diff);
    return exact_div_linear(diff, x_root(root));
}

TruncSeries FGAContext::demazure(int root, const TruncSeries& u) const {
    if (u.prec() < 1) throw precision_exhausted("Demazure operator needs input precision at least 1");
    TruncSeries out = demazure_operator(root).apply(u);
    if (opts_.cross_check) {
        std::optional<TruncSeries> other;
        try {
            other = demazure_by_division(root, u);
        } catch (const Error& e) {
            if (e.reason() != "NotDivisible" && e.reason() != "NotUnimodularLinearPart") throw;
        }
        if (other && !out.agrees_with(*other, std::min(out.prec(), other->prec()))) {
            throw hypothesis_error("DivisionCrossCheckFailed", "division-free and division-based Demazure values differ",
                                   {{"root", std::to_string(root)}});
        }
    }
    return out;
}

TruncSeries FGAContext::b_op(int i, int j, const TruncSeries& u) const {
    int root = datum_->simple_root(i);
    switch (j) {
        case -1:
            return demazure(root, u);
        case 0:
            return reflect(root, u);
        case 1:
            return -mul_tracked(u, x_root(root), prec());
        default:
            throw config_error("InvalidArgument", "B-operator index must be -1, 0 or 1");
    }
}

TruncSeries FGAContext::demazure_seq(const std::vector<int>& word, const TruncSeries& u) const {
    if (u.prec() - static_cast<int>(word.size()) < 0) {
        throw precision_exhausted("Demazure sequence longer than the input precision",
                                  {{"length", std::to_string(word.size())}, {"prec", std::to_string(u.prec())}});
    }
    TruncSeries out = u;
    for (auto it = word.rbegin(); it != word.rend(); ++it) out = demazure(datum_->simple_root(*it), out);
    return out;
}

TruncSeries FGAContext::p_coeff(const std::vector<int>& word, uint32_t e1, uint32_t e2) const {
    TruncSeries u = one();
    for (int j = static_cast<int>(word.size()) - 1; j >= 0; --j) {
        bool in1 = ((e1 >> j) & 1U) != 0;
        bool in2 = ((e2 >> j) & 1U) != 0;
        int i = word[static_cast<std::size_t>(j)];
        if (in1 && in2) {
            u = b_op(i, 1, b_op(i, 0, u));
        } else if (!in1 && !in2) {
            if (u.prec() < 1) throw precision_exhausted("p-coefficient exhausted the working precision");
            u = b_op(i, -1, u);
        } else {
            u = b_op(i, 0, u);
        }
    }
    return u;
}

TruncSeries FGAContext::kappa(int root) const {
    std::array<TruncSeries, 1> im{x_root(root)};
    return substitute(law_->kappa_series(), im).truncated(prec());
}

TruncSeries sample_series(const FGAContext& ctx, std::mt19937_64& rng, int terms, int max_degree) {
    const int n = ctx.rank();
    RingPtr r = ctx.ring();
    max_degree = std::min(max_degree, ctx.prec());
    std::vector<SeriesTerm> out;
    for (int k = 0; k < terms; ++k) {
        int d = static_cast<int>(rng() % static_cast<uint64_t>(max_degree + 1));
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < d; ++j) ++e[static_cast<std::size_t>(rng() % static_cast<uint64_t>(n))];
        RingElem c = RingElem::from_int(r, static_cast<int64_t>(rng() % 7) - 3);
        if (r->kind() == RingKind::Poly && (rng() & 1U) != 0) {
            c *= RingElem::variable(r, static_cast<int>(rng() % static_cast<uint64_t>(r->nvars())));
        }
        out.push_back(SeriesTerm{Mono::from_exponents(e), c});
    }
    return TruncSeries::from_terms(r, n, ctx.prec(), std::move(out));
}

}  // namespace demazure
