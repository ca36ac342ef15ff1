#include "demazure/powerseries.hpp"

#include <algorithm>
#include <stdexcept>

#include "demazure/error.hpp"

namespace demazure {

namespace {

std::atomic<uint64_t> g_performed{0};
std::atomic<uint64_t> g_verified{0};
std::atomic<bool> g_verify{true};

void check_prec(int p, const char* what) {
    if (p < 0) throw precision_exhausted(std::string("precision exhausted in ") + what, {{"operation", what}});
}

bool term_less(const SeriesTerm& a, const SeriesTerm& b) { return GrlexLess{}(a.mono, b.mono); }

// Collects nonzero entries of a rank-indexed dense vector into sorted terms.
std::vector<SeriesTerm> collect(const MonomialIndex& idx, std::vector<RingElem>& acc, std::size_t limit) {
    std::vector<SeriesTerm> out;
    for (std::size_t r = 0; r < limit; ++r) {
        if (!acc[r].is_zero()) out.push_back(SeriesTerm{idx.mono(r), std::move(acc[r])});
    }
    return out;
}

}  // namespace

DivisionAudit division_audit() { return DivisionAudit{g_performed.load(), g_verified.load()}; }

void reset_division_audit() {
    g_performed = 0;
    g_verified = 0;
}

void set_division_verification(bool on) { g_verify = on; }

// ---------------------------------------------------------------------------

TruncSeries::TruncSeries(RingPtr ring, int nvars, int prec) : ring_(ring), nvars_(nvars), prec_(prec) {
    if (nvars < 1 || nvars > kMaxVars) throw config_error("InvalidSeries", "unsupported variable count");
    check_prec(prec, "series construction");
    if (prec > kMaxDegree) throw config_error("InvalidSeries", "precision exceeds supported maximum");
}

TruncSeries TruncSeries::constant(RingPtr ring, int nvars, int prec, const RingElem& c) {
    TruncSeries s(ring, nvars, prec);
    if (c.ring() != ring) throw config_error("DescriptorMismatch", "constant from another ring");
    if (!c.is_zero()) s.terms_.push_back(SeriesTerm{Mono(), c});
    return s;
}

TruncSeries TruncSeries::one(RingPtr ring, int nvars, int prec) { return constant(ring, nvars, prec, RingElem::one(ring)); }

TruncSeries TruncSeries::variable(RingPtr ring, int nvars, int prec, int i) {
    if (i < 0 || i >= nvars) throw config_error("InvalidSeries", "variable index out of range");
    TruncSeries s(ring, nvars, prec);
    if (prec >= 1) s.terms_.push_back(SeriesTerm{Mono::var(i), RingElem::one(ring)});
    return s;
}

TruncSeries TruncSeries::from_terms(RingPtr ring, int nvars, int prec, std::vector<SeriesTerm> terms) {
    TruncSeries s(ring, nvars, prec);
    for (const auto& t : terms) {
        if (t.coef.ring() != ring) throw config_error("DescriptorMismatch", "term coefficient from another ring");
        for (int i = nvars; i < kMaxVars; ++i) {
            if (t.mono.exp(i) != 0) throw config_error("InvalidSeries", "monomial uses an undeclared variable");
        }
    }
    std::stable_sort(terms.begin(), terms.end(), term_less);
    for (std::size_t i = 0; i < terms.size();) {
        SeriesTerm acc = terms[i];
        std::size_t j = i + 1;
        while (j < terms.size() && terms[j].mono == acc.mono) acc.coef += terms[j++].coef;
        if (!acc.coef.is_zero() && acc.mono.degree() <= prec) s.terms_.push_back(std::move(acc));
        i = j;
    }
    return s;
}

TruncSeries TruncSeries::from_sorted_terms(RingPtr ring, int nvars, int prec, std::vector<SeriesTerm> terms) {
    TruncSeries s(ring, nvars, prec);
    s.terms_ = std::move(terms);
    return s;
}

void TruncSeries::check_compatible(const TruncSeries& b) const {
    if (ring_ != b.ring_ || nvars_ != b.nvars_) {
        throw config_error("DescriptorMismatch", "series over different rings or variable counts");
    }
}

int TruncSeries::valuation() const { return terms_.empty() ? prec_ + 1 : terms_.front().mono.degree(); }

RingElem TruncSeries::constant_term() const {
    if (!terms_.empty() && terms_.front().mono.is_one()) return terms_.front().coef;
    return RingElem::zero(ring_);
}

RingElem TruncSeries::coeff(Mono m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), SeriesTerm{m, RingElem()}, term_less);
    if (it != terms_.end() && it->mono == m) return it->coef;
    return RingElem::zero(ring_);
}

TruncSeries TruncSeries::truncated(int p) const {
    if (p >= prec_) return *this;
    TruncSeries s(ring_, nvars_, p);
    for (const auto& t : terms_) {
        if (t.mono.degree() > p) break;
        s.terms_.push_back(t);
    }
    return s;
}

TruncSeries TruncSeries::homogeneous_part(int d) const {
    TruncSeries s(ring_, nvars_, prec_);
    for (const auto& t : terms_) {
        if (t.mono.degree() == d) s.terms_.push_back(t);
    }
    return s;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& b) {
    check_compatible(b);
    int p = std::min(prec_, b.prec_);
    std::vector<SeriesTerm> out;
    out.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    GrlexLess less;
    auto in_range = [p](const SeriesTerm& t) { return t.mono.degree() <= p; };
    while (true) {
        bool ai = i < terms_.size() && in_range(terms_[i]);
        bool bj = j < b.terms_.size() && in_range(b.terms_[j]);
        if (!ai && !bj) break;
        if (!bj || (ai && less(terms_[i].mono, b.terms_[j].mono))) {
            out.push_back(std::move(terms_[i++]));
        } else if (!ai || less(b.terms_[j].mono, terms_[i].mono)) {
            out.push_back(b.terms_[j++]);
        } else {
            RingElem c = terms_[i].coef + b.terms_[j].coef;
            if (!c.is_zero()) out.push_back(SeriesTerm{terms_[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    prec_ = p;
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& b) { return *this += -b; }

TruncSeries TruncSeries::operator-() const {
    TruncSeries s = *this;
    for (auto& t : s.terms_) t.coef = -t.coef;
    return s;
}

TruncSeries TruncSeries::scaled(const RingElem& c) const {
    if (c.ring() != ring_) throw config_error("DescriptorMismatch", "scalar from another ring");
    TruncSeries s(ring_, nvars_, prec_);
    if (c.is_zero()) return s;
    for (const auto& t : terms_) {
        RingElem v = t.coef * c;
        if (!v.is_zero()) s.terms_.push_back(SeriesTerm{t.mono, std::move(v)});
    }
    return s;
}

TruncSeries TruncSeries::scaled(const Int& c) const { return scaled(RingElem::from_int(ring_, c)); }

bool TruncSeries::agrees_with(const TruncSeries& b, int p) const {
    check_compatible(b);
    if (p > prec_ || p > b.prec_) return false;
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
        bool ai = i < terms_.size() && terms_[i].mono.degree() <= p;
        bool bj = j < b.terms_.size() && b.terms_[j].mono.degree() <= p;
        if (!ai && !bj) return true;
        if (ai != bj) return false;
        if (!(terms_[i] == b.terms_[j])) return false;
        ++i;
        ++j;
    }
}

std::string TruncSeries::to_string(std::span<const std::string> names) const {
    std::vector<std::string> fallback;
    if (names.size() < static_cast<std::size_t>(nvars_)) {
        for (int i = 0; i < nvars_; ++i) fallback.push_back("x" + std::to_string(i + 1));
        names = fallback;
    }
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += " + ";
        std::string c = t.coef.to_string();
        if (t.coef.terms().size() > 1) c = "(" + c + ")";
        out += t.mono.is_one() ? c : c + "*" + mono_to_string(t.mono, nvars_, names);
    }
    if (out.empty()) out = "0";
    return out + " + O(" + std::to_string(prec_ + 1) + ")";
}

namespace {

TruncSeries mul_at(const TruncSeries& f, const TruncSeries& g, int p) {
    auto idx = MonomialIndex::get(f.nvars(), p);
    std::vector<RingElem> acc(idx->size(), RingElem::zero(f.ring()));
    const auto& ft = f.terms();
    const auto& gt = g.terms();
    for (const auto& a : ft) {
        int da = a.mono.degree();
        if (da > p) break;
        for (const auto& b : gt) {
            if (da + b.mono.degree() > p) break;
            acc[static_cast<std::size_t>(idx->rank(a.mono * b.mono))].add_product(a.coef, b.coef);
        }
    }
    return TruncSeries::from_sorted_terms(f.ring(), f.nvars(), p, collect(*idx, acc, idx->size()));
}

}  // namespace

TruncSeries mul(const TruncSeries& f, const TruncSeries& g) {
    f.check_compatible(g);
    return mul_at(f, g, std::min(f.prec_, g.prec_));
}

TruncSeries mul_tracked(const TruncSeries& f, const TruncSeries& g, int cap) {
    f.check_compatible(g);
    int p = std::min({f.prec_ + g.valuation(), g.prec_ + f.valuation(), cap});
    check_prec(p, "multiplication");
    return mul_at(f, g, p);
}

// ---------------------------------------------------------------------------

TruncSeries substitute(const TruncSeries& f, std::span<const TruncSeries> images) {
    if (static_cast<int>(images.size()) != f.nvars()) throw config_error("InvalidSeries", "substitution arity mismatch");
    RingPtr ring = f.ring();
    int m = images[0].nvars();
    int p = f.prec();
    for (const auto& im : images) {
        if (im.ring() != ring || im.nvars() != m) throw config_error("DescriptorMismatch", "substitution images disagree");
        if (!im.constant_term().is_zero()) {
            throw config_error("NonzeroConstantTerm", "substitution image has a nonzero constant term");
        }
        p = std::min(p, im.prec());
    }
    // powers[i][e] = images[i]^e at precision p.
    std::vector<std::vector<TruncSeries>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) powers[i].push_back(TruncSeries::one(ring, m, p));
    auto power = [&](std::size_t i, int e) -> const TruncSeries& {
        while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(mul(powers[i].back(), images[i].truncated(p)));
        return powers[i][static_cast<std::size_t>(e)];
    };
    TruncSeries out(ring, m, p);
    for (const auto& t : f.terms()) {
        if (t.mono.degree() > p) break;
        TruncSeries term = TruncSeries::constant(ring, m, p, t.coef);
        for (int i = 0; i < f.nvars(); ++i) {
            int e = t.mono.exp(i);
            if (e > 0) term = mul(term, power(static_cast<std::size_t>(i), e));
        }
        out += term;
    }
    return out;
}

MonomialOperator linear_substitution(RingPtr ring, const IntMatrix& A, int max_degree) {
    const int n = A.rows();
    if (A.cols() != n) throw config_error("InvalidSeries", "change of variables needs a square matrix");
    auto idx = MonomialIndex::get(n, max_degree);
    using IntImage = std::vector<std::pair<int32_t, Int>>;
    std::vector<IntImage> img(idx->size());
    img[0] = {{0, Int(1)}};
    for (std::size_t r = 1; r < idx->size(); ++r) {
        Mono m = idx->mono(r);
        int i = 0;
        while (m.exp(i) == 0) ++i;
        Mono parent = Mono::var(i).quotient_of(m);
        std::vector<std::pair<int32_t, Int>> acc;
        for (const auto& [pr, pc] : img[static_cast<std::size_t>(idx->rank(parent))]) {
            Mono pm = idx->mono(static_cast<std::size_t>(pr));
            for (int j = 0; j < n; ++j) {
                if (A(i, j).is_zero()) continue;
                acc.emplace_back(idx->rank(pm * Mono::var(j)), pc * A(i, j));
            }
        }
        std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        IntImage merged;
        for (auto& e : acc) {
            if (!merged.empty() && merged.back().first == e.first) {
                merged.back().second += e.second;
            } else {
                merged.push_back(std::move(e));
            }
        }
        std::erase_if(merged, [](const auto& e) { return e.second.is_zero(); });
        img[r] = std::move(merged);
    }
    std::vector<std::vector<MonomialOperator::Entry>> images(idx->size());
    for (std::size_t r = 0; r < idx->size(); ++r) {
        for (const auto& [t, c] : img[r]) {
            RingElem v = RingElem::from_int(ring, c);
            if (!v.is_zero()) images[r].push_back({t, std::move(v)});
        }
    }
    return MonomialOperator(ring, n, max_degree, 0, max_degree, std::move(images));
}

TruncSeries change_vars(const TruncSeries& f, const IntMatrix& A) {
    if (A.rows() != f.nvars()) throw config_error("InvalidSeries", "change of variables size mismatch");
    return linear_substitution(f.ring(), A, f.prec()).apply(f);
}

TruncSeries divide_by_coordinate(const TruncSeries& f, int i) {
    if (i < 0 || i >= f.nvars()) throw config_error("InvalidSeries", "variable index out of range");
    check_prec(f.prec() - 1, "divide_by_coordinate");
    std::vector<SeriesTerm> out;
    out.reserve(f.terms().size());
    Mono xi = Mono::var(i);
    for (const auto& t : f.terms()) {
        if (t.mono.exp(i) == 0) {
            std::vector<std::string> names;
            for (int k = 0; k < f.nvars(); ++k) names.push_back("x" + std::to_string(k + 1));
            std::string w = mono_to_string(t.mono, f.nvars(), names);
            throw hypothesis_error("NotDivisible", "monomial " + w + " is not divisible by x" + std::to_string(i + 1),
                                   {{"witness", w}, {"degree", std::to_string(t.mono.degree())}});
        }
        out.push_back(SeriesTerm{xi.quotient_of(t.mono), t.coef});
    }
    // Dividing by one variable preserves grlex order.
    TruncSeries q = TruncSeries::from_sorted_terms(f.ring(), f.nvars(), f.prec() - 1, std::move(out));
    ++g_performed;
    if (g_verify) {
        TruncSeries back = mul_tracked(q, TruncSeries::variable(f.ring(), f.nvars(), f.prec(), i), f.prec());
        if (!back.agrees_with(f, f.prec())) throw std::logic_error("multiply-back failed in divide_by_coordinate");
        ++g_verified;
    }
    return q;
}

TruncSeries invert_unit(const TruncSeries& f) {
    RingElem c0 = f.constant_term();
    if (!c0.is_unit()) {
        throw hypothesis_error("NonUnitConstantTerm", "constant term " + c0.to_string() + " is not a unit",
                               {{"constant", c0.to_string()}});
    }
    ++g_performed;
    const int p = f.prec();
    RingElem c0inv = c0.inverse();
    TruncSeries one = TruncSeries::one(f.ring(), f.nvars(), p);
    TruncSeries h = one - f.scaled(c0inv);
    TruncSeries g = one;
    for (int k = 0; k < p; ++k) g = one + mul(h, g);
    g = g.scaled(c0inv);
    if (g_verify) {
        if (!(mul(f, g) == one)) throw std::logic_error("multiply-back failed in invert_unit");
        ++g_verified;
    }
    return g;
}

TruncSeries exact_div_linear(const TruncSeries& f, const TruncSeries& g) {
    if (f.ring() != g.ring() || f.nvars() != g.nvars()) throw config_error("DescriptorMismatch", "division operands disagree");
    return LinearDivider(g, std::min(f.prec(), g.prec())).divide(f);
}

// ---------------------------------------------------------------------------

MonomialOperator::MonomialOperator(RingPtr ring, int nvars, int max_degree, int shift, int image_prec,
                                   std::vector<std::vector<Entry>> images)
    : ring_(ring), nvars_(nvars), max_degree_(max_degree), shift_(shift), image_prec_(std::min(image_prec, max_degree)),
      index_(MonomialIndex::get(nvars, max_degree)), images_(std::move(images)) {
    if (images_.size() != index_->size()) throw std::invalid_argument("operator image count mismatch");
    std::size_t n = index_->size();
    std::vector<std::size_t> counts(n + 1, 0);
    for (const auto& im : images_) {
        for (const auto& e : im) ++counts[static_cast<std::size_t>(e.rank) + 1];
    }
    for (std::size_t r = 0; r < n; ++r) counts[r + 1] += counts[r];
    row_start_ = counts;
    col_.resize(counts[n]);
    val_.resize(counts[n]);
    std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& e : images_[s]) {
            std::size_t pos = fill[static_cast<std::size_t>(e.rank)]++;
            col_[pos] = static_cast<int32_t>(s);
            val_[pos] = e.coef;
        }
    }
}

int MonomialOperator::output_prec(int input_prec) const {
    return std::min(std::min(input_prec, max_degree_) + shift_, image_prec_);
}

TruncSeries MonomialOperator::apply(const TruncSeries& f) const {
    if (f.ring() != ring_ || f.nvars() != nvars_) throw config_error("DescriptorMismatch", "operator applied to a foreign series");
    int p = output_prec(f.prec());
    check_prec(p, "operator application");
    int in_deg = std::min(f.prec(), max_degree_);
    const std::size_t n = index_->size();
    std::vector<const RingElem*> dense(n, nullptr);
    for (const auto& t : f.terms()) {
        if (t.mono.degree() > in_deg) break;
        dense[static_cast<std::size_t>(index_->rank(t.mono))] = &t.coef;
    }
    const std::size_t limit = index_->degree_begin(p + 1);
    std::vector<RingElem> out(limit, RingElem::zero(ring_));
    const long long rows = static_cast<long long>(limit);
#pragma omp parallel for schedule(dynamic, 32) if (rows > 512)
    for (long long t = 0; t < rows; ++t) {
        RingElem& acc = out[static_cast<std::size_t>(t)];
        for (std::size_t k = row_start_[static_cast<std::size_t>(t)]; k < row_start_[static_cast<std::size_t>(t) + 1]; ++k) {
            const RingElem* x = dense[static_cast<std::size_t>(col_[k])];
            if (x != nullptr) acc.add_product(val_[k], *x);
        }
    }
    return TruncSeries::from_sorted_terms(ring_, nvars_, p, collect(*index_, out, limit));
}

TruncSeries MonomialOperator::apply_serial(const TruncSeries& f) const {
    if (f.ring() != ring_ || f.nvars() != nvars_) throw config_error("DescriptorMismatch", "operator applied to a foreign series");
    int p = output_prec(f.prec());
    check_prec(p, "operator application");
    int in_deg = std::min(f.prec(), max_degree_);
    const std::size_t limit = index_->degree_begin(p + 1);
    std::vector<RingElem> out(limit, RingElem::zero(ring_));
    for (const auto& t : f.terms()) {
        if (t.mono.degree() > in_deg) break;
        for (const auto& e : images_[static_cast<std::size_t>(index_->rank(t.mono))]) {
            if (static_cast<std::size_t>(e.rank) < limit) out[static_cast<std::size_t>(e.rank)].add_product(e.coef, t.coef);
        }
    }
    return TruncSeries::from_sorted_terms(ring_, nvars_, p, collect(*index_, out, limit));
}

// ---------------------------------------------------------------------------

LinearDivider::LinearDivider(const TruncSeries& g, int max_degree) : g_(g), max_degree_(std::min(max_degree, g.prec())) {
    RingPtr ring = g.ring();
    const int n = g.nvars();
    auto fail = [&](const std::string& why) {
        return hypothesis_error("NotUnimodularLinearPart", "cannot divide by " + g.to_string() + ": " + why,
                                {{"divisor", g.to_string()}});
    };
    if (!g.constant_term().is_zero()) throw fail("nonzero constant term");
    check_prec(max_degree_ - 1, "exact_div_linear");
    std::vector<Int> k(static_cast<std::size_t>(n));
    Int content;
    for (int i = 0; i < n; ++i) {
        auto v = g.coeff(Mono::var(i)).as_integer();
        if (!v) throw fail("linear coefficient is not an integer");
        k[static_cast<std::size_t>(i)] = *v;
        content = gcd(content, *v);
    }
    if (content.is_zero()) throw fail("linear part vanishes");
    for (auto& v : k) v = Int::divexact(v, content);
    content_ = RingElem::from_int(ring, content);
    if (!content_.is_regular()) throw fail("content " + content.to_string() + " is not regular");

    identity_ = k[0].is_one();
    for (int i = 1; i < n && identity_; ++i) identity_ = k[static_cast<std::size_t>(i)].is_zero();
    TruncSeries gy = g.truncated(max_degree_);
    if (!identity_) {
        IntMatrix U = complete_unimodular_row(k);
        IntMatrix Uinv = unimodular_inverse(U);
        to_y_ = linear_substitution(ring, Uinv, max_degree_);
        to_x_ = linear_substitution(ring, U, max_degree_);
        gy = to_y_.apply(gy);
    }
    for (int d = 0; d <= gy.prec(); ++d) g_parts_.push_back(gy.homogeneous_part(d));
}

std::optional<TruncSeries> LinearDivider::solve(const TruncSeries& f, int* failed_degree) const {
    RingPtr ring = g_.ring();
    const int n = g_.nvars();
    const int p = std::min({f.prec(), max_degree_});
    check_prec(p - 1, "exact_div_linear");
    TruncSeries fy = f.truncated(p);
    if (!identity_) fy = to_y_.apply(fy);
    auto idx = MonomialIndex::get(n, p);
    std::vector<SeriesTerm> q;  // grlex sorted as degrees are produced in order
    Mono y1 = Mono::var(0);
    for (int d = 0; d <= p; ++d) {
        std::size_t lo = idx->degree_begin(d);
        std::size_t hi = idx->degree_begin(d + 1);
        std::vector<RingElem> rhs(hi - lo, RingElem::zero(ring));
        for (const auto& t : fy.terms()) {
            if (t.mono.degree() == d) rhs[static_cast<std::size_t>(idx->rank(t.mono)) - lo] += t.coef;
        }
        for (const auto& qt : q) {
            int k = d - qt.mono.degree();
            if (k < 2) continue;
            if (k >= static_cast<int>(g_parts_.size())) continue;
            for (const auto& gt : g_parts_[static_cast<std::size_t>(k)].terms()) {
                rhs[static_cast<std::size_t>(idx->rank(qt.mono * gt.mono)) - lo] -= qt.coef * gt.coef;
            }
        }
        for (std::size_t r = 0; r < rhs.size(); ++r) {
            if (rhs[r].is_zero()) continue;
            Mono m = idx->mono(lo + r);
            if (m.exp(0) == 0 || d == 0) {
                *failed_degree = d;
                return std::nullopt;
            }
            RingElem c = rhs[r];
            if (!content_.is_one()) {
                auto qc = c.try_exact_div(content_);
                if (!qc) {
                    *failed_degree = d;
                    return std::nullopt;
                }
                c = std::move(*qc);
            }
            q.push_back(SeriesTerm{y1.quotient_of(m), std::move(c)});
        }
    }
    TruncSeries qs = TruncSeries::from_sorted_terms(ring, n, p - 1, std::move(q));
    if (!identity_) qs = to_x_.apply(qs);
    return qs;
}

std::optional<TruncSeries> LinearDivider::try_divide(const TruncSeries& f) const {
    if (f.ring() != g_.ring() || f.nvars() != g_.nvars()) throw config_error("DescriptorMismatch", "division operands disagree");
    int failed = -1;
    auto q = solve(f, &failed);
    if (!q) return std::nullopt;
    ++g_performed;
    if (g_verify) {
        int p = q->prec() + 1;
        TruncSeries back = mul_tracked(*q, g_, p);
        if (!back.agrees_with(f, p)) throw std::logic_error("multiply-back failed in exact_div_linear");
        ++g_verified;
    }
    return q;
}

TruncSeries LinearDivider::divide(const TruncSeries& f) const {
    auto q = try_divide(f);
    if (!q) {
        int failed = -1;
        (void)solve(f, &failed);
        throw hypothesis_error("NotDivisible", "series is not divisible by " + g_.to_string() + " (degree " + std::to_string(failed) + ")",
                               {{"degree", std::to_string(failed)}, {"divisor", g_.to_string()}});
    }
    return *q;
}

}  // namespace demazure
