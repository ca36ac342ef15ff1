#include "demazure/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "demazure/error.hpp"

namespace demazure {

namespace {

void check_type(char type, int rank) {
    bool ok = false;
    switch (type) {
        case 'A':
        case 'B':
        case 'C':
            ok = rank >= 1;
            break;
        case 'D':
            ok = rank >= 3;
            break;
        case 'E':
            ok = rank >= 6 && rank <= 8;
            break;
        case 'F':
            ok = rank == 4;
            break;
        case 'G':
            ok = rank == 2;
            break;
        default:
            break;
    }
    if (!ok) throw config_error("UnknownType", std::string("unknown Dynkin type ") + type + std::to_string(rank));
}

std::vector<int64_t> symmetrizer(char type, int n) {
    std::vector<int64_t> d(static_cast<std::size_t>(n), 1);
    if (type == 'B') {
        for (int i = 0; i + 1 < n; ++i) d[static_cast<std::size_t>(i)] = 2;
    } else if (type == 'C' && n >= 2) {
        d[static_cast<std::size_t>(n - 1)] = 2;
    } else if (type == 'F') {
        d = {2, 2, 1, 1};
    } else if (type == 'G') {
        d = {1, 3};
    }
    return d;
}

Weight to_weight(const std::vector<Int>& v) {
    Weight out;
    for (const auto& x : v) out.push_back(x.to_int64());
    return out;
}

}  // namespace

IntMatrix cartan_matrix(char type, int n) {
    check_type(type, n);
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = Int(2);
    auto link = [&](int i, int j, int aij, int aji) {
        a(i, j) = Int(aij);
        a(j, i) = Int(aji);
    };
    switch (type) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1, -1);
            break;
        case 'B':
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
            if (n >= 2) link(n - 2, n - 1, -1, -2);
            break;
        case 'C':
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
            if (n >= 2) link(n - 2, n - 1, -2, -1);
            break;
        case 'D':
            for (int i = 0; i + 3 < n; ++i) link(i, i + 1, -1, -1);
            link(n - 3, n - 2, -1, -1);
            link(n - 3, n - 1, -1, -1);
            break;
        case 'E':
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1, -1);
            break;
        case 'F':
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
            break;
        case 'G':
            link(0, 1, -3, -1);
            break;
        default:
            break;
    }
    return a;
}

Int expected_cartan_determinant(char type, int rank) {
    check_type(type, rank);
    switch (type) {
        case 'A':
            return Int(rank + 1);
        case 'B':
        case 'C':
            return Int(rank == 1 ? 2 : 2);
        case 'D':
            return Int(4);
        case 'E':
            return Int(rank == 6 ? 3 : rank == 7 ? 2 : 1);
        default:
            return Int(1);
    }
}

std::vector<int> torsion_primes(char type, int rank) {
    check_type(type, rank);
    switch (type) {
        case 'B':
            return rank >= 3 ? std::vector<int>{2} : std::vector<int>{};
        case 'D':
            return rank >= 4 ? std::vector<int>{2} : std::vector<int>{};
        case 'G':
            return {2};
        case 'F':
        case 'E':
            return rank == 8 ? std::vector<int>{2, 3, 5} : std::vector<int>{2, 3};
        default:
            return {};
    }
}

RootDatumSpec RootDatumSpec::parse(const std::string& type, const std::string& lattice) {
    RootDatumSpec spec;
    std::string t;
    for (char c : type) {
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    std::size_t pos = 0;
    while (pos < t.size()) {
        char letter = t[pos++];
        std::size_t start = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        if (start == pos) throw config_error("UnknownType", "cannot parse root system type '" + type + "'");
        int rank = std::stoi(t.substr(start, pos - start));
        check_type(letter, rank);
        spec.components.emplace_back(letter, rank);
        if (pos < t.size()) {
            if (t[pos] != 'X' && t[pos] != '+') throw config_error("UnknownType", "cannot parse root system type '" + type + "'");
            ++pos;
        }
    }
    if (spec.components.empty()) throw config_error("UnknownType", "empty root system type");
    if (lattice == "sc" || lattice == "simply_connected") {
        spec.lattice = LatticeKind::SimplyConnected;
    } else if (lattice == "adj" || lattice == "adjoint") {
        spec.lattice = LatticeKind::Adjoint;
    } else {
        throw config_error("InvalidLattice", "unknown lattice '" + lattice + "'");
    }
    return spec;
}

std::string RootDatumSpec::type_name() const {
    std::string out;
    for (const auto& [c, r] : components) {
        if (!out.empty()) out += "x";
        out += c + std::to_string(r);
    }
    return out;
}

std::string RootDatumSpec::lattice_name() const {
    switch (lattice) {
        case LatticeKind::Adjoint:
            return "adj";
        case LatticeKind::SimplyConnected:
            return "sc";
        case LatticeKind::Intermediate:
            return "custom";
    }
    return "?";
}

std::shared_ptr<const RootDatum> RootDatum::build(const RootDatumSpec& spec) {
    auto d = std::make_shared<RootDatum>();
    d->spec_ = spec;
    int n = 0;
    for (const auto& [t, r] : spec.components) {
        check_type(t, r);
        n += r;
    }
    if (n == 0) throw config_error("UnknownType", "empty root system");
    d->rank_ = n;
    d->cartan_ = IntMatrix(n, n);
    int off = 0;
    for (const auto& [t, r] : spec.components) {
        IntMatrix c = cartan_matrix(t, r);
        auto sym = symmetrizer(t, r);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) d->cartan_(off + i, off + j) = c(i, j);
            d->sym_.push_back(sym[static_cast<std::size_t>(i)]);
        }
        off += r;
    }
    const IntMatrix& A = d->cartan_;
    auto aij = [&](int i, int j) { return A(i, j).to_int64(); };

    // Lattice basis in weight coordinates.
    d->basis_ = IntMatrix(n, n);
    if (spec.lattice == LatticeKind::SimplyConnected) {
        d->basis_ = IntMatrix::identity(n);
    } else if (spec.lattice == LatticeKind::Adjoint) {
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) d->basis_(j, i) = A(i, j);
        }
    } else {
        if (static_cast<int>(spec.basis.size()) != n) throw config_error("InvalidLattice", "basis must have one row per simple root");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(spec.basis[static_cast<std::size_t>(i)].size()) != n) {
                throw config_error("InvalidLattice", "basis rows must have rank entries");
            }
            for (int j = 0; j < n; ++j) d->basis_(i, j) = Int(spec.basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        if (determinant(d->basis_).is_zero()) throw config_error("InvalidLattice", "basis is degenerate");
    }

    // Roots in simple-root coordinates by closure under simple reflections.
    std::set<Weight> seen;
    std::deque<Weight> queue;
    for (int i = 0; i < n; ++i) {
        Weight e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 1;
        if (seen.insert(e).second) queue.push_back(e);
    }
    while (!queue.empty()) {
        Weight c = queue.front();
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            int64_t p = 0;
            for (int j = 0; j < n; ++j) p += aij(i, j) * c[static_cast<std::size_t>(j)];
            Weight r = c;
            r[static_cast<std::size_t>(i)] -= p;
            if (seen.insert(r).second) queue.push_back(r);
        }
    }
    std::vector<Weight> pos;
    for (const auto& c : seen) {
        if (std::all_of(c.begin(), c.end(), [](int64_t v) { return v >= 0; })) pos.push_back(c);
    }
    if (2 * pos.size() != seen.size()) throw std::logic_error("root system is not symmetric");
    auto height = [](const Weight& c) {
        int64_t h = 0;
        for (auto v : c) h += v;
        return h;
    };
    std::sort(pos.begin(), pos.end(), [&](const Weight& a, const Weight& b) {
        if (height(a) != height(b)) return height(a) < height(b);
        return a > b;
    });
    d->npos_ = static_cast<int>(pos.size());
    IntMatrix basisT = d->basis_.transpose();
    auto make_root = [&](const Weight& c, int index, bool positive) {
        Root r;
        r.index = index;
        r.positive = positive;
        r.root_coords = c;
        r.height = static_cast<int>(height(c));
        r.weight_coords.assign(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) r.weight_coords[static_cast<std::size_t>(i)] += aij(i, j) * c[static_cast<std::size_t>(j)];
        }
        int64_t norm2 = 0;  // 2 (alpha, alpha)
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                norm2 += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)] * d->sym_[static_cast<std::size_t>(i)] * aij(i, j);
            }
        }
        for (int i = 0; i < n; ++i) {
            int64_t num = 2 * c[static_cast<std::size_t>(i)] * d->sym_[static_cast<std::size_t>(i)];
            if (num % norm2 != 0) throw std::logic_error("non-integral coroot");
            r.coroot_coords.push_back(num / norm2);
        }
        std::vector<Int> w(r.weight_coords.begin(), r.weight_coords.end());
        auto s = solve_linear(basisT, w);
        if (!s.solvable) {
            throw config_error("InvalidLattice", "lattice does not contain the root lattice",
                               {{"failed_inclusion", "root lattice in lattice"}});
        }
        r.lattice_coords = to_weight(s.x);
        if (positive && r.height == 1) {
            for (int i = 0; i < n; ++i) {
                if (c[static_cast<std::size_t>(i)] == 1) r.simple = i;
            }
        }
        return r;
    };
    for (int k = 0; k < d->npos_; ++k) d->roots_.push_back(make_root(pos[static_cast<std::size_t>(k)], k, true));
    for (int k = 0; k < d->npos_; ++k) {
        Weight neg = pos[static_cast<std::size_t>(k)];
        for (auto& v : neg) v = -v;
        d->roots_.push_back(make_root(neg, d->npos_ + k, false));
    }
    d->simple_.assign(static_cast<std::size_t>(n), -1);
    for (const auto& r : d->roots_) {
        if (r.simple >= 0) d->simple_[static_cast<std::size_t>(r.simple)] = r.index;
        d->by_lattice_[r.lattice_coords] = r.index;
    }
    // Every root pairs to 2 with its own coroot.
    for (const auto& r : d->roots_) {
        if (d->pairing(r.index, r.lattice_coords) != 2) throw std::logic_error("coroot pairing is not 2");
    }
    return d;
}

int RootDatum::find_root(const Weight& lattice_coords) const {
    auto it = by_lattice_.find(lattice_coords);
    return it == by_lattice_.end() ? -1 : it->second;
}

Weight RootDatum::to_weight_coords(const Weight& lambda) const {
    Weight w(static_cast<std::size_t>(rank_), 0);
    for (int k = 0; k < rank_; ++k) {
        if (lambda[static_cast<std::size_t>(k)] == 0) continue;
        for (int i = 0; i < rank_; ++i) w[static_cast<std::size_t>(i)] += lambda[static_cast<std::size_t>(k)] * basis_(k, i).to_int64();
    }
    return w;
}

std::optional<Weight> RootDatum::from_weight_coords(const Weight& w) const {
    std::vector<Int> b(w.begin(), w.end());
    auto s = solve_linear(basis_.transpose(), b);
    if (!s.solvable) return std::nullopt;
    return to_weight(s.x);
}

int64_t RootDatum::pairing(int root, const Weight& lambda) const {
    Weight w = to_weight_coords(lambda);
    int64_t out = 0;
    const auto& cc = roots_[static_cast<std::size_t>(root)].coroot_coords;
    for (int i = 0; i < rank_; ++i) out += cc[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    return out;
}

Weight RootDatum::reflect(int root, const Weight& lambda) const {
    int64_t p = pairing(root, lambda);
    Weight out = lambda;
    const auto& a = roots_[static_cast<std::size_t>(root)].lattice_coords;
    for (int i = 0; i < rank_; ++i) out[static_cast<std::size_t>(i)] -= p * a[static_cast<std::size_t>(i)];
    return out;
}

IntMatrix RootDatum::reflection_action(int root) const {
    if (root < 0 || root >= static_cast<int>(roots_.size())) throw config_error("NotARoot", "no root with index " + std::to_string(root));
    IntMatrix S(rank_, rank_);
    for (int k = 0; k < rank_; ++k) {
        Weight e(static_cast<std::size_t>(rank_), 0);
        e[static_cast<std::size_t>(k)] = 1;
        Weight img = reflect(root, e);
        for (int j = 0; j < rank_; ++j) S(j, k) = Int(img[static_cast<std::size_t>(j)]);
    }
    return S;
}

std::optional<Weight> RootDatum::fundamental_weight(int i) const {
    Weight e(static_cast<std::size_t>(rank_), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return from_weight_coords(e);
}

Int RootDatum::cartan_determinant() const { return determinant(cartan_); }

// ---------------------------------------------------------------------------

namespace {

std::vector<int> key_of(const std::vector<int>& perm, const RootDatum& d) {
    std::vector<int> key;
    for (int i = 0; i < d.rank(); ++i) key.push_back(perm[static_cast<std::size_t>(d.simple_root(i))]);
    return key;
}

}  // namespace

int WeylGroup::lookup(const std::vector<int>& perm) const {
    auto it = by_key_.find(key_of(perm, *datum_));
    if (it == by_key_.end()) throw std::logic_error("Weyl element not found");
    return it->second;
}

std::shared_ptr<const WeylGroup> WeylGroup::enumerate(DatumPtr datum, std::size_t cap) {
    auto g = std::make_shared<WeylGroup>();
    g->datum_ = datum;
    const RootDatum& d = *datum;
    const int n = d.rank();
    const int nroots = static_cast<int>(d.roots().size());
    auto perm_of = [&](const IntMatrix& M) {
        std::vector<int> perm(static_cast<std::size_t>(nroots));
        for (int r = 0; r < nroots; ++r) {
            const Weight& a = d.root(r).lattice_coords;
            std::vector<Int> ai(a.begin(), a.end());
            perm[static_cast<std::size_t>(r)] = d.find_root(to_weight(M.apply(ai)));
        }
        return perm;
    };
    std::vector<IntMatrix> gens;
    std::vector<std::vector<int>> gen_perms;
    for (int i = 0; i < n; ++i) {
        gens.push_back(d.reflection_action(d.simple_root(i)));
        gen_perms.push_back(perm_of(gens.back()));
    }
    // Breadth-first closure under left multiplication by simple reflections.
    std::vector<IntMatrix> mats{IntMatrix::identity(n)};
    std::vector<std::vector<int>> perms{perm_of(mats[0])};
    std::map<std::vector<int>, int> keys{{key_of(perms[0], d), 0}};
    for (std::size_t k = 0; k < mats.size(); ++k) {
        for (int i = 0; i < n; ++i) {
            std::vector<int> p(static_cast<std::size_t>(nroots));
            for (int r = 0; r < nroots; ++r) p[static_cast<std::size_t>(r)] = gen_perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(perms[k][static_cast<std::size_t>(r)])];
            auto key = key_of(p, d);
            if (keys.count(key) != 0) continue;
            if (mats.size() >= cap) {
                throw config_error("GroupTooLarge", "Weyl group exceeds the configured cap of " + std::to_string(cap),
                                   {{"cap", std::to_string(cap)}});
            }
            keys.emplace(key, static_cast<int>(mats.size()));
            mats.push_back(gens[static_cast<std::size_t>(i)] * mats[k]);
            perms.push_back(std::move(p));
        }
    }
    const int N = static_cast<int>(mats.size());
    const int npos = d.num_positive();
    std::vector<int> len(static_cast<std::size_t>(N), 0);
    for (int w = 0; w < N; ++w) {
        for (int r = 0; r < npos; ++r) {
            if (perms[static_cast<std::size_t>(w)][static_cast<std::size_t>(r)] >= npos) ++len[static_cast<std::size_t>(w)];
        }
    }
    auto left_mul = [&](int i, int w) {
        std::vector<int> p(static_cast<std::size_t>(nroots));
        for (int r = 0; r < nroots; ++r) p[static_cast<std::size_t>(r)] = gen_perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(perms[static_cast<std::size_t>(w)][static_cast<std::size_t>(r)])];
        return keys.at(key_of(p, d));
    };
    // Canonical words in order of increasing length.
    std::vector<int> order(static_cast<std::size_t>(N));
    for (int w = 0; w < N; ++w) order[static_cast<std::size_t>(w)] = w;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return len[static_cast<std::size_t>(a)] < len[static_cast<std::size_t>(b)]; });
    std::vector<std::vector<int>> words(static_cast<std::size_t>(N));
    for (int w : order) {
        if (len[static_cast<std::size_t>(w)] == 0) continue;
        for (int i = 0; i < n; ++i) {
            int sw = left_mul(i, w);
            if (len[static_cast<std::size_t>(sw)] < len[static_cast<std::size_t>(w)]) {
                words[static_cast<std::size_t>(w)] = {i};
                const auto& rest = words[static_cast<std::size_t>(sw)];
                words[static_cast<std::size_t>(w)].insert(words[static_cast<std::size_t>(w)].end(), rest.begin(), rest.end());
                break;
            }
        }
    }
    // Final indexing: by length, then canonical word.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (len[static_cast<std::size_t>(a)] != len[static_cast<std::size_t>(b)]) return len[static_cast<std::size_t>(a)] < len[static_cast<std::size_t>(b)];
        return words[static_cast<std::size_t>(a)] < words[static_cast<std::size_t>(b)];
    });
    for (int idx = 0; idx < N; ++idx) {
        int w = order[static_cast<std::size_t>(idx)];
        g->matrices_.push_back(mats[static_cast<std::size_t>(w)]);
        g->perms_.push_back(perms[static_cast<std::size_t>(w)]);
        g->length_.push_back(len[static_cast<std::size_t>(w)]);
        g->words_.push_back(words[static_cast<std::size_t>(w)]);
        g->by_key_.emplace(key_of(perms[static_cast<std::size_t>(w)], d), idx);
    }
    g->inverse_.resize(static_cast<std::size_t>(N));
    for (int w = 0; w < N; ++w) {
        std::vector<int> inv(static_cast<std::size_t>(nroots));
        for (int r = 0; r < nroots; ++r) inv[static_cast<std::size_t>(g->perms_[static_cast<std::size_t>(w)][static_cast<std::size_t>(r)])] = r;
        g->inverse_[static_cast<std::size_t>(w)] = g->lookup(inv);
    }
    for (int i = 0; i < n; ++i) g->simple_refl_.push_back(g->lookup(gen_perms[static_cast<std::size_t>(i)]));
    // Bruhat order: for a left descent s of v, u <= v iff min(u, su) <= sv.
    g->bruhat_.assign(static_cast<std::size_t>(N) * static_cast<std::size_t>(N), 0);
    g->bruhat_[0] = 1;
    for (int v = 1; v < N; ++v) {
        int s = g->words_[static_cast<std::size_t>(v)][0];
        int sv = g->multiply(g->simple_refl_[static_cast<std::size_t>(s)], v);
        for (int u = 0; u < N; ++u) {
            int su = g->multiply(g->simple_refl_[static_cast<std::size_t>(s)], u);
            int m = g->length_[static_cast<std::size_t>(su)] < g->length_[static_cast<std::size_t>(u)] ? su : u;
            g->bruhat_[static_cast<std::size_t>(u) * static_cast<std::size_t>(N) + static_cast<std::size_t>(v)] =
                g->bruhat_[static_cast<std::size_t>(m) * static_cast<std::size_t>(N) + static_cast<std::size_t>(sv)];
        }
    }
    return g;
}

std::string WeylGroup::word_string(int w) const { return word_to_string(word(w)); }

Weight WeylGroup::act(int w, const Weight& lambda) const {
    std::vector<Int> l(lambda.begin(), lambda.end());
    return to_weight(matrices_[static_cast<std::size_t>(w)].apply(l));
}

int WeylGroup::multiply(int u, int v) const {
    const auto& pu = perms_[static_cast<std::size_t>(u)];
    const auto& pv = perms_[static_cast<std::size_t>(v)];
    std::vector<int> key;
    for (int i = 0; i < datum_->rank(); ++i) key.push_back(pu[static_cast<std::size_t>(pv[static_cast<std::size_t>(datum_->simple_root(i))])]);
    return by_key_.at(key);
}

int WeylGroup::reflection(int root) const {
    const RootDatum& d = *datum_;
    IntMatrix S = d.reflection_action(root);
    std::vector<int> key;
    for (int i = 0; i < d.rank(); ++i) {
        const Weight& a = d.root(d.simple_root(i)).lattice_coords;
        std::vector<Int> ai(a.begin(), a.end());
        key.push_back(d.find_root(to_weight(S.apply(ai))));
    }
    return by_key_.at(key);
}

bool WeylGroup::is_left_descent(int w, int i) const {
    // w^{-1}(alpha_i) < 0
    return act_on_root(inverse(w), datum_->simple_root(i)) >= datum_->num_positive();
}

bool WeylGroup::is_right_descent(int w, int i) const { return act_on_root(w, datum_->simple_root(i)) >= datum_->num_positive(); }

int WeylGroup::word_to_element(const std::vector<int>& word) const {
    int w = identity();
    for (int i : word) {
        if (i < 0 || i >= datum_->rank()) throw config_error("InvalidWord", "letter out of range in word");
        w = multiply(w, simple_refl_[static_cast<std::size_t>(i)]);
    }
    return w;
}

bool WeylGroup::is_reduced(const std::vector<int>& word) const { return length(word_to_element(word)) == static_cast<int>(word.size()); }

std::vector<int> WeylGroup::inversion_set(int v) const {
    std::vector<int> out;
    int vinv = inverse(v);
    for (int b = 0; b < datum_->num_positive(); ++b) {
        if (act_on_root(vinv, b) >= datum_->num_positive()) out.push_back(b);
    }
    return out;
}

bool WeylGroup::bruhat_leq_subword(int u, int v) const {
    const auto& w = word(v);
    const std::size_t L = w.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << L); ++mask) {
        std::vector<int> sub;
        for (std::size_t k = 0; k < L; ++k) {
            if ((mask >> k) & 1U) sub.push_back(w[k]);
        }
        if (word_to_element(sub) == u) return true;
    }
    return false;
}

std::optional<int> WeylGroup::parse_word(const std::string& text) const {
    try {
        return word_to_element(parse_word_sequence(text, datum_->rank()));
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::vector<int> parse_word_sequence(const std::string& text, int rank) {
    std::vector<int> out;
    std::string t;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']' && c != '(' && c != ')') t.push_back(c);
    }
    if (t.empty() || t == "e") return out;
    bool commas = t.find(',') != std::string::npos;
    std::size_t pos = 0;
    while (pos < t.size()) {
        std::size_t end = commas ? t.find(',', pos) : pos + 1;
        if (end == std::string::npos) end = t.size();
        std::string tok = t.substr(pos, end - pos);
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
            throw config_error("InvalidWord", "cannot parse word '" + text + "'");
        }
        int letter = std::stoi(tok);
        if (letter < 1 || letter > rank) throw config_error("InvalidWord", "letter " + tok + " out of range 1.." + std::to_string(rank));
        out.push_back(letter - 1);
        pos = commas ? end + 1 : end;
    }
    return out;
}

std::string word_to_string(const std::vector<int>& word) {
    if (word.empty()) return "e";
    std::string out;
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (k > 0) out += ",";
        out += std::to_string(word[k] + 1);
    }
    return out;
}

}  // namespace demazure
