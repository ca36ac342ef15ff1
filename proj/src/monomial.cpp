#include "demazure/monomial.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace demazure {

Mono Mono::from_exponents(std::span<const int> exps) {
    if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw std::invalid_argument("too many variables");
    uint64_t bits = 0;
    int total = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0 || exps[i] > 255) throw std::invalid_argument("exponent out of range");
        total += exps[i];
        bits |= static_cast<uint64_t>(exps[i]) << shift(static_cast<int>(i));
    }
    if (total > kMaxDegree) throw std::invalid_argument("monomial degree exceeds supported maximum");
    return Mono(bits);
}

int Mono::degree() const {
    // Byte sum; total degree stays below 256.
    return static_cast<int>((bits_ * 0x0101010101010101ULL) >> 56);
}

bool Mono::divides(Mono o) const {
    for (int i = 0; i < kMaxVars; ++i) {
        if (exp(i) > o.exp(i)) return false;
    }
    return true;
}

std::vector<int> Mono::exponents(int nvars) const {
    std::vector<int> out(static_cast<std::size_t>(nvars));
    for (int i = 0; i < nvars; ++i) out[static_cast<std::size_t>(i)] = exp(i);
    return out;
}

namespace {

void enumerate_degree(int nvars, int degree, int var, std::vector<int>& cur, std::vector<Mono>& out) {
    if (var == nvars - 1) {
        cur[static_cast<std::size_t>(var)] = degree;
        out.push_back(Mono::from_exponents(cur));
        return;
    }
    // Ascending in e_var gives ascending packed order.
    for (int e = 0; e <= degree; ++e) {
        cur[static_cast<std::size_t>(var)] = e;
        enumerate_degree(nvars, degree - e, var + 1, cur, out);
    }
    cur[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

MonomialIndex::MonomialIndex(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
    if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("unsupported variable count");
    if (max_degree < 0 || max_degree > kMaxDegree) throw std::invalid_argument("unsupported degree bound");
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    for (int d = 0; d <= max_degree; ++d) {
        degree_start_.push_back(monos_.size());
        enumerate_degree(nvars, d, 0, cur, monos_);
    }
    degree_start_.push_back(monos_.size());

    radix_ = max_degree + 1;
    double cells = 1.0;
    for (int i = 0; i < nvars; ++i) cells *= radix_;
    if (cells <= 4.0e6) {
        direct_.assign(static_cast<std::size_t>(cells), -1);
        for (std::size_t r = 0; r < monos_.size(); ++r) {
            std::size_t key = 0;
            for (int i = 0; i < nvars; ++i) key = key * static_cast<std::size_t>(radix_) + static_cast<std::size_t>(monos_[r].exp(i));
            direct_[key] = static_cast<int32_t>(r);
        }
    } else {
        hashed_.reserve(monos_.size());
        for (std::size_t r = 0; r < monos_.size(); ++r) hashed_.emplace(monos_[r], static_cast<int32_t>(r));
    }
}

int MonomialIndex::rank(Mono m) const {
    if (!direct_.empty()) {
        std::size_t key = 0;
        int deg = 0;
        for (int i = 0; i < nvars_; ++i) {
            int e = m.exp(i);
            deg += e;
            key = key * static_cast<std::size_t>(radix_) + static_cast<std::size_t>(e);
        }
        if (deg > max_degree_) return -1;
        for (int i = nvars_; i < kMaxVars; ++i) {
            if (m.exp(i) != 0) return -1;
        }
        return direct_[key];
    }
    auto it = hashed_.find(m);
    return it == hashed_.end() ? -1 : it->second;
}

std::shared_ptr<const MonomialIndex> MonomialIndex::get(int nvars, int max_degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialIndex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, max_degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto idx = std::make_shared<const MonomialIndex>(nvars, max_degree);
    cache.emplace(key, idx);
    return idx;
}

std::string mono_to_string(Mono m, int nvars, std::span<const std::string> names) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < nvars; ++i) {
        int e = m.exp(i);
        if (e == 0) continue;
        if (!first) os << '*';
        first = false;
        os << names[static_cast<std::size_t>(i)];
        if (e > 1) os << '^' << e;
    }
    return first ? std::string("1") : os.str();
}

}  // namespace demazure
