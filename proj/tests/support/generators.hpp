#pragma once

// Seeded generators for property tests. The value mapping is written out by
// hand so that streams do not depend on the standard library's distributions.

#include <cstdint>
#include <random>
#include <vector>

#include "demazure/powerseries.hpp"

namespace demazure::testgen {

class Gen {
public:
    explicit Gen(uint64_t seed) : rng_(seed) {}
    // Uniform in [lo, hi].
    int64_t range(int64_t lo, int64_t hi) { return lo + static_cast<int64_t>(rng_() % static_cast<uint64_t>(hi - lo + 1)); }
    bool coin() { return (rng_() & 1U) != 0; }
    uint64_t raw() { return rng_(); }

    RingElem scalar(RingPtr r, int span = 4) {
        RingElem c = RingElem::from_int(r, range(-span, span));
        if (r->kind() == RingKind::Poly && coin()) c *= RingElem::variable(r, static_cast<int>(range(0, r->nvars() - 1)));
        return c;
    }

    // Random series with `count` monomial terms of degree in [min_deg, max_deg].
    TruncSeries series(RingPtr r, int nvars, int prec, int count = 6, int min_deg = 0, int max_deg = -1) {
        if (max_deg < 0) max_deg = prec;
        std::vector<SeriesTerm> terms;
        for (int k = 0; k < count; ++k) {
            int d = static_cast<int>(range(min_deg, max_deg));
            std::vector<int> e(static_cast<std::size_t>(nvars), 0);
            for (int j = 0; j < d; ++j) ++e[static_cast<std::size_t>(range(0, nvars - 1))];
            terms.push_back(SeriesTerm{Mono::from_exponents(e), scalar(r)});
        }
        return TruncSeries::from_terms(r, nvars, prec, std::move(terms));
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace demazure::testgen
