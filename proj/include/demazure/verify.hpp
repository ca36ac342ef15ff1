#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demazure/dualalgebra.hpp"

namespace demazure {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool passed() const;
    int failures() const;
    void add(std::string name, bool ok, std::string detail = {});
    void merge(const SuiteReport& other);
};

// X_i q = Delta_i(q) + s_i(q) X_i on seeded q, X_i^2 = kappa_i X_i, and the
// braid deviations: certified in S with a zero re-expansion residual.
SuiteReport verify_relations(const DemazureAlgebra& d, uint64_t seed, int samples = 20);
// X_{I_v} supported on {w <= v} with diagonal (-1)^l prod x_alpha^{-1}.
SuiteReport verify_triangularity(const DemazureAlgebra& d);
// Formula table against the Q_W route, counit rows and cocommutativity.
SuiteReport verify_coproduct(const DemazureAlgebra& d, const CoproductTable& table);
SuiteReport verify_coassociativity(const DemazureAlgebra& d, const CoproductTable& table);
// Delta_I(uv) = sum p^I_{E1,E2} Delta_{I|E1}(u) Delta_{I|E2}(v) for all words
// of length <= max_len.
SuiteReport verify_product_formula(const DemazureAlgebra& d, uint64_t seed, int max_len = 4, int pairs = 10);
// Unit, commutativity and associativity of the dual product on basis
// elements, and ev(s1) ev(s2) = ev(s1 s2) on seeded pairs.
SuiteReport verify_dual(const DualAlgebra& dual, uint64_t seed, int pairs = 20, bool triples = true);
SuiteReport verify_augmented(const DemazureAlgebra& d, const CoproductTable& table, uint64_t seed);

const std::vector<std::string>& verify_suite_names();
// One named suite, or "all".
SuiteReport run_verify_suite(const std::string& name, std::shared_ptr<const DemazureAlgebra> d, uint64_t seed);

}  // namespace demazure
