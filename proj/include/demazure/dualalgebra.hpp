#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "demazure/demazurealgebra.hpp"
#include "demazure/intlinalg.hpp"

namespace demazure {

// Coordinates on the dual basis X*_{I_w}.
struct DualElem {
    std::map<int, TruncSeries> coords;
    int certified(int cap) const;
};

class DualAlgebra {
public:
    explicit DualAlgebra(std::shared_ptr<const DemazureAlgebra> d);
    DualAlgebra(std::shared_ptr<const DemazureAlgebra> d, CoproductTable table);

    const DemazureAlgebra& demazure() const { return *d_; }
    const FGAContext& ctx() const { return d_->ctx(); }
    const CoproductTable& table() const { return table_; }

    DualElem basis(int w) const;
    DualElem unit() const { return basis(d_->weyl().identity()); }
    DualElem add(const DualElem& a, const DualElem& b) const;
    DualElem scale(const TruncSeries& s, const DualElem& a) const;
    // (ab)_w = sum_{u,v} a_u b_v sigma^{u,v}_w, parallel over w.
    DualElem mul(const DualElem& a, const DualElem& b) const;
    DualElem mul_serial(const DualElem& a, const DualElem& b) const;
    // ev_s: X_{I_w} -> Delta_{I_w}(s).
    DualElem ev(const TruncSeries& s) const;
    // a(d) for d in D_F.
    TruncSeries pair(const DualElem& a, const DFElem& d) const;
    // Agreement up to the smaller certified precision of each coordinate.
    bool equal(const DualElem& a, const DualElem& b) const;

private:
    std::shared_ptr<const DemazureAlgebra> d_;
    CoproductTable table_;
};

struct TorsionResult {
    Int gcd;                         // generator of the image ideal; over Z/m a divisor of m
    std::vector<Mono> monomials;     // degree-N monomials, grlex
    std::vector<Int> values;         // epsilon Delta_{I_0}(m)
    TruncSeries u0;                  // epsilon Delta_{I_0}(u0) = gcd
    int sequences_checked = 0;       // length-N sequences tested for the vanishing property
    bool vanishing_ok = true;
    std::string vanishing_witness;
};

// Requires ctx prec >= N = l(w0) and an Integers or IntegersMod ring.
TorsionResult torsion_gcd(const DemazureAlgebra& d);

struct CharmapResult {
    bool surjective = false;
    Int obstruction;                      // least c with c*e_{w0} in the image; 0 if none
    std::vector<Int> image_invariants;
    TruncSeries u0_prime;                 // epsilon Delta_{I_w}(u0') = delta_{w,w0}
    bool top_degree_solvable = false;     // a solution supported in degree exactly N exists
    // epsilon Delta_{I_v} Delta_{I_w}(u0'), rows v, columns w in canonical order.
    IntMatrix certificate;
    std::vector<int> diagonal;            // column paired with row v: v^{-1} w0
    bool unitriangular = false;
    std::string failure;
};

// Solves over monomials of degree <= N; the certificate needs ctx prec >= 2N.
CharmapResult charmap_surjectivity(const DemazureAlgebra& d);

struct BorelReport {
    bool ok = false;
    IntMatrix epsilon_matrix;  // epsilon of the ev(Delta_{I_v}(u0')) coordinates, rows v
    Int determinant;
    int product_checks = 0;
};

// Throws CertificateFailure when u0' is missing or the matrices fail.
BorelReport borel_presentation_check(const DualAlgebra& dual, const CharmapResult& cm);

}  // namespace demazure
