#pragma once

#include "dlv/roots.hpp"

namespace dlv {

// Rank-r module datum for A = F_q[T]: e_T of tau-degree exactly r with unit
// leading coefficient; gamma_T = constant coefficient = image of T.
struct DrinfeldModule {
    RingPtr ring;
    uint32_t rank = 0;
    SkewPoly eT;
    Elem gammaT;

    // characteristic divides (T) iff gamma_T is nilpotent
    bool in_char_p() const { return ring->is_nilpotent(gammaT); }
    bool away_from_p() const { return ring->is_unit(gammaT); }
};

DrinfeldModule make_drinfeld(const SkewPoly& eT);

// e_a for a in F_q[T] given by its coefficient list (index = T-degree).
SkewPoly action(const DrinfeldModule& E, const std::vector<gf>& a);
SkewPoly action_Tn(const DrinfeldModule& E, uint32_t n);

// Monic additive polynomial cutting out E[p^n] in A^1; degree q^{nr}.
RPoly torsion_divisor(const DrinfeldModule& E, uint32_t n);

// Over a field in characteristic p: least tau-index with nonzero coefficient
// of e_T; 0 when gamma_T is a unit. NotAField when the ring has nilpotents.
uint32_t height(const DrinfeldModule& E);

// Reduced p^n-torsion points over extensions (stabilized); base ring only.
PointSet torsion_points(const DrinfeldModule& E, uint32_t n, uint32_t s_max = 12);

// e_a(P) as a point operation.
Elem eval_action(const DrinfeldModule& E, const std::vector<gf>& a, const Elem& P);
Elem eval_Tj(const DrinfeldModule& E, uint32_t j, const Elem& P);

struct Isogeny {
    DrinfeldModule source, target;
    SkewPoly psi;
    bool verify() const; // psi * e_T(source) == e_T(target) * psi
};

// Quotient of E by the kernel of the additive monic divisor g; the isogeny is
// the skew polynomial of g. KernelNotStable when g does not cut out a module
// subscheme.
std::pair<DrinfeldModule, Isogeny> try_quotient(const DrinfeldModule& E, const RPoly& g);

// Same module with scalars extended to the degree-s extension of the base.
DrinfeldModule extend_module(const DrinfeldModule& E, uint32_t s);

} // namespace dlv
