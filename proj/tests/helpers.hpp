#pragma once

#include "dlv/level.hpp"

#include <random>

namespace dlv::testing {

// Random element sampling plus small canned rings used across the suites.
inline RingPtr ring_f3z() { return make_ring(3, 1, 1, 2); }  // F_3[z]/(z^2)
inline RingPtr ring_f2z() { return make_ring(2, 1, 1, 2); }  // F_2[z]/(z^2)
inline RingPtr ring_f4() { return make_ring(2, 2, 1, 1); }   // F_4
inline RingPtr ring_f9() { return make_ring(3, 1, 2, 1); }   // F_9 over F_3

inline SkewPoly counterexample_eT(const RingPtr& R) {
    // e_T = z + z*tau + tau^2
    return SkewPoly(R, {R->zeta(), R->zeta(), R->one()});
}

inline DrinfeldModule counterexample_module(uint32_t p) {
    RingPtr R = make_ring(p, 1, 1, 2);
    return make_drinfeld(counterexample_eT(R));
}

// Carlitz-type rank-1 module e_T = gamma + c1 tau.
inline DrinfeldModule rank1_module(const RingPtr& R, const Elem& gamma, const Elem& c1) {
    return make_drinfeld(SkewPoly(R, {gamma, c1}));
}

inline SkewPoly random_skew(const RingPtr& R, std::mt19937_64& rng, size_t deg, bool unit_lead) {
    std::vector<Elem> c(deg + 1);
    for (size_t i = 0; i <= deg; ++i) c[i] = R->random(rng);
    if (unit_lead) c[deg] = R->random_unit(rng);
    return SkewPoly(R, std::move(c));
}

// Random module of the given rank; gamma_kind: 0 -> unit, 1 -> zero, 2 -> nilpotent.
inline DrinfeldModule random_module(const RingPtr& R, std::mt19937_64& rng, uint32_t rank,
                                    int gamma_kind) {
    std::vector<Elem> c(rank + 1);
    for (size_t i = 1; i < rank; ++i) c[i] = R->random(rng);
    c[rank] = R->random_unit(rng);
    switch (gamma_kind) {
        case 0: c[0] = R->random_unit(rng); break;
        case 1: c[0] = R->zero(); break;
        default: {
            Elem z = R->random(rng);
            c[0] = R->sub(z, R->zeta_component(z, 0)); // strip the field part
            break;
        }
    }
    return make_drinfeld(SkewPoly(R, std::move(c)));
}

// Gamma_0 flag with a generator witness over the splitting extension of the
// etale part. gens mixes etale points (independent) with zeros for the
// connected directions. Returns nullopt if the point search fails.
inline std::optional<Gamma0Flag> witness_flag(const DrinfeldModule& E, uint32_t n,
                                              std::mt19937_64& rng, uint32_t s_max = 16) {
    uint32_t r = E.rank;
    uint32_t h = E.away_from_p() ? 0 : height(E);
    size_t target = 1;
    for (uint32_t i = 0; i < n * (r - h); ++i) target *= E.ring->q();
    uint32_t s_split = 0;
    for (uint32_t s = 1; s <= s_max && !s_split; ++s)
        if (reduced_kernel_count(E.ring, action_Tn(E, n), s) == target) s_split = s;
    if (!s_split) return std::nullopt;
    std::vector<Elem> points = kernel_points_at(E.ring, action_Tn(E, n), s_split);
    DrinfeldModule Es = extend_module(E, s_split);
    const RingPtr& S = Es.ring;
    // points of exact order T^n
    std::vector<Elem> exact;
    for (const Elem& P : points)
        if (n == 1 ? !S->is_zero(P) : !S->is_zero(eval_Tj(Es, n - 1, P))) exact.push_back(P);
    MShape shape(std::vector<uint32_t>(r - 1, n));
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Elem> gens;
        size_t nonzero = exact.empty() ? 0 : std::min<size_t>(r - 1, 1 + rng() % (r - 1));
        for (size_t i = 0; i < size_t(r) - 1; ++i)
            gens.push_back(i < nonzero ? exact[rng() % exact.size()] : S->zero());
        MStructure iota;
        try {
            iota = make_mstructure(shape, Es, gens);
        } catch (const error&) {
            continue;
        }
        if (!is_m_structure(iota)) continue;
        std::vector<RPoly> divisors;
        bool ok = true;
        for (uint32_t i = 1; i <= r - 1 && ok; ++i) {
            std::vector<uint32_t> caps(r - 1, 0);
            for (uint32_t j = 0; j < i; ++j) caps[j] = n;
            RPoly g = divisor_of(iota, caps);
            if (!g.is_additive() || !divisor_e_stable(Es, g)) ok = false;
            else divisors.push_back(g);
        }
        if (!ok) continue;
        try {
            return make_gamma0(Es, n, std::move(divisors), iota);
        } catch (const error&) {
            continue;
        }
    }
    return std::nullopt;
}

} // namespace dlv::testing
