#include "dlv/drinfeld.hpp"

namespace dlv {

DrinfeldModule make_drinfeld(const SkewPoly& eT) {
    const RingPtr& R = eT.ring();
    if (eT.degree() < 1) fail(errc::dimension_mismatch, "e_T must have tau-degree >= 1");
    if (!R->is_unit(eT.lead()))
        fail(errc::non_unit_leading_coeff, "leading coefficient of e_T must be a unit");
    DrinfeldModule E;
    E.ring = R;
    E.rank = uint32_t(eT.degree());
    E.eT = eT;
    E.gammaT = eT.coeff(0);
    return E;
}

SkewPoly action(const DrinfeldModule& E, const std::vector<gf>& a) {
    const RingPtr& R = E.ring;
    SkewPoly acc = SkewPoly::zero(R);
    SkewPoly pw = SkewPoly::constant(R, R->one());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i]) acc = acc + SkewPoly::constant(R, R->embed_gf(a[i])) * pw;
        if (i + 1 < a.size()) pw = pw * E.eT;
    }
    return acc;
}

SkewPoly action_Tn(const DrinfeldModule& E, uint32_t n) {
    SkewPoly acc = SkewPoly::constant(E.ring, E.ring->one());
    for (uint32_t i = 0; i < n; ++i) acc = acc * E.eT;
    return acc;
}

RPoly torsion_divisor(const DrinfeldModule& E, uint32_t n) {
    if (n < 1) fail(errc::dimension_mismatch, "torsion level must be >= 1");
    RPoly f = action_Tn(E, n).to_additive().make_monic();
    if (n > 1) {
        RPoly f1 = action_Tn(E, 1).to_additive().make_monic();
        if (!f1.divides(f)) fail(errc::not_divisible, "internal: f_1 does not divide f_n");
    }
    return f;
}

uint32_t height(const DrinfeldModule& E) {
    if (!E.ring->is_field()) fail(errc::not_a_field, "height is defined over fields only");
    if (!E.ring->is_zero(E.gammaT)) return 0;
    for (size_t i = 0; i <= size_t(E.eT.degree()); ++i)
        if (!E.ring->is_zero(E.eT.coeff(i))) return uint32_t(i);
    return E.rank;
}

PointSet torsion_points(const DrinfeldModule& E, uint32_t n, uint32_t s_max) {
    return kernel_points(E.ring, action_Tn(E, n), s_max);
}

Elem eval_action(const DrinfeldModule& E, const std::vector<gf>& a, const Elem& P) {
    return action(E, a).eval_additive(P);
}

Elem eval_Tj(const DrinfeldModule& E, uint32_t j, const Elem& P) {
    Elem out = P;
    for (uint32_t t = 0; t < j; ++t) out = E.eT.eval_additive(out);
    return out;
}

bool Isogeny::verify() const {
    return psi * source.eT == target.eT * psi;
}

std::pair<DrinfeldModule, Isogeny> try_quotient(const DrinfeldModule& E, const RPoly& g) {
    if (!g.is_monic()) fail(errc::not_monic, "kernel divisor must be monic");
    if (!g.is_additive()) fail(errc::not_additive, "kernel divisor must be additive");
    SkewPoly psi = skew_of_additive(g);
    if (psi.degree() == 0) {
        Isogeny id{E, E, SkewPoly::constant(E.ring, E.ring->one())};
        return {E, id};
    }
    SkewPoly h = psi * E.eT;
    auto [quot, rem] = h.right_divmod(psi);
    if (!rem.is_zero())
        fail(errc::kernel_not_stable, "divisor does not cut out a module subscheme");
    DrinfeldModule out = make_drinfeld(quot);
    if (out.rank != E.rank) fail(errc::dimension_mismatch, "internal: quotient changed the rank");
    return {out, Isogeny{E, out, psi}};
}

DrinfeldModule extend_module(const DrinfeldModule& E, uint32_t s) {
    RingPtr ext = extension_of(E.ring, s);
    std::vector<Elem> c;
    for (const Elem& e : E.eT.coeffs()) c.push_back(ext->embed_base(e));
    return make_drinfeld(SkewPoly(ext, std::move(c)));
}

} // namespace dlv
