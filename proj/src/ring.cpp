#include "dlv/ring.hpp"

#include <algorithm>
#include <sstream>

namespace dlv {

namespace {

// K[t] helpers for the extension-minpoly search; K = F_p[x]/(fmod), elements
// are length-dm digit vectors, polynomials are coefficient lists in t.
struct KPolyCtx {
    uint32_t p;
    const fp_poly& fmod;
    uint32_t dm;

    using KE = std::vector<uint16_t>;
    using KP = std::vector<KE>;

    KE kzero() const { return KE(dm, 0); }
    KE kone() const {
        KE e(dm, 0);
        e[0] = 1;
        return e;
    }
    bool kis_zero(const KE& a) const {
        for (auto c : a)
            if (c) return false;
        return true;
    }
    KE kadd(const KE& a, const KE& b) const {
        KE r(dm);
        for (uint32_t i = 0; i < dm; ++i) r[i] = uint16_t((a[i] + b[i]) % p);
        return r;
    }
    KE kneg(const KE& a) const {
        KE r(dm);
        for (uint32_t i = 0; i < dm; ++i) r[i] = uint16_t((p - a[i]) % p);
        return r;
    }
    KE kmul(const KE& a, const KE& b) const {
        std::vector<uint32_t> acc(2 * dm - 1, 0);
        for (uint32_t i = 0; i < dm; ++i) {
            if (!a[i]) continue;
            for (uint32_t j = 0; j < dm; ++j) acc[i + j] = (acc[i + j] + uint32_t(a[i]) * b[j]) % p;
        }
        for (size_t i = acc.size(); i-- > dm;) {
            uint32_t c = acc[i];
            if (!c) continue;
            acc[i] = 0;
            for (uint32_t j = 0; j < dm; ++j) acc[i - dm + j] = (acc[i - dm + j] + c * (p - fmod[j])) % p;
        }
        KE r(dm);
        for (uint32_t i = 0; i < dm; ++i) r[i] = uint16_t(acc[i]);
        return r;
    }
    KE kinv(const KE& a) const {
        // extended Euclid in F_p[x] on (lift(a), fmod)
        auto trim = [](fp_poly v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
            return v;
        };
        fp_poly r0(fmod.begin(), fmod.end()), r1 = trim(fp_poly(a.begin(), a.end()));
        if (r1.empty()) fail(errc::dimension_mismatch, "inverse of zero in the field part");
        fp_poly s0 = {}, s1 = {1};
        while (!(r1.size() == 1)) {
            // divide r0 by r1
            fp_poly q(r0.size() - r1.size() + 1, 0);
            fp_poly rem = r0;
            uint32_t lead_inv = 1;
            { // inverse of r1's leading coeff mod p
                uint32_t lc = r1.back();
                for (uint32_t t = 1; t < p; ++t)
                    if (lc * t % p == 1) lead_inv = t;
            }
            for (size_t i = rem.size(); i-- > r1.size() - 1;) {
                size_t sh = i - (r1.size() - 1);
                uint32_t c = uint32_t(rem[i]) * lead_inv % p;
                if (!c) continue;
                q[sh] = uint16_t(c);
                for (size_t j = 0; j < r1.size(); ++j)
                    rem[sh + j] = uint16_t((rem[sh + j] + c * (p - r1[j])) % p);
            }
            rem = trim(rem);
            // s_new = s0 - q*s1
            fp_poly qs(q.size() + s1.size(), 0);
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j)
                    qs[i + j] = uint16_t((qs[i + j] + uint32_t(q[i]) * s1[j]) % p);
            fp_poly snew(std::max(s0.size(), qs.size()), 0);
            for (size_t i = 0; i < snew.size(); ++i) {
                uint32_t v = (i < s0.size() ? s0[i] : 0) + p - (i < qs.size() ? qs[i] % p : 0);
                snew[i] = uint16_t(v % p);
            }
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = trim(snew);
            if (r1.empty()) fail(errc::dimension_mismatch, "field-part inverse: zero divisor");
        }
        // r1 is a nonzero constant; scale s1 by its inverse
        uint32_t c = r1[0], cinv = 1;
        for (uint32_t t = 1; t < p; ++t)
            if (c * t % p == 1) cinv = t;
        KE out(dm, 0);
        for (size_t i = 0; i < s1.size() && i < dm; ++i) out[i] = uint16_t(uint32_t(s1[i]) * cinv % p);
        return out;
    }

    KP trim(KP v) const {
        while (!v.empty() && kis_zero(v.back())) v.pop_back();
        return v;
    }
    KP mulmod(const KP& a, const KP& b, const KP& h) const {
        KP acc(a.size() + b.size() - 1, kzero());
        for (size_t i = 0; i < a.size(); ++i) {
            if (kis_zero(a[i])) continue;
            for (size_t j = 0; j < b.size(); ++j) {
                if (kis_zero(b[j])) continue;
                acc[i + j] = kadd(acc[i + j], kmul(a[i], b[j]));
            }
        }
        size_t dh = h.size() - 1;
        for (size_t i = acc.size(); i-- > dh;) {
            if (kis_zero(acc[i])) continue;
            KE c = acc[i];
            acc[i] = kzero();
            for (size_t j = 0; j < dh; ++j) acc[i - dh + j] = kadd(acc[i - dh + j], kneg(kmul(c, h[j])));
        }
        acc.resize(dh, kzero());
        return acc;
    }
    KP powmod(KP base, uint64_t e, const KP& h) const {
        KP r{kone()};
        r.resize(h.size() - 1, kzero());
        base.resize(h.size() - 1, kzero());
        while (e) {
            if (e & 1) r = mulmod(r, base, h);
            base = mulmod(base, base, h);
            e >>= 1;
        }
        return r;
    }
    // t^{Q^j} mod h by iterating X -> X^Q; deg h >= 2
    KP t_power_Qj(uint64_t Q, uint32_t j, const KP& h) const {
        KP x(h.size() - 1, kzero());
        x[1] = kone();
        for (uint32_t i = 0; i < j; ++i) x = powmod(x, Q, h);
        return x;
    }
    KP gcd(KP a, KP b) const {
        a = trim(a);
        b = trim(b);
        while (!b.empty()) {
            // a mod b
            KE lead_inv = kinv(b.back());
            while (a.size() >= b.size()) {
                KE c = kmul(a.back(), lead_inv);
                size_t sh = a.size() - b.size();
                if (!kis_zero(c))
                    for (size_t j = 0; j < b.size(); ++j) a[sh + j] = kadd(a[sh + j], kneg(kmul(c, b[j])));
                a.pop_back();
                a = trim(a);
                if (a.empty()) break;
            }
            std::swap(a, b);
        }
        return a;
    }

    bool irreducible(const KP& h, uint64_t Q) const {
        uint32_t sdeg = uint32_t(h.size() - 1);
        if (sdeg == 1) return true;
        if (kis_zero(h[0])) return false;
        KP t(h.size() - 1, kzero());
        t[1] = kone();
        // t^{Q^s} == t mod h
        KP xs = t_power_Qj(Q, sdeg, h);
        KP diff = xs;
        diff[1] = kadd(diff[1], kneg(kone()));
        if (!trim(diff).empty()) return false;
        // gcd(t^{Q^{s/l}} - t, h) == 1 for prime l | s
        for (uint32_t l = 2; l <= sdeg; ++l) {
            if (sdeg % l) continue;
            bool lprime = true;
            for (uint32_t f = 2; f * f <= l; ++f)
                if (l % f == 0) lprime = false;
            if (!lprime) continue;
            KP xi = t_power_Qj(Q, sdeg / l, h);
            xi[1] = kadd(xi[1], kneg(kone()));
            KP g = gcd(xi, h);
            if (!(g.size() == 1)) return false;
        }
        return true;
    }
};

} // namespace

Ring::Ring(uint32_t p, uint32_t d, uint32_t m, uint32_t k, fp_poly modulus)
    : p_(p), d_(d), m_(m), k_(k), s_(1), Fq_(p, d), Fp_(p, 1) {
    if (m < 1 || k < 1) fail(errc::dimension_mismatch, "m and k must be >= 1");
    dm_ = d * m;
    if (modulus.empty()) {
        fmod_ = lex_smallest_irreducible(p, dm_);
    } else {
        if (modulus.size() != size_t(dm_) + 1 || modulus.back() != 1)
            fail(errc::reducible_modulus, "modulus must be monic of degree d*m");
        for (auto c : modulus)
            if (c >= p) fail(errc::reducible_modulus, "modulus coefficient out of range");
        if (!is_irreducible_fp(p, modulus)) fail(errc::reducible_modulus, "modulus is reducible over F_p");
        fmod_ = std::move(modulus);
    }
    init_tables();
}

RingPtr Ring::extend(const RingPtr& base, uint32_t s) {
    if (s <= 1) return base;
    if (base->s_ != 1) fail(errc::unsupported, "scalar extension only from a base ring");
    Ring r;
    r.p_ = base->p_;
    r.d_ = base->d_;
    r.m_ = base->m_;
    r.k_ = base->k_;
    r.s_ = s;
    r.dm_ = base->dm_;
    r.fmod_ = base->fmod_;
    r.Fq_ = base->Fq_;
    r.Fp_ = base->Fp_;

    // lexicographically smallest monic irreducible of degree s over the field
    // part; constant coefficient scanned first and never zero.
    KPolyCtx ctx{r.p_, r.fmod_, r.dm_};
    uint64_t Q = 1;
    for (uint32_t i = 0; i < r.dm_; ++i) Q *= r.p_;
    uint64_t nK = Q;
    auto elem_of = [&](uint64_t v) {
        std::vector<uint16_t> e(r.dm_, 0);
        for (uint32_t i = r.dm_; i-- > 0;) {
            e[i] = uint16_t(v % r.p_);
            v /= r.p_;
        }
        return e;
    };
    bool found = false;
    std::vector<uint64_t> idx(s, 0);
    for (uint64_t c0 = 1; c0 < nK && !found; ++c0) {
        idx.assign(s, 0);
        idx[0] = c0;
        while (true) {
            KPolyCtx::KP h(s + 1);
            for (uint32_t i = 0; i < s; ++i) h[i] = elem_of(idx[i]);
            h[s] = ctx.kone();
            if (ctx.irreducible(h, Q)) {
                r.hs_.assign(h.begin(), h.end());
                found = true;
                break;
            }
            // advance (idx[1], ..., idx[s-1]) with idx[1] most significant
            uint32_t pos = s - 1;
            while (pos >= 1) {
                if (++idx[pos] < nK) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 1) break;
        }
    }
    if (!found) fail(errc::extension_bound_exceeded, "no irreducible extension polynomial found");
    r.init_tables();
    return std::make_shared<const Ring>(std::move(r));
}

void Ring::init_tables() {
    // subfield generator w: root of the SmallField modulus inside F_p[x]/(fmod)
    if (d_ == 1) {
        wpow_.assign(dm_, 0);
        wpow_[0] = 1; // w^0 = 1 is the only power needed
    } else {
        // F_q = ker(frob_p^d - id) inside the base field
        GfMat frobp(dm_, dm_);
        {
            // column i = coords of x^{i*p} mod fmod
            std::vector<uint16_t> xp(dm_, 0); // x^p mod fmod
            {
                std::vector<uint16_t> cur(dm_, 0);
                cur[0] = 1;
                std::vector<uint16_t> xv(dm_, 0);
                xv[1] = 1; // d_ > 1 forces dm_ >= 2
                for (uint32_t t = 0; t < p_; ++t) bf_mul(cur.data(), xv.data(), cur.data());
                xp = cur;
            }
            std::vector<uint16_t> cur(dm_, 0);
            cur[0] = 1;
            for (uint32_t i = 0; i < dm_; ++i) {
                for (uint32_t rrow = 0; rrow < dm_; ++rrow) frobp.at(rrow, i) = cur[rrow];
                bf_mul(cur.data(), xp.data(), cur.data());
            }
        }
        GfMat it = frobp;
        for (uint32_t t = 1; t < d_; ++t) it = mat_mul(Fp_, it, frobp);
        for (uint32_t i = 0; i < dm_; ++i) it.at(i, i) = Fp_.sub(it.at(i, i), 1);
        std::vector<gf_vec> sub = null_space(Fp_, it); // dimension d
        if (sub.size() != d_) fail(errc::dimension_mismatch, "subfield computation failed");
        const fp_poly& g = Fq_.modulus();
        std::vector<std::vector<uint16_t>> roots;
        uint64_t total = 1;
        for (uint32_t t = 0; t < d_; ++t) total *= p_;
        for (uint64_t v = 0; v < total; ++v) {
            std::vector<uint16_t> cand(dm_, 0);
            uint64_t t = v;
            for (uint32_t i = 0; i < d_; ++i) {
                uint32_t c = uint32_t(t % p_);
                t /= p_;
                if (c)
                    for (uint32_t rrow = 0; rrow < dm_; ++rrow)
                        cand[rrow] = uint16_t((cand[rrow] + c * sub[i][rrow]) % p_);
            }
            // evaluate g at cand
            std::vector<uint16_t> acc(dm_, 0), pw(dm_, 0);
            pw[0] = 1;
            for (size_t i = 0; i < g.size(); ++i) {
                if (g[i])
                    for (uint32_t rrow = 0; rrow < dm_; ++rrow)
                        acc[rrow] = uint16_t((acc[rrow] + uint32_t(g[i]) * pw[rrow]) % p_);
                if (i + 1 < g.size()) bf_mul(pw.data(), cand.data(), pw.data());
            }
            bool zero = true, cand_zero = true;
            for (auto c : acc)
                if (c) zero = false;
            for (auto c : cand)
                if (c) cand_zero = false;
            if (zero && !cand_zero) roots.push_back(cand);
        }
        if (roots.empty()) fail(errc::dimension_mismatch, "no subfield generator found");
        std::sort(roots.begin(), roots.end());
        std::vector<uint16_t> w = roots.front();
        wpow_.assign(size_t(d_) * dm_, 0);
        std::vector<uint16_t> cur(dm_, 0);
        cur[0] = 1;
        for (uint32_t t = 0; t < d_; ++t) {
            std::copy(cur.begin(), cur.end(), wpow_.begin() + size_t(t) * dm_);
            bf_mul(cur.data(), w.data(), cur.data());
        }
    }

    // change of basis between x-power coords and (x^i w^t) coords
    bmat_ = GfMat(dm_, dm_);
    for (uint32_t i = 0; i < m_; ++i)
        for (uint32_t t = 0; t < d_; ++t) {
            // column i*d + t = coords of w^t * x^i
            std::vector<uint16_t> e(dm_, 0);
            const uint16_t* wt = (d_ == 1) ? wpow_.data() : wpow_.data() + size_t(t) * dm_;
            std::copy(wt, wt + dm_, e.begin());
            for (uint32_t sft = 0; sft < i; ++sft) {
                // multiply by x
                std::vector<uint16_t> xe(dm_, 0);
                if (dm_ == 1) {
                    xe[0] = uint16_t((uint32_t(e[0]) * ((p_ - fmod_[0]) % p_)) % p_);
                } else {
                    for (uint32_t rrow = dm_ - 1; rrow >= 1; --rrow) xe[rrow] = e[rrow - 1];
                    uint16_t top = e[dm_ - 1];
                    if (top)
                        for (uint32_t rrow = 0; rrow < dm_; ++rrow)
                            xe[rrow] = uint16_t((xe[rrow] + uint32_t(top) * (p_ - fmod_[rrow])) % p_);
                }
                e = xe;
            }
            for (uint32_t rrow = 0; rrow < dm_; ++rrow) bmat_.at(rrow, i * d_ + t) = e[rrow];
        }
    // invert over F_p
    {
        GfMat aug(dm_, 2 * dm_);
        for (uint32_t i = 0; i < dm_; ++i) {
            for (uint32_t j = 0; j < dm_; ++j) aug.at(i, j) = bmat_.at(i, j);
            aug.at(i, dm_ + i) = 1;
        }
        rref(Fp_, aug);
        bmat_inv_ = GfMat(dm_, dm_);
        for (uint32_t i = 0; i < dm_; ++i)
            for (uint32_t j = 0; j < dm_; ++j) bmat_inv_.at(i, j) = aug.at(i, dm_ + j);
    }

    // full-ring Frobenius matrix (F_p-linear)
    size_t D = dim_fp();
    frob_ = GfMat(D, D);
    for (size_t t = 0; t < D; ++t) {
        Elem e = zero();
        e[t] = 1;
        Elem f = pow(e, Fq_.q());
        for (size_t rrow = 0; rrow < D; ++rrow) frob_.at(rrow, t) = f[rrow];
    }
}

bool Ring::same_as(const Ring& other) const {
    return p_ == other.p_ && d_ == other.d_ && m_ == other.m_ && k_ == other.k_ && s_ == other.s_ &&
           fmod_ == other.fmod_ && hs_ == other.hs_;
}

void Ring::bf_mul(const uint16_t* a, const uint16_t* b, uint16_t* out) const {
    std::vector<uint32_t> acc(2 * dm_ - 1, 0);
    for (uint32_t i = 0; i < dm_; ++i) {
        if (!a[i]) continue;
        for (uint32_t j = 0; j < dm_; ++j) acc[i + j] = (acc[i + j] + uint32_t(a[i]) * b[j]) % p_;
    }
    for (size_t i = acc.size(); i-- > dm_;) {
        uint32_t c = acc[i];
        if (!c) continue;
        acc[i] = 0;
        for (uint32_t j = 0; j < dm_; ++j) acc[i - dm_ + j] = (acc[i - dm_ + j] + c * (p_ - fmod_[j])) % p_;
    }
    for (uint32_t i = 0; i < dm_; ++i) out[i] = uint16_t(acc[i]);
}

bool Ring::bf_is_zero(const uint16_t* a) const {
    for (uint32_t i = 0; i < dm_; ++i)
        if (a[i]) return false;
    return true;
}

std::vector<uint16_t> Ring::bf_inv(const uint16_t* a) const {
    KPolyCtx ctx{p_, fmod_, dm_};
    return ctx.kinv(std::vector<uint16_t>(a, a + dm_));
}

void Ring::ef_mul(const uint16_t* a, const uint16_t* b, uint16_t* out) const {
    if (s_ == 1) {
        bf_mul(a, b, out);
        return;
    }
    std::vector<std::vector<uint16_t>> acc(2 * s_ - 1, std::vector<uint16_t>(dm_, 0));
    std::vector<uint16_t> tmp(dm_);
    for (uint32_t i = 0; i < s_; ++i) {
        if (bf_is_zero(a + size_t(i) * dm_)) continue;
        for (uint32_t j = 0; j < s_; ++j) {
            if (bf_is_zero(b + size_t(j) * dm_)) continue;
            bf_mul(a + size_t(i) * dm_, b + size_t(j) * dm_, tmp.data());
            for (uint32_t t = 0; t < dm_; ++t) acc[i + j][t] = uint16_t((acc[i + j][t] + tmp[t]) % p_);
        }
    }
    for (size_t i = acc.size(); i-- > s_;) {
        if (bf_is_zero(acc[i].data())) continue;
        std::vector<uint16_t> c = acc[i];
        acc[i].assign(dm_, 0);
        for (uint32_t j = 0; j < s_; ++j) {
            bf_mul(c.data(), hs_[j].data(), tmp.data());
            for (uint32_t t = 0; t < dm_; ++t)
                acc[i - s_ + j][t] = uint16_t((acc[i - s_ + j][t] + (p_ - tmp[t])) % p_);
        }
    }
    for (uint32_t j = 0; j < s_; ++j)
        std::copy(acc[j].begin(), acc[j].end(), out + size_t(j) * dm_);
}

bool Ring::ef_is_zero(const uint16_t* a) const {
    for (size_t i = 0; i < size_t(dm_) * s_; ++i)
        if (a[i]) return false;
    return true;
}

std::vector<uint16_t> Ring::ef_inv(const uint16_t* a) const {
    if (s_ == 1) return bf_inv(a);
    // extended Euclid in K[u] against hs_
    KPolyCtx ctx{p_, fmod_, dm_};
    using KP = KPolyCtx::KP;
    KP r0(hs_.begin(), hs_.end());
    KP r1(s_);
    for (uint32_t j = 0; j < s_; ++j) r1[j] = std::vector<uint16_t>(a + size_t(j) * dm_, a + size_t(j + 1) * dm_);
    r1 = ctx.trim(r1);
    if (r1.empty()) fail(errc::dimension_mismatch, "inverse of zero in the field part");
    KP s0, s1{ctx.kone()};
    while (r1.size() > 1) {
        KPolyCtx::KE lead_inv = ctx.kinv(r1.back());
        KP q(r0.size() - r1.size() + 1, ctx.kzero());
        KP rem = r0;
        while (rem.size() >= r1.size()) {
            KPolyCtx::KE c = ctx.kmul(rem.back(), lead_inv);
            size_t sh = rem.size() - r1.size();
            if (!ctx.kis_zero(c)) {
                q[sh] = c;
                for (size_t j = 0; j < r1.size(); ++j)
                    rem[sh + j] = ctx.kadd(rem[sh + j], ctx.kneg(ctx.kmul(c, r1[j])));
            }
            rem.pop_back();
            rem = ctx.trim(rem);
            if (rem.empty()) break;
        }
        // snew = s0 - q*s1
        KP qs(q.size() + s1.size(), ctx.kzero());
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] = ctx.kadd(qs[i + j], ctx.kmul(q[i], s1[j]));
        KP snew(std::max(s0.size(), qs.size()), ctx.kzero());
        for (size_t i = 0; i < snew.size(); ++i) {
            KPolyCtx::KE v = i < s0.size() ? s0[i] : ctx.kzero();
            if (i < qs.size()) v = ctx.kadd(v, ctx.kneg(qs[i]));
            snew[i] = v;
        }
        r0 = std::move(r1);
        r1 = ctx.trim(rem);
        s0 = std::move(s1);
        s1 = ctx.trim(snew);
        if (r1.empty()) fail(errc::dimension_mismatch, "field-part inverse: zero divisor");
    }
    KPolyCtx::KE cinv = ctx.kinv(r1[0]);
    std::vector<uint16_t> out(size_t(dm_) * s_, 0);
    for (size_t j = 0; j < s1.size() && j < s_; ++j) {
        KPolyCtx::KE v = ctx.kmul(s1[j], cinv);
        std::copy(v.begin(), v.end(), out.begin() + j * dm_);
    }
    return out;
}

Elem Ring::one() const {
    Elem e = zero();
    e[0] = 1;
    return e;
}

Elem Ring::from_int(int64_t v) const {
    int64_t c = v % int64_t(p_);
    if (c < 0) c += p_;
    Elem e = zero();
    e[0] = uint16_t(c);
    return e;
}

Elem Ring::embed_gf(gf c) const {
    gf_vec v(dim_fq(), 0);
    v[0] = c;
    return from_gfq(v);
}

bool Ring::is_zero(const Elem& a) const {
    for (auto c : a)
        if (c) return false;
    return true;
}

Elem Ring::add(const Elem& a, const Elem& b) const {
    Elem r(dim_fp());
    for (size_t i = 0; i < r.size(); ++i) r[i] = uint16_t((a[i] + b[i]) % p_);
    return r;
}

Elem Ring::sub(const Elem& a, const Elem& b) const {
    Elem r(dim_fp());
    for (size_t i = 0; i < r.size(); ++i) r[i] = uint16_t((a[i] + p_ - b[i]) % p_);
    return r;
}

Elem Ring::neg(const Elem& a) const {
    Elem r(dim_fp());
    for (size_t i = 0; i < r.size(); ++i) r[i] = uint16_t((p_ - a[i]) % p_);
    return r;
}

Elem Ring::mul(const Elem& a, const Elem& b) const {
    size_t blk = size_t(dm_) * s_;
    Elem r = zero();
    std::vector<uint16_t> tmp(blk);
    for (uint32_t l1 = 0; l1 < k_; ++l1) {
        if (ef_is_zero(a.data() + size_t(l1) * blk)) continue;
        for (uint32_t l2 = 0; l2 + l1 < k_; ++l2) {
            if (ef_is_zero(b.data() + size_t(l2) * blk)) continue;
            ef_mul(a.data() + size_t(l1) * blk, b.data() + size_t(l2) * blk, tmp.data());
            uint16_t* out = r.data() + size_t(l1 + l2) * blk;
            for (size_t t = 0; t < blk; ++t) out[t] = uint16_t((out[t] + tmp[t]) % p_);
        }
    }
    return r;
}

Elem Ring::mul_gf(gf c, const Elem& a) const { return mul(embed_gf(c), a); }

Elem Ring::pow(const Elem& a, uint64_t e) const {
    Elem r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

bool Ring::is_unit(const Elem& a) const { return !ef_is_zero(a.data()); }

bool Ring::is_nilpotent(const Elem& a) const { return ef_is_zero(a.data()); }

Elem Ring::inv(const Elem& a) const {
    if (!is_unit(a)) fail(errc::non_unit_leading_coeff, "element is not a unit");
    std::vector<uint16_t> i0 = ef_inv(a.data());
    Elem inv0 = zero();
    std::copy(i0.begin(), i0.end(), inv0.begin());
    if (k_ == 1) return inv0;
    Elem t = sub(one(), mul(a, inv0)); // nilpotent
    Elem acc = one(), term = one();
    for (uint32_t j = 1; j < k_; ++j) {
        term = mul(term, t);
        acc = add(acc, term);
    }
    return mul(inv0, acc);
}

Elem Ring::frobq(const Elem& a) const {
    gf_vec v(a.begin(), a.end());
    gf_vec w = mat_apply(Fp_, frob_, v);
    Elem r(dim_fp());
    for (size_t i = 0; i < r.size(); ++i) r[i] = uint16_t(w[i]);
    return r;
}

Elem Ring::frobq_iter(const Elem& a, uint32_t i) const {
    Elem r = a;
    uint32_t period = field_degree(); // frob^{m s} fixes the field part
    if (k_ == 1 && period) i %= period;
    for (uint32_t t = 0; t < i; ++t) r = frobq(r);
    return r;
}

Elem Ring::root_q(const Elem& a) const {
    if (k_ == 1) return frobq_iter(a, field_degree() - 1);
    // only pure field-part elements admit a canonical q-th root here
    size_t blk = size_t(dm_) * s_;
    for (size_t i = blk; i < a.size(); ++i)
        if (a[i]) fail(errc::no_qth_root, "q-th root with nilpotent part is not supported");
    Elem r = a;
    for (uint32_t t = 0; t + 1 < field_degree(); ++t) r = frobq(r);
    return r;
}

Elem Ring::zeta_component(const Elem& a, uint32_t l) const {
    Elem r = zero();
    size_t blk = size_t(dm_) * s_;
    std::copy(a.begin() + size_t(l) * blk, a.begin() + size_t(l + 1) * blk, r.begin() + size_t(l) * blk);
    return r;
}

Elem Ring::zeta() const {
    Elem e = zero();
    if (k_ > 1) e[size_t(dm_) * s_] = 1;
    return e;
}

Elem Ring::x_gen() const {
    Elem e = zero();
    if (dm_ > 1) e[1] = 1;
    else e[0] = uint16_t((p_ - fmod_[0]) % p_);
    return e;
}

Elem Ring::u_gen() const {
    Elem e = zero();
    if (s_ > 1) e[dm_] = 1;
    return e;
}

gf_vec Ring::to_gfq(const Elem& a) const {
    gf_vec out(dim_fq(), 0);
    size_t blk = size_t(dm_) * s_;
    gf_vec tmp(dm_), res(dm_);
    for (uint32_t l = 0; l < k_; ++l)
        for (uint32_t j = 0; j < s_; ++j) {
            const uint16_t* src = a.data() + size_t(l) * blk + size_t(j) * dm_;
            for (uint32_t i = 0; i < dm_; ++i) tmp[i] = src[i];
            res = mat_apply(Fp_, bmat_inv_, tmp);
            for (uint32_t i = 0; i < m_; ++i) {
                gf idx = 0;
                for (uint32_t t = d_; t-- > 0;) idx = idx * p_ + res[i * d_ + t];
                out[size_t(l) * (size_t(m_) * s_) + size_t(j) * m_ + i] = idx;
            }
        }
    return out;
}

Elem Ring::from_gfq(const gf_vec& v) const {
    if (v.size() != dim_fq()) fail(errc::dimension_mismatch, "from_gfq: wrong length");
    Elem out = zero();
    size_t blk = size_t(dm_) * s_;
    gf_vec tmp(dm_), res(dm_);
    for (uint32_t l = 0; l < k_; ++l)
        for (uint32_t j = 0; j < s_; ++j) {
            for (uint32_t i = 0; i < m_; ++i) {
                gf idx = v[size_t(l) * (size_t(m_) * s_) + size_t(j) * m_ + i];
                for (uint32_t t = 0; t < d_; ++t) {
                    tmp[i * d_ + t] = idx % p_;
                    idx /= p_;
                }
            }
            res = mat_apply(Fp_, bmat_, tmp);
            uint16_t* dst = out.data() + size_t(l) * blk + size_t(j) * dm_;
            for (uint32_t i = 0; i < dm_; ++i) dst[i] = uint16_t(res[i]);
        }
    return out;
}

Elem Ring::fq_basis_elem(size_t t) const {
    gf_vec v(dim_fq(), 0);
    v[t] = 1;
    return from_gfq(v);
}

GfMat Ring::matrix_of(const std::vector<Elem>& images) const {
    if (images.size() != dim_fq()) fail(errc::dimension_mismatch, "matrix_of: wrong image count");
    GfMat M(dim_fq(), dim_fq());
    for (size_t t = 0; t < images.size(); ++t) {
        gf_vec col = to_gfq(images[t]);
        for (size_t i = 0; i < col.size(); ++i) M.at(i, t) = col[i];
    }
    return M;
}

std::string Ring::to_csv(const Elem& a) const {
    std::string out;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a[i]);
    }
    return out;
}

Elem Ring::from_csv(const std::string& text) const {
    Elem e = zero();
    size_t pos = 0, idx = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        if (idx >= e.size()) fail(errc::syntax_error, "element CSV too long");
        int v = std::stoi(text.substr(pos, next - pos));
        if (v < 0 || uint32_t(v) >= p_) fail(errc::syntax_error, "element coordinate out of range");
        e[idx++] = uint16_t(v);
        pos = next + 1;
    }
    if (idx != e.size()) fail(errc::syntax_error, "element CSV has wrong length");
    return e;
}

std::string Ring::to_string(const Elem& a) const {
    std::string out;
    size_t blk = size_t(dm_) * s_;
    for (uint32_t l = 0; l < k_; ++l)
        for (uint32_t j = 0; j < s_; ++j)
            for (uint32_t i = 0; i < dm_; ++i) {
                uint16_t c = a[size_t(l) * blk + size_t(j) * dm_ + i];
                if (!c) continue;
                std::string term;
                if (c != 1 || (i == 0 && j == 0 && l == 0)) term = std::to_string(c);
                auto app = [&](const std::string& sym, uint32_t e) {
                    if (!e) return;
                    if (!term.empty()) term += "*";
                    term += sym;
                    if (e > 1) term += "^" + std::to_string(e);
                };
                app("x", i);
                app("u", j);
                app("z", l);
                if (!out.empty()) out += "+";
                out += term;
            }
    if (out.empty()) out = "0";
    return out;
}

Elem Ring::random(std::mt19937_64& rng) const {
    Elem e(dim_fp());
    for (auto& c : e) c = uint16_t(rng() % p_);
    return e;
}

Elem Ring::random_unit(std::mt19937_64& rng) const {
    while (true) {
        Elem e = random(rng);
        if (is_unit(e)) return e;
    }
}

Elem Ring::embed_base(const Elem& a) const {
    if (a.size() == dim_fp()) return a;
    if (a.size() != size_t(dm_) * k_) fail(errc::ring_mismatch, "embed_base: wrong source length");
    Elem out = zero();
    size_t blk = size_t(dm_) * s_;
    for (uint32_t l = 0; l < k_; ++l)
        std::copy(a.begin() + size_t(l) * dm_, a.begin() + size_t(l + 1) * dm_,
                  out.begin() + size_t(l) * blk);
    return out;
}

std::vector<Elem> Ring::all_elements(size_t limit) const {
    double total = 1;
    for (size_t i = 0; i < dim_fp(); ++i) total *= p_;
    if (total > double(limit)) fail(errc::bound_too_small, "ring too large to enumerate");
    size_t n = size_t(total);
    std::vector<Elem> out;
    out.reserve(n);
    Elem cur = zero();
    out.push_back(cur);
    for (size_t c = 1; c < n; ++c) {
        size_t i = 0;
        while (true) {
            if (++cur[i] < p_) break;
            cur[i] = 0;
            ++i;
        }
        out.push_back(cur);
    }
    return out;
}

RingPtr make_ring(uint32_t p, uint32_t d, uint32_t m, uint32_t k, fp_poly modulus) {
    return std::make_shared<const Ring>(p, d, m, k, std::move(modulus));
}

} // namespace dlv
