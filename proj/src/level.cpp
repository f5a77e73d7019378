#include "dlv/level.hpp"

#include <algorithm>

namespace dlv {

RPoly point_divisor(const RingPtr& R, const Elem& P) {
    return RPoly(R, {R->neg(P), R->one()});
}

bool is_subscheme(const RPoly& D, const RPoly& D2) { return D.divides(D2); }

bool divisor_e_stable(const DrinfeldModule& E, const RPoly& g) {
    if (!g.is_additive()) return false;
    SkewPoly w = skew_of_additive(g);
    if (w.degree() < 1) return true; // zero subgroup
    return (w * E.eT).right_divmod(w).second.is_zero();
}

MShape::MShape(std::vector<uint32_t> e) : exps(std::move(e)) {
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 1) fail(errc::dimension_mismatch, "M-shape exponents must be positive");
        if (i && exps[i - 1] < exps[i]) fail(errc::dimension_mismatch, "M-shape must be decreasing");
    }
}

MStructure make_mstructure(MShape shape, DrinfeldModule E, std::vector<Elem> gens) {
    if (gens.size() != shape.factors())
        fail(errc::dimension_mismatch, "one generator per cyclic factor expected");
    for (size_t i = 0; i < gens.size(); ++i) {
        Elem img = eval_Tj(E, shape.exps[i], gens[i]);
        if (!E.ring->is_zero(img))
            fail(errc::dimension_mismatch,
                 "generator " + std::to_string(i) + " is not p^{n_i}-torsion");
    }
    return MStructure{std::move(shape), std::move(E), std::move(gens)};
}

RPoly divisor_of(const MStructure& iota, const std::vector<uint32_t>& caps) {
    const RingPtr& R = iota.E.ring;
    size_t m = iota.shape.factors();
    if (!caps.empty() && caps.size() != m)
        fail(errc::dimension_mismatch, "caps length must match the shape");
    std::vector<uint32_t> eff(m);
    for (size_t i = 0; i < m; ++i)
        eff[i] = caps.empty() ? iota.shape.exps[i] : std::min(iota.shape.exps[i], caps[i]);

    // W[i][j] = e_{T^j}(Q_i) where Q_i generates the capped factor
    std::vector<std::vector<Elem>> W(m);
    double total = 1;
    for (size_t i = 0; i < m; ++i) {
        Elem Q = eval_Tj(iota.E, iota.shape.exps[i] - eff[i], iota.gens[i]);
        W[i].reserve(eff[i]);
        Elem cur = Q;
        for (uint32_t j = 0; j < eff[i]; ++j) {
            W[i].push_back(cur);
            cur = iota.E.eT.eval_additive(cur);
            total *= R->q();
        }
    }
    if (total > 200000.0) fail(errc::bound_too_small, "module too large to enumerate");

    size_t digits_total = 0;
    for (size_t i = 0; i < m; ++i) digits_total += eff[i];
    std::vector<gf> digits(digits_total, 0);
    RPoly acc = RPoly::constant(R, R->one());
    size_t count = size_t(total);
    for (size_t c = 0; c < count; ++c) {
        if (c) {
            size_t t = 0;
            while (true) {
                if (++digits[t] < R->q()) break;
                digits[t] = 0;
                ++t;
            }
        }
        Elem pt = R->zero();
        size_t pos = 0;
        for (size_t i = 0; i < m; ++i)
            for (uint32_t j = 0; j < eff[i]; ++j, ++pos)
                if (digits[pos]) pt = R->add(pt, R->mul(R->embed_gf(digits[pos]), W[i][j]));
        acc = acc * point_divisor(R, pt);
    }
    return acc;
}

bool is_m_structure(const MStructure& iota) {
    std::vector<uint32_t> ones(iota.shape.factors(), 1);
    RPoly ptor = divisor_of(iota, ones);
    RPoly f1 = torsion_divisor(iota.E, 1);
    return is_subscheme(ptor, f1);
}

RPoly generated_subscheme(const MStructure& iota) {
    if (!is_m_structure(iota)) fail(errc::not_m_structure, "not an M-structure");
    RPoly g = divisor_of(iota);
    if (!g.is_additive())
        fail(errc::not_additive_divisor, "generated divisor is not additive");
    if (!divisor_e_stable(iota.E, g))
        fail(errc::not_additive_divisor, "generated divisor is not e-stable");
    if (iota.shape.level() >= 1) {
        RPoly fn = torsion_divisor(iota.E, iota.shape.level());
        if (!is_subscheme(g, fn))
            fail(errc::not_subscheme, "generated divisor not inside the torsion scheme");
    }
    return g;
}

bool module_free_of_rank(const Ring& R, size_t ambient_dim, const Subspace& relations,
                         const linear_map* mult_zeta, size_t r) {
    size_t dimB = ambient_dim - relations.dim();
    if (dimB != r * R.dim_fq()) return false;
    if (R.k() == 1 || !mult_zeta) return R.k() == 1; // no nilpotents: dimension count suffices
    Subspace V = relations;
    for (size_t t = 0; t < ambient_dim; ++t) {
        gf_vec e(ambient_dim, 0);
        e[t] = 1;
        V.insert((*mult_zeta)(e));
    }
    size_t res = ambient_dim - V.dim();
    return res == r * R.field_degree();
}

namespace {

// B = R[Q]/(fn(Q)) with elements as coefficient vectors of length Dq
struct BCtx {
    const RingPtr& R;
    std::vector<Elem> fn; // monic, degree Dq
    size_t Dq;

    using BE = std::vector<Elem>;
    BE zero() const { return BE(Dq, R->zero()); }
    BE one() const {
        BE e = zero();
        e[0] = R->one();
        return e;
    }
    BE Q() const {
        BE e = zero();
        if (Dq > 1) e[1] = R->one();
        else e[0] = R->neg(fn[0]);
        return e;
    }
    BE scal(const Elem& c, const BE& a) const {
        BE out = a;
        for (Elem& x : out) x = R->mul(c, x);
        return out;
    }
    BE add(const BE& a, const BE& b) const {
        BE out(Dq);
        for (size_t i = 0; i < Dq; ++i) out[i] = R->add(a[i], b[i]);
        return out;
    }
    BE sub(const BE& a, const BE& b) const {
        BE out(Dq);
        for (size_t i = 0; i < Dq; ++i) out[i] = R->sub(a[i], b[i]);
        return out;
    }
    BE mul(const BE& a, const BE& b) const {
        std::vector<Elem> acc(2 * Dq - 1, R->zero());
        for (size_t i = 0; i < Dq; ++i) {
            if (R->is_zero(a[i])) continue;
            for (size_t j = 0; j < Dq; ++j) {
                if (R->is_zero(b[j])) continue;
                acc[i + j] = R->add(acc[i + j], R->mul(a[i], b[j]));
            }
        }
        for (size_t i = acc.size(); i-- > Dq;) {
            if (R->is_zero(acc[i])) continue;
            Elem c = acc[i];
            acc[i] = R->zero();
            for (size_t j = 0; j < Dq; ++j)
                acc[i - Dq + j] = R->sub(acc[i - Dq + j], R->mul(c, fn[j]));
        }
        acc.resize(Dq);
        return acc;
    }
    BE pow(BE a, uint64_t e) const {
        BE r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    BE shift_mul_Q(const BE& a) const {
        BE out = zero();
        Elem top = a[Dq - 1];
        for (size_t i = Dq - 1; i >= 1; --i) out[i] = a[i - 1];
        out[0] = R->zero();
        if (!R->is_zero(top))
            for (size_t j = 0; j < Dq; ++j) out[j] = R->sub(out[j], R->mul(top, fn[j]));
        return out;
    }
    gf_vec flat(const BE& a) const {
        gf_vec out;
        out.reserve(Dq * R->dim_fq());
        for (const Elem& e : a) {
            gf_vec c = R->to_gfq(e);
            out.insert(out.end(), c.begin(), c.end());
        }
        return out;
    }
    BE unflat(const gf_vec& v) const {
        size_t dr = R->dim_fq();
        BE out(Dq);
        for (size_t i = 0; i < Dq; ++i)
            out[i] = R->from_gfq(gf_vec(v.begin() + i * dr, v.begin() + (i + 1) * dr));
        return out;
    }
};

} // namespace

bool GeneratorScheme::free_of_rank(size_t r) const {
    linear_map mz;
    size_t dr = ring->dim_fq();
    size_t Dq = ambient_rank;
    const RingPtr& Rc = ring;
    mz = [Rc, dr, Dq](const gf_vec& v) {
        gf_vec out(v.size(), 0);
        Elem z = Rc->zeta();
        for (size_t i = 0; i < Dq; ++i) {
            Elem e = Rc->from_gfq(gf_vec(v.begin() + i * dr, v.begin() + (i + 1) * dr));
            gf_vec c = Rc->to_gfq(Rc->mul(z, e));
            std::copy(c.begin(), c.end(), out.begin() + i * dr);
        }
        return out;
    };
    return module_free_of_rank(*ring, ambient_rank * ring->dim_fq(), ideal, &mz, r);
}

GeneratorScheme generator_scheme(const DrinfeldModule& E, const RPoly& g, uint32_t n) {
    const RingPtr& R = E.ring;
    if (!g.is_monic()) fail(errc::not_monic, "subgroup divisor must be monic");
    if (!g.is_additive()) fail(errc::not_additive, "subgroup divisor must be additive");
    RPoly fn = torsion_divisor(E, n);
    if (!is_subscheme(g, fn)) fail(errc::not_subscheme, "divisor is not a subscheme of E[p^n]");
    if (!divisor_e_stable(E, g)) fail(errc::kernel_not_stable, "divisor kernel not e-stable");
    uint64_t degg = 1;
    for (uint32_t i = 0; i < n; ++i) degg *= R->q();
    if (uint64_t(g.degree()) != degg)
        fail(errc::dimension_mismatch, "subgroup divisor must have degree q^n");

    BCtx B{R, fn.coeffs(), size_t(fn.degree())};

    // V_j = e_{T^j}(Q) inside B, via Q^{q^i} chains
    uint32_t max_i = 0;
    std::vector<SkewPoly> eTj(n);
    for (uint32_t j = 0; j < n; ++j) {
        eTj[j] = action_Tn(E, j);
        max_i = std::max<uint32_t>(max_i, uint32_t(eTj[j].degree()));
    }
    std::vector<BCtx::BE> Qq(max_i + 1); // Q^{q^i}
    Qq[0] = B.Q();
    for (uint32_t i = 1; i <= max_i; ++i) Qq[i] = B.pow(Qq[i - 1], R->q());
    auto eval_skew_at_Q = [&](const SkewPoly& f) {
        BCtx::BE acc = B.zero();
        for (size_t i = 0; i <= size_t(f.degree()); ++i) {
            if (R->is_zero(f.coeff(i))) continue;
            acc = B.add(acc, B.scal(f.coeff(i), Qq[i]));
        }
        return acc;
    };
    std::vector<BCtx::BE> V(n);
    for (uint32_t j = 0; j < n; ++j) V[j] = eval_skew_at_Q(eTj[j]);

    // G(t) = prod over (a_0..a_{n-1}) of (t - sum a_j V_j), one F_q-line at a
    // time: G <- G^q - G(v)^{q-1} G; coefficients indexed by q-power degree
    std::vector<BCtx::BE> G(1, B.one()); // G(t) = t
    auto G_eval = [&](const BCtx::BE& v) {
        BCtx::BE acc = B.zero(), pw = v;
        for (size_t i = 0; i < G.size(); ++i) {
            acc = B.add(acc, B.mul(G[i], pw));
            if (i + 1 < G.size()) pw = B.pow(pw, R->q());
        }
        return acc;
    };
    for (uint32_t j = 0; j < n; ++j) {
        BCtx::BE gv = G_eval(V[j]);
        BCtx::BE gv_pow = B.pow(gv, R->q() - 1);
        std::vector<BCtx::BE> next(G.size() + 1, B.zero());
        for (size_t i = 0; i < G.size(); ++i) {
            next[i + 1] = B.pow(G[i], R->q());       // from G^q
            next[i] = B.sub(next[i], B.mul(gv_pow, G[i]));
        }
        G = std::move(next);
    }

    // seeds (i): coefficients of G - g at q-power slots
    std::vector<gf_vec> seeds;
    uint64_t pw = 1;
    for (size_t i = 0; i < G.size(); ++i) {
        BCtx::BE c = G[i];
        Elem gc = g.coeff(size_t(pw));
        c[0] = R->sub(c[0], gc);
        bool nz = false;
        for (const Elem& e : c)
            if (!R->is_zero(e)) nz = true;
        if (nz) seeds.push_back(B.flat(c));
        pw *= R->q();
    }
    // seed (ii): remainder of f_1 modulo t^q - W^{q-1} t, W = e_{T^{n-1}}(Q)
    {
        BCtx::BE Wq1 = B.pow(V[n - 1], R->q() - 1);
        RPoly f1 = torsion_divisor(E, 1);
        SkewPoly f1s = skew_of_additive(f1);
        BCtx::BE lam = B.one(), acc = B.zero();
        for (size_t i = 0; i <= size_t(f1s.degree()); ++i) {
            if (!R->is_zero(f1s.coeff(i))) acc = B.add(acc, B.scal(f1s.coeff(i), lam));
            if (i + 1 <= size_t(f1s.degree())) lam = B.mul(B.pow(lam, R->q()), Wq1);
        }
        bool nz = false;
        for (const Elem& e : acc)
            if (!R->is_zero(e)) nz = true;
        if (nz) seeds.push_back(B.flat(acc));
    }

    // stabilizing maps: mult by Q and by the R-generators
    std::vector<linear_map> maps;
    size_t dr = R->dim_fq();
    auto bptr = std::make_shared<BCtx>(B);
    maps.push_back([bptr](const gf_vec& v) { return bptr->flat(bptr->shift_mul_Q(bptr->unflat(v))); });
    std::vector<Elem> gens;
    gens.push_back(R->x_gen());
    if (R->s() > 1) gens.push_back(R->u_gen());
    if (R->k() > 1) gens.push_back(R->zeta());
    for (const Elem& gen : gens)
        maps.push_back([bptr, gen, dr](const gf_vec& v) {
            gf_vec out(v.size(), 0);
            for (size_t i = 0; i * dr < v.size(); ++i) {
                Elem e = bptr->R->from_gfq(gf_vec(v.begin() + i * dr, v.begin() + (i + 1) * dr));
                gf_vec c = bptr->R->to_gfq(bptr->R->mul(gen, e));
                std::copy(c.begin(), c.end(), out.begin() + i * dr);
            }
            return out;
        });

    Subspace ideal = span_closure(R->fq(), B.Dq * dr, seeds, maps);
    return GeneratorScheme(R, n, B.Dq, std::move(ideal));
}

bool is_cyclic(const DrinfeldModule& E, const RPoly& g, uint32_t n) {
    GeneratorScheme gs = generator_scheme(E, g, n);
    size_t want = 1;
    for (uint32_t i = 0; i + 1 < n; ++i) want *= E.ring->q();
    want *= E.ring->q() - 1;
    return gs.free_of_rank(want);
}

// --- quotient lines ---

namespace {

// L = R[pi]/(pi^n) arithmetic on coefficient vectors
std::vector<Elem> L_mul(const Ring& R, uint32_t n, const std::vector<Elem>& a,
                        const std::vector<Elem>& b) {
    std::vector<Elem> out(n, R.zero());
    for (uint32_t i = 0; i < n; ++i) {
        if (R.is_zero(a[i])) continue;
        for (uint32_t j = 0; i + j < n; ++j) {
            if (R.is_zero(b[j])) continue;
            out[i + j] = R.add(out[i + j], R.mul(a[i], b[j]));
        }
    }
    return out;
}

std::vector<Elem> L_phi(const Ring& R, uint32_t n, const std::vector<Elem>& alpha,
                        const std::vector<Elem>& x) {
    std::vector<Elem> xq(n);
    for (uint32_t i = 0; i < n; ++i) xq[i] = R.frobq(x[i]);
    return L_mul(R, n, alpha, xq);
}

} // namespace

void validate_line(const QuotientLine& line) {
    const Ring& R = *line.E.ring;
    uint32_t n = line.n;
    if (line.alpha.size() != n || line.lambda.size() != n)
        fail(errc::dimension_mismatch, "line data must have length n");
    // sum_i c_i phi^i(lambda) = pi * lambda for e_T = sum c_i tau^i
    std::vector<Elem> acc(n, R.zero());
    std::vector<Elem> cur = line.lambda;
    for (size_t i = 0; i <= size_t(line.E.eT.degree()); ++i) {
        Elem c = line.E.eT.coeff(i);
        if (!R.is_zero(c))
            for (uint32_t j = 0; j < n; ++j) acc[j] = R.add(acc[j], R.mul(c, cur[j]));
        if (i + 1 <= size_t(line.E.eT.degree())) cur = L_phi(R, n, line.alpha, cur);
    }
    std::vector<Elem> shifted(n, R.zero());
    for (uint32_t j = 0; j + 1 < n; ++j) shifted[j + 1] = line.lambda[j];
    if (acc != shifted) fail(errc::kernel_not_stable, "line data is not pi-equivariant");
    // surjectivity: the phi-orbit of lambda spans L over R
    Subspace S(R.fq(), size_t(n) * R.dim_fq());
    cur = line.lambda;
    for (uint32_t i = 0; i < 2 * n; ++i) {
        for (size_t t = 0; t < R.dim_fq(); ++t) {
            gf_vec flat;
            Elem c = R.fq_basis_elem(t);
            for (uint32_t j = 0; j < n; ++j) {
                gf_vec cc = R.to_gfq(R.mul(c, cur[j]));
                flat.insert(flat.end(), cc.begin(), cc.end());
            }
            S.insert(flat);
        }
        cur = L_phi(R, n, line.alpha, cur);
    }
    if (S.dim() != size_t(n) * R.dim_fq())
        fail(errc::kernel_not_stable, "line data is not surjective");
}

QuotientLine line_of_rank1(const DrinfeldModule& E, uint32_t n) {
    if (E.rank != 1) fail(errc::dimension_mismatch, "rank-1 module expected");
    const Ring& R = *E.ring;
    Elem c1i = R.inv(E.eT.coeff(1));
    QuotientLine line;
    line.E = E;
    line.n = n;
    line.alpha.assign(n, R.zero());
    line.alpha[0] = R.neg(R.mul(E.gammaT, c1i));
    if (n > 1) line.alpha[1] = c1i;
    line.lambda.assign(n, R.zero());
    line.lambda[0] = R.one();
    validate_line(line);
    return line;
}

std::optional<QuotientLine> line_of_divisor(const DrinfeldModule& E, uint32_t n, const RPoly& g) {
    const Ring& R = *E.ring;
    TorsionShtuka M = shtuka_of_divisor(E, n, g);
    if (M.N != n) return std::nullopt;
    if (!shtuka_free_of_rank(M, 1)) return std::nullopt;
    size_t dr = R.dim_fq();
    // find a basis-vector generator u: {pi^j u} an R-basis
    for (size_t cand = 0; cand < M.N; ++cand) {
        std::vector<std::vector<Elem>> pws;
        std::vector<Elem> v(M.N, R.zero());
        v[cand] = R.one();
        for (uint32_t j = 0; j < n; ++j) {
            pws.push_back(v);
            v = M.apply_pi(v);
        }
        GfMat A(size_t(M.N) * dr, size_t(n) * dr);
        for (uint32_t j = 0; j < n; ++j)
            for (size_t t = 0; t < dr; ++t) {
                Elem c = R.fq_basis_elem(t);
                for (size_t i = 0; i < M.N; ++i) {
                    gf_vec cc = R.to_gfq(R.mul(c, pws[j][i]));
                    for (size_t t2 = 0; t2 < dr; ++t2)
                        A.at(i * dr + t2, size_t(j) * dr + t) = cc[t2];
                }
            }
        if (rank(R.fq(), A) != size_t(n) * dr) continue;
        // coordinates of a vector in the {pi^j u} basis
        auto coords_of = [&](const std::vector<Elem>& w) {
            gf_vec flat;
            for (const Elem& e : w) {
                gf_vec cc = R.to_gfq(e);
                flat.insert(flat.end(), cc.begin(), cc.end());
            }
            auto sol = solve(R.fq(), A, flat);
            if (!sol) fail(errc::not_adapted, "generator basis failed to span");
            std::vector<Elem> out(n);
            for (uint32_t j = 0; j < n; ++j)
                out[j] = R.from_gfq(gf_vec(sol->begin() + size_t(j) * dr, sol->begin() + size_t(j + 1) * dr));
            return out;
        };
        QuotientLine line;
        line.E = E;
        line.n = n;
        std::vector<Elem> u(M.N, R.zero());
        u[cand] = R.one();
        line.alpha = coords_of(M.apply_phi(u));
        std::vector<Elem> e0(M.N, R.zero());
        e0[0] = R.one(); // class of tau^0 = image of the shtuka generator
        line.lambda = coords_of(e0);
        validate_line(line);
        return line;
    }
    return std::nullopt;
}

std::optional<std::vector<Elem>> beta_recursion(const Ring& R, const std::vector<Elem>& alpha) {
    size_t n = alpha.size();
    std::vector<Elem> beta;
    auto b0 = kummer_root(R, alpha[0]);
    if (!b0) return std::nullopt;
    beta.push_back(*b0);
    for (size_t j = 1; j < n; ++j) {
        Elem rhs = R.zero();
        for (size_t l = 1; l <= j; ++l) rhs = R.add(rhs, R.mul(alpha[l], beta[j - l]));
        // x^q - alpha_0 x = rhs
        AffineSolution sol = additive_solve(R, {R.neg(alpha[0]), R.one()}, rhs);
        if (!sol.solvable) return std::nullopt;
        // canonical representative: reduce the particular solution by the
        // kernel basis (RREF pivots zeroed)
        Subspace K(R.fq(), R.dim_fq());
        for (const Elem& k : sol.kernel) K.insert(R.to_gfq(k));
        beta.push_back(R.from_gfq(K.reduce(R.to_gfq(sol.particular))));
    }
    return beta;
}

MStructure build_cyclic_generator(const QuotientLine& line, uint32_t s_bound) {
    const RingPtr& base = line.E.ring;
    uint32_t n = line.n;
    if (n < 1) fail(errc::dimension_mismatch, "level must be >= 1");
    uint32_t smax = (base->s() > 1) ? 1 : s_bound;
    for (uint32_t s = 1; s <= smax; ++s) {
        RingPtr ext = extension_of(base, s);
        std::vector<Elem> alpha(n), lambda(n);
        for (uint32_t j = 0; j < n; ++j) {
            alpha[j] = ext->embed_base(line.alpha[j]);
            lambda[j] = ext->embed_base(line.lambda[j]);
        }
        auto beta = beta_recursion(*ext, alpha);
        if (!beta) continue;
        Elem P = ext->zero();
        for (uint32_t j = 0; j < n; ++j)
            P = ext->add(P, ext->mul(lambda[j], (*beta)[n - 1 - j]));
        DrinfeldModule Es = (s == 1 && base->s() > 1) ? line.E : extend_module(line.E, s);
        return make_mstructure(MShape({n}), Es, {P});
    }
    fail(errc::extension_bound_exceeded, "generator recursion found no roots up to the bound");
}

// --- Gamma_0 flags ---

Gamma0Flag make_gamma0(DrinfeldModule E, uint32_t n, std::vector<RPoly> divisors,
                       std::optional<MStructure> witness) {
    Gamma0Flag flag{std::move(E), n, std::move(divisors), std::move(witness)};
    if (n == 0) {
        if (!flag.divisors.empty()) fail(errc::dimension_mismatch, "level-0 flag must be empty");
        return flag;
    }
    const RingPtr& R = flag.E.ring;
    RPoly fn = torsion_divisor(flag.E, n);
    uint64_t deg_step = 1; // q^n per layer
    for (uint32_t i = 0; i < n; ++i) deg_step *= R->q();
    uint64_t expect = deg_step;
    for (size_t i = 0; i < flag.divisors.size(); ++i) {
        const RPoly& g = flag.divisors[i];
        if (!g.is_monic()) fail(errc::not_monic, "flag divisor must be monic");
        if (!g.is_additive()) fail(errc::not_additive, "flag divisor must be additive");
        if (uint64_t(g.degree()) != expect)
            fail(errc::dimension_mismatch, "flag divisor " + std::to_string(i + 1) +
                                               " has degree != q^{n*i}");
        if (!divisor_e_stable(flag.E, g))
            fail(errc::kernel_not_stable, "flag divisor kernel is not e-stable");
        if (i && !is_subscheme(flag.divisors[i - 1], g))
            fail(errc::not_divisible, "flag divisors do not form a chain");
        expect *= deg_step;
    }
    if (!flag.divisors.empty() && !is_subscheme(flag.divisors.back(), fn))
        fail(errc::not_divisible, "top flag divisor does not divide the torsion divisor");
    if (flag.witness) {
        const MStructure& w = *flag.witness;
        if (!w.E.ring->same_as(*R)) fail(errc::ring_mismatch, "witness must live over the flag ring");
        if (w.shape.factors() != flag.divisors.size())
            fail(errc::dimension_mismatch, "witness must have r-1 generators");
        for (uint32_t e : w.shape.exps)
            if (e != n) fail(errc::dimension_mismatch, "witness shape must be (n,...,n)");
        for (size_t i = 0; i < flag.divisors.size(); ++i) {
            std::vector<uint32_t> caps(w.shape.factors(), 0);
            for (size_t j = 0; j <= i; ++j) caps[j] = n;
            if (!(divisor_of(w, caps) == flag.divisors[i]))
                fail(errc::no_witness, "witness restriction does not generate flag divisor " +
                                           std::to_string(i + 1));
        }
    }
    return flag;
}

bool check_gamma0(const Gamma0Flag& flag, uint32_t) {
    if (flag.n == 0) return true;
    const RingPtr& R = flag.E.ring;
    uint32_t r = flag.rank();
    RPoly prev = RPoly::monomial(R, R->one(), 1); // g_0 = t
    for (uint32_t i = 1; i <= r; ++i) {
        RPoly gi = (i <= r - 1) ? flag.divisors[i - 1] : torsion_divisor(flag.E, flag.n);
        auto [Ei, psi] = try_quotient(flag.E, prev);
        SkewPoly wi = skew_of_additive(gi);
        auto [quot, rem] = wi.right_divmod(psi.psi);
        if (!rem.is_zero()) fail(errc::not_divisible, "flag layer does not factor");
        if (!is_cyclic(Ei, quot.to_additive(), flag.n)) return false;
        prev = gi;
    }
    return true;
}

RPoly canonical_submodule(const Gamma0Flag& flag, const std::vector<uint32_t>& mbar) {
    if (!flag.witness) fail(errc::no_witness, "canonical submodule needs a generator witness");
    if (mbar.size() != flag.divisors.size())
        fail(errc::dimension_mismatch, "mbar must have r-1 entries");
    for (size_t i = 0; i < mbar.size(); ++i) {
        if (mbar[i] > flag.n) fail(errc::dimension_mismatch, "mbar entry exceeds the level");
        if (i && mbar[i - 1] < mbar[i]) fail(errc::dimension_mismatch, "mbar must be decreasing");
    }
    return divisor_of(*flag.witness, mbar);
}

RPoly pushforward_divisor(const RPoly& g, const Isogeny& psi) {
    SkewPoly w = skew_of_additive(g);
    auto [quot, rem] = w.right_divmod(psi.psi);
    if (!rem.is_zero()) fail(errc::not_divisible, "divisor does not contain the isogeny kernel");
    return quot.to_additive().make_monic();
}

std::pair<DrinfeldModule, Gamma0Flag> level_map(const Gamma0Flag& flag,
                                                const std::vector<uint32_t>& mbar, uint32_t ntilde,
                                                const std::vector<uint32_t>& tau) {
    if (!flag.witness) fail(errc::no_witness, "level map needs a generator witness");
    uint32_t r = flag.rank();
    if (mbar.size() != size_t(r) - 1 || tau.size() != size_t(r) - 1)
        fail(errc::dimension_mismatch, "mbar and tau must have r-1 entries");
    // tau must be a permutation of 0..r-2
    {
        std::vector<bool> seen(r - 1, false);
        for (uint32_t t : tau) {
            if (t >= r - 1 || seen[t]) fail(errc::invalid_subsimplex, "tau is not a permutation");
            seen[t] = true;
        }
    }
    // all vertices mbar + ntilde_tau^{(i)} must stay in the simplex
    for (uint32_t i = 0; i <= r - 1; ++i) {
        std::vector<uint32_t> v = mbar;
        for (uint32_t j = 0; j < i; ++j) v[tau[j]] += ntilde;
        for (size_t t = 0; t < v.size(); ++t) {
            if (v[t] > flag.n) fail(errc::invalid_subsimplex, "vertex exceeds the level");
            if (t && v[t - 1] < v[t]) fail(errc::invalid_subsimplex, "vertex is not decreasing");
        }
    }

    RPoly h = canonical_submodule(flag, mbar);
    auto [Em, psi] = try_quotient(flag.E, h);
    if (ntilde == 0) return {Em, make_gamma0(Em, 0, {})};

    const MStructure& w = *flag.witness;
    std::vector<RPoly> new_divisors;
    for (uint32_t i = 1; i <= r - 1; ++i) {
        std::vector<uint32_t> v = mbar;
        for (uint32_t j = 0; j < i; ++j) v[tau[j]] += ntilde;
        new_divisors.push_back(pushforward_divisor(divisor_of(w, v), psi));
    }
    std::vector<Elem> new_gens;
    for (uint32_t j = 0; j < r - 1; ++j) {
        Elem pt = eval_Tj(flag.E, flag.n - mbar[tau[j]] - ntilde, w.gens[tau[j]]);
        new_gens.push_back(psi.psi.eval_additive(pt));
    }
    MStructure new_witness =
        make_mstructure(MShape(std::vector<uint32_t>(r - 1, ntilde)), Em, std::move(new_gens));
    Gamma0Flag out = make_gamma0(Em, ntilde, std::move(new_divisors), std::move(new_witness));
    return {Em, std::move(out)};
}

NaiveFlag parahoric_roundtrip(const Gamma0Flag& flag) {
    if (flag.n != 1) fail(errc::dimension_mismatch, "parahoric comparison needs n = 1");
    const RingPtr& R = flag.E.ring;
    uint32_t r = flag.rank();
    NaiveFlag out;
    out.ring = R;
    out.n = 1;
    out.r = r;
    out.top = restrict_drinfeld(flag.E, 1);
    // quot[j] = shtuka of g_{r-1-j}
    for (uint32_t j = 0; j < r - 1; ++j) {
        const RPoly& g = flag.divisors[r - 2 - j];
        out.quot.push_back(shtuka_of_divisor(flag.E, 1, g));
    }
    for (uint32_t j = 0; j < r - 1; ++j) {
        const TorsionShtuka& src = (j == 0) ? out.top : out.quot[j - 1];
        const TorsionShtuka& dst = out.quot[j];
        SkewPoly w = skew_of_additive(flag.divisors[r - 2 - j]);
        RMat P(*R, dst.N, src.N);
        for (size_t a = 0; a < src.N; ++a) {
            SkewPoly ta = SkewPoly::tau_power(R, a);
            SkewPoly rem = ta.right_divmod(w).second;
            for (size_t i = 0; i < dst.N; ++i) P.at(i, a) = rem.coeff(i);
        }
        out.proj.push_back(std::move(P));
    }
    return out;
}

} // namespace dlv
