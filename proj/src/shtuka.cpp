#include "dlv/shtuka.hpp"

#include <map>

namespace dlv {

std::vector<Elem> rmat_apply(const Ring& R, const RMat& M, const std::vector<Elem>& v) {
    if (v.size() != M.cols) fail(errc::dimension_mismatch, "rmat_apply: size mismatch");
    std::vector<Elem> out(M.rows, R.zero());
    for (size_t i = 0; i < M.rows; ++i)
        for (size_t j = 0; j < M.cols; ++j) {
            if (R.is_zero(M.at(i, j)) || R.is_zero(v[j])) continue;
            out[i] = R.add(out[i], R.mul(M.at(i, j), v[j]));
        }
    return out;
}

RMat rmat_mul(const Ring& R, const RMat& A, const RMat& B) {
    if (A.cols != B.rows) fail(errc::dimension_mismatch, "rmat_mul: size mismatch");
    RMat C(R, A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t l = 0; l < A.cols; ++l) {
            if (R.is_zero(A.at(i, l))) continue;
            for (size_t j = 0; j < B.cols; ++j) {
                if (R.is_zero(B.at(l, j))) continue;
                C.at(i, j) = R.add(C.at(i, j), R.mul(A.at(i, l), B.at(l, j)));
            }
        }
    return C;
}

RMat rmat_frobq(const Ring& R, const RMat& A) {
    RMat B = A;
    for (Elem& e : B.a) e = R.frobq(e);
    return B;
}

bool rmat_is_zero(const Ring& R, const RMat& A) {
    for (const Elem& e : A.a)
        if (!R.is_zero(e)) return false;
    return true;
}

GfMat rmat_to_gfq(const Ring& R, const RMat& M) {
    size_t dr = R.dim_fq();
    GfMat out(M.rows * dr, M.cols * dr);
    for (size_t j = 0; j < M.cols; ++j)
        for (size_t t = 0; t < dr; ++t) {
            std::vector<Elem> v(M.cols, R.zero());
            v[j] = R.fq_basis_elem(t);
            std::vector<Elem> w = rmat_apply(R, M, v);
            for (size_t i = 0; i < M.rows; ++i) {
                gf_vec col = R.to_gfq(w[i]);
                for (size_t t2 = 0; t2 < dr; ++t2) out.at(i * dr + t2, j * dr + t) = col[t2];
            }
        }
    return out;
}

std::vector<Elem> TorsionShtuka::apply_phi(const std::vector<Elem>& v) const {
    std::vector<Elem> w = v;
    for (Elem& e : w) e = ring->frobq(e);
    return rmat_apply(*ring, phi, w);
}

std::vector<Elem> TorsionShtuka::apply_pi(const std::vector<Elem>& v) const {
    return rmat_apply(*ring, pi, v);
}

void TorsionShtuka::validate() const {
    if (phi.rows != N || phi.cols != N || pi.rows != N || pi.cols != N)
        fail(errc::dimension_mismatch, "shtuka matrices must be N x N");
    RMat pw = pi;
    for (uint32_t t = 1; t < n; ++t) pw = rmat_mul(*ring, pw, pi);
    if (!rmat_is_zero(*ring, pw)) fail(errc::dimension_mismatch, "pi^n is nonzero");
    // phi(pi b_j) == pi phi(b_j) for every basis vector
    for (size_t j = 0; j < N; ++j) {
        std::vector<Elem> e(N, ring->zero());
        e[j] = ring->one();
        std::vector<Elem> lhs = apply_phi(apply_pi(e));
        std::vector<Elem> rhs = apply_pi(apply_phi(e));
        if (lhs != rhs) fail(errc::dimension_mismatch, "phi is not pi-equivariant");
    }
}

bool TorsionShtuka::phi_invertible() const {
    GfMat M = rmat_to_gfq(*ring, phi);
    return rank(ring->fq(), M) == M.rows;
}

namespace {

std::vector<Elem> skew_coords(const Ring& R, const SkewPoly& f, size_t N) {
    std::vector<Elem> out(N, R.zero());
    for (size_t i = 0; i <= size_t(f.degree()) && i < N; ++i) out[i] = f.coeff(i);
    return out;
}

TorsionShtuka quotient_shtuka(const DrinfeldModule& E, uint32_t n, const SkewPoly& w) {
    const RingPtr& R = E.ring;
    size_t N = size_t(w.degree());
    TorsionShtuka F;
    F.ring = R;
    F.n = n;
    F.N = uint32_t(N);
    F.phi = RMat(*R, N, N);
    F.pi = RMat(*R, N, N);
    for (size_t j = 0; j < N; ++j) {
        SkewPoly tj = SkewPoly::tau_power(R, j + 1);
        std::vector<Elem> col = skew_coords(*R, tj.right_divmod(w).second, N);
        for (size_t i = 0; i < N; ++i) F.phi.at(i, j) = col[i];
        SkewPoly te = SkewPoly::tau_power(R, j) * E.eT;
        std::vector<Elem> pcol = skew_coords(*R, te.right_divmod(w).second, N);
        for (size_t i = 0; i < N; ++i) F.pi.at(i, j) = pcol[i];
    }
    F.validate();
    return F;
}

} // namespace

TorsionShtuka restrict_drinfeld(const DrinfeldModule& E, uint32_t n) {
    if (n < 1) fail(errc::dimension_mismatch, "torsion level must be >= 1");
    return quotient_shtuka(E, n, action_Tn(E, n));
}

TorsionShtuka shtuka_of_divisor(const DrinfeldModule& E, uint32_t n, const RPoly& g) {
    if (!g.is_monic()) fail(errc::not_monic, "divisor must be monic");
    SkewPoly w = skew_of_additive(g);
    if (w.degree() < 1) fail(errc::dimension_mismatch, "divisor cuts out the zero module");
    if (!action_Tn(E, n).right_divmod(w).second.is_zero())
        fail(errc::not_divisible, "divisor does not divide the n-torsion");
    if (!(w * E.eT).right_divmod(w).second.is_zero())
        fail(errc::kernel_not_stable, "divisor kernel is not stable under e_T");
    return quotient_shtuka(E, n, w);
}

GroupSchemeAlgebra dr_q(const TorsionShtuka& F) {
    GroupSchemeAlgebra G;
    G.ring = F.ring;
    G.N = F.N;
    G.rel = F.phi;
    return G;
}

double GroupSchemeAlgebra::fq_dimension() const {
    double v = ring->dim_fq();
    for (uint32_t i = 0; i < N; ++i) v *= ring->q();
    return v;
}

namespace {

// Nullity-based reduced point count of y_j^q = sum_i a_ij y_i over the field
// part of `where`; relation entries are reduced mod nilpotents and embedded.
size_t semilinear_count(const GroupSchemeAlgebra& G, const RingPtr& where) {
    const Ring& S = *where;
    const Ring& R0 = *G.ring;
    size_t N = G.N;
    size_t fdim = S.field_degree();
    std::vector<Elem> red(N * N);
    for (size_t t = 0; t < N * N; ++t) red[t] = S.embed_base(R0.zeta_component(G.rel.a[t], 0));
    GfMat M(fdim * N, fdim * N);
    for (size_t j = 0; j < N; ++j)
        for (size_t t = 0; t < fdim; ++t) {
            Elem b = S.fq_basis_elem(t);
            Elem bq = S.frobq(b);
            // relation j2 sees delta_{j2,j} b^q - rel_{j,j2} b
            for (size_t j2 = 0; j2 < N; ++j2) {
                Elem v = S.mul(S.neg(red[j * N + j2]), b);
                if (j2 == j) v = S.add(v, bq);
                gf_vec col = S.to_gfq(v);
                for (size_t i = 0; i < fdim; ++i) M.at(j2 * fdim + i, j * fdim + t) = col[i];
            }
        }
    size_t nu = M.cols - rank(S.fq(), M);
    size_t count = 1;
    for (size_t i = 0; i < nu; ++i) count *= S.q();
    return count;
}

} // namespace

size_t gsa_count_here(const GroupSchemeAlgebra& G) { return semilinear_count(G, G.ring); }

size_t gsa_count(const GroupSchemeAlgebra& G, uint32_t s) {
    return semilinear_count(G, extension_of(G.ring, s));
}

std::pair<uint32_t, size_t> gsa_stabilized_count(const GroupSchemeAlgebra& G, uint32_t s_max) {
    std::map<uint32_t, size_t> counts;
    auto at = [&](uint32_t s) {
        auto it = counts.find(s);
        if (it != counts.end()) return it->second;
        size_t c = gsa_count(G, s);
        counts.emplace(s, c);
        return c;
    };
    for (uint32_t s = 1; s <= s_max; ++s) {
        size_t c = at(s);
        if (at(2 * s) == c && at(4 * s) == c) return {s, c};
    }
    fail(errc::bound_too_small, "group scheme point count not stabilized");
}

namespace {

gf_vec flat_coords(const Ring& R, const std::vector<Elem>& v) {
    gf_vec out;
    out.reserve(v.size() * R.dim_fq());
    for (const Elem& e : v) {
        gf_vec c = R.to_gfq(e);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<Elem> unflat_coords(const Ring& R, const gf_vec& v, size_t N) {
    size_t dr = R.dim_fq();
    std::vector<Elem> out(N);
    for (size_t i = 0; i < N; ++i)
        out[i] = R.from_gfq(gf_vec(v.begin() + i * dr, v.begin() + (i + 1) * dr));
    return out;
}

// subspace (zeta, pi) * L inside the coordinate space of L
Subspace max_ideal_times(const TorsionShtuka& L) {
    const Ring& R = *L.ring;
    size_t dr = R.dim_fq();
    Subspace S(R.fq(), size_t(L.N) * dr);
    Elem z = R.zeta();
    for (size_t b = 0; b < L.N; ++b)
        for (size_t t = 0; t < dr; ++t) {
            std::vector<Elem> v(L.N, R.zero());
            v[b] = R.fq_basis_elem(t);
            if (R.k() > 1) {
                std::vector<Elem> zv(L.N, R.zero());
                zv[b] = R.mul(z, v[b]);
                S.insert(flat_coords(R, zv));
            }
            S.insert(flat_coords(R, L.apply_pi(v)));
        }
    return S;
}

// inserts the R-span of v; returns the dimension growth
size_t push_rspan(const Ring& R, Subspace& T, const std::vector<Elem>& v) {
    size_t before = T.dim();
    for (size_t t = 0; t < R.dim_fq(); ++t) {
        std::vector<Elem> w = v;
        Elem c = R.fq_basis_elem(t);
        for (Elem& x : w) x = R.mul(c, x);
        T.insert(flat_coords(R, w));
    }
    return T.dim() - before;
}

std::vector<linear_map> rmodule_maps(const RingPtr& Rp, const TorsionShtuka& L, bool with_pi) {
    const Ring& R = *Rp;
    std::vector<Elem> gens;
    gens.push_back(R.x_gen());
    if (R.s() > 1) gens.push_back(R.u_gen());
    if (R.k() > 1) gens.push_back(R.zeta());
    std::vector<linear_map> maps;
    for (const Elem& g : gens)
        maps.push_back([Rp, g, N = size_t(L.N)](const gf_vec& v) {
            std::vector<Elem> e = unflat_coords(*Rp, v, N);
            for (Elem& x : e) x = Rp->mul(g, x);
            return flat_coords(*Rp, e);
        });
    if (with_pi) {
        const TorsionShtuka* Lp = &L;
        maps.push_back([Rp, Lp](const gf_vec& v) {
            std::vector<Elem> e = unflat_coords(*Rp, v, Lp->N);
            return flat_coords(*Rp, Lp->apply_pi(e));
        });
    }
    return maps;
}

// adapted basis of quot[0]: first i vectors project to a basis of L_i
std::vector<std::vector<Elem>> adapted_basis(const NaiveFlag& flag, bool reverse_search) {
    const Ring& R = *flag.ring;
    uint32_t r = flag.r;
    const TorsionShtuka& L = flag.quot[0];
    size_t res_deg = R.field_degree();
    std::vector<RMat> down(flag.quot.size());
    for (size_t j = 1; j < flag.quot.size(); ++j)
        down[j] = (j == 1) ? flag.proj[1] : rmat_mul(R, flag.proj[j], down[j - 1]);
    std::vector<size_t> cand_order(L.N);
    for (size_t t = 0; t < L.N; ++t) cand_order[t] = reverse_search ? L.N - 1 - t : t;
    std::vector<std::vector<Elem>> adapted;
    for (uint32_t i = 1; i <= r - 1; ++i) {
        size_t layer = r - 1 - i; // quot[layer] = L_i
        const TorsionShtuka& Li = flag.quot[layer];
        Subspace S = max_ideal_times(Li);
        auto project = [&](const std::vector<Elem>& v) {
            return (layer == 0) ? v : rmat_apply(R, down[layer], v);
        };
        for (const auto& e : adapted) push_rspan(R, S, project(e));
        bool found = false;
        for (size_t t : cand_order) {
            std::vector<Elem> cand(L.N, R.zero());
            cand[t] = R.one();
            Subspace trial = S;
            if (push_rspan(R, trial, project(cand)) == res_deg) {
                adapted.push_back(cand);
                found = true;
                break;
            }
        }
        if (!found) fail(errc::not_adapted, "no adapted basis vector for layer " + std::to_string(i));
    }
    return adapted;
}

} // namespace

bool shtuka_free_of_rank(const TorsionShtuka& L, uint32_t rank_over_rpi) {
    const Ring& R = *L.ring;
    if (size_t(L.N) != size_t(L.n) * rank_over_rpi) return false;
    Subspace S = max_ideal_times(L);
    size_t res_deg = R.field_degree();
    size_t codim = size_t(L.N) * R.dim_fq() - S.dim();
    if (codim % res_deg) return false;
    return codim / res_deg == rank_over_rpi;
}

bool check_naive_flag(const NaiveFlag& flag, std::string* diagnostic) {
    auto report = [&](const std::string& msg) {
        if (diagnostic) *diagnostic = msg;
        return false;
    };
    const Ring& R = *flag.ring;
    uint32_t r = flag.r;
    if (r < 2) return report("flag rank must be >= 2");
    if (flag.quot.size() != size_t(r) - 1 || flag.proj.size() != size_t(r) - 1)
        return report("flag has wrong shape");
    if (flag.top.N != flag.n * r) return report("top shtuka has wrong rank");
    flag.top.validate();
    for (size_t j = 0; j < flag.quot.size(); ++j) {
        const TorsionShtuka& L = flag.quot[j];
        uint32_t want = r - 1 - uint32_t(j);
        L.validate();
        if (!shtuka_free_of_rank(L, want))
            return report("layer " + std::to_string(want) + " is not free of rank " +
                          std::to_string(want) + " over R[pi]/(pi^n)");
        const TorsionShtuka& src = (j == 0) ? flag.top : flag.quot[j - 1];
        const RMat& P = flag.proj[j];
        if (P.rows != L.N || P.cols != src.N) return report("projection has wrong shape");
        GfMat Pq = rmat_to_gfq(R, P);
        if (rank(R.fq(), Pq) != size_t(L.N) * R.dim_fq())
            return report("projection onto layer " + std::to_string(want) + " is not surjective");
        RMat lhs = rmat_mul(R, L.phi, rmat_frobq(R, P));
        RMat rhs = rmat_mul(R, P, src.phi);
        if (!(lhs == rhs)) return report("phi does not descend to layer " + std::to_string(want));
        RMat plhs = rmat_mul(R, L.pi, P);
        RMat prhs = rmat_mul(R, P, src.pi);
        if (!(plhs == prhs)) return report("pi does not descend to layer " + std::to_string(want));
    }
    return true;
}

Subspace sub_quotient_kernel(const NaiveFlag& flag, const std::vector<uint32_t>& mbar,
                             bool reverse_basis_search) {
    const RingPtr& Rp = flag.ring;
    const Ring& R = *Rp;
    uint32_t r = flag.r;
    if (mbar.size() != size_t(r) - 1) fail(errc::dimension_mismatch, "mbar has wrong length");
    for (size_t i = 0; i + 1 < mbar.size(); ++i)
        if (mbar[i] < mbar[i + 1]) fail(errc::dimension_mismatch, "mbar must be decreasing");
    if (!mbar.empty() && mbar[0] > flag.n) fail(errc::dimension_mismatch, "mbar entry exceeds n");

    const TorsionShtuka& L = flag.quot[0];
    std::vector<std::vector<Elem>> adapted = adapted_basis(flag, reverse_basis_search);

    std::vector<gf_vec> seeds;
    for (uint32_t i = 0; i < r - 1; ++i) {
        if (mbar[i] >= flag.n) continue;
        std::vector<Elem> v = adapted[i];
        for (uint32_t t = 0; t < mbar[i]; ++t) v = L.apply_pi(v);
        seeds.push_back(flat_coords(R, v));
    }
    Subspace U = span_closure(R.fq(), size_t(L.N) * R.dim_fq(), seeds, rmodule_maps(Rp, L, true));
    for (const gf_vec& b : U.basis()) {
        std::vector<Elem> v = unflat_coords(R, b, L.N);
        if (!U.contains(flat_coords(R, L.apply_phi(v))))
            fail(errc::kernel_not_stable, "sub-quotient kernel is not phi-stable");
    }
    return U;
}

TorsionShtuka sub_quotient_L_m(const NaiveFlag& flag, const std::vector<uint32_t>& mbar) {
    const RingPtr& Rp = flag.ring;
    const Ring& R = *Rp;
    uint32_t r = flag.r;
    const TorsionShtuka& L = flag.quot[0];
    size_t dr = R.dim_fq();

    Subspace U = sub_quotient_kernel(flag, mbar, false);
    std::vector<std::vector<Elem>> adapted = adapted_basis(flag, false);

    // coset basis pi^l e_i, l < m_i
    std::vector<std::vector<Elem>> coset;
    for (uint32_t i = 0; i < r - 1; ++i) {
        std::vector<Elem> v = adapted[i];
        for (uint32_t l = 0; l < mbar[i]; ++l) {
            coset.push_back(v);
            v = L.apply_pi(v);
        }
    }
    size_t Nq = coset.size();
    size_t ambient = size_t(L.N) * dr;
    if (U.dim() + Nq * dr != ambient)
        fail(errc::not_adapted, "sub-quotient dimensions are inconsistent");

    GfMat A(ambient, Nq * dr + U.dim());
    for (size_t c = 0; c < Nq; ++c)
        for (size_t t = 0; t < dr; ++t) {
            std::vector<Elem> w = coset[c];
            Elem sc = R.fq_basis_elem(t);
            for (Elem& x : w) x = R.mul(sc, x);
            gf_vec col = flat_coords(R, w);
            for (size_t i = 0; i < ambient; ++i) A.at(i, c * dr + t) = col[i];
        }
    for (size_t c = 0; c < U.dim(); ++c)
        for (size_t i = 0; i < ambient; ++i) A.at(i, Nq * dr + c) = U.basis()[c][i];

    auto coset_coords = [&](const std::vector<Elem>& v) {
        auto sol = solve(R.fq(), A, flat_coords(R, v));
        if (!sol) fail(errc::not_adapted, "coset basis does not span the quotient");
        std::vector<Elem> out(Nq);
        for (size_t c = 0; c < Nq; ++c)
            out[c] = R.from_gfq(gf_vec(sol->begin() + c * dr, sol->begin() + (c + 1) * dr));
        return out;
    };

    TorsionShtuka Q;
    Q.ring = Rp;
    Q.n = flag.n;
    Q.N = uint32_t(Nq);
    Q.phi = RMat(R, Nq, Nq);
    Q.pi = RMat(R, Nq, Nq);
    for (size_t j = 0; j < Nq; ++j) {
        std::vector<Elem> pc = coset_coords(L.apply_phi(coset[j]));
        std::vector<Elem> qc = coset_coords(L.apply_pi(coset[j]));
        for (size_t i = 0; i < Nq; ++i) {
            Q.phi.at(i, j) = pc[i];
            Q.pi.at(i, j) = qc[i];
        }
    }
    if (Nq) Q.validate();
    return Q;
}

} // namespace dlv
