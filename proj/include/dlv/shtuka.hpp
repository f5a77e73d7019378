#pragma once

#include "dlv/drinfeld.hpp"

namespace dlv {

// Dense matrix with entries in R.
struct RMat {
    size_t rows = 0, cols = 0;
    std::vector<Elem> a;

    RMat() = default;
    RMat(const Ring& R, size_t r, size_t c) : rows(r), cols(c), a(r * c, R.zero()) {}
    Elem& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Elem& at(size_t i, size_t j) const { return a[i * cols + j]; }
    bool operator==(const RMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

std::vector<Elem> rmat_apply(const Ring& R, const RMat& M, const std::vector<Elem>& v);
RMat rmat_mul(const Ring& R, const RMat& A, const RMat& B);
RMat rmat_frobq(const Ring& R, const RMat& A);
bool rmat_is_zero(const Ring& R, const RMat& A);
// F_q-matrix of the R-linear map v -> M v.
GfMat rmat_to_gfq(const Ring& R, const RMat& M);

// p^n-torsion shtuka: free R-module of rank N with a sigma-semilinear phi
// (column j = coordinates of phi(b_j)) and an R-linear nilpotent pi-action.
struct TorsionShtuka {
    RingPtr ring;
    uint32_t n = 0;
    uint32_t N = 0;
    RMat phi;
    RMat pi;

    // phi applied to a coordinate vector: phi * v^(q)
    std::vector<Elem> apply_phi(const std::vector<Elem>& v) const;
    std::vector<Elem> apply_pi(const std::vector<Elem>& v) const;
    // pi^n = 0 and phi(pi v) = pi phi(v) on basis vectors
    void validate() const;
    bool phi_invertible() const;
};

// Pullback of (the module of) E to D_n: basis tau^i, i < nr, phi = left
// multiplication by tau, pi = right multiplication by e_T.
TorsionShtuka restrict_drinfeld(const DrinfeldModule& E, uint32_t n);

// Quotient shtuka of a subgroup divisor g | f_n with e-stable kernel:
// R{tau}/R{tau}*skew(g) with the same phi/pi recipe.
TorsionShtuka shtuka_of_divisor(const DrinfeldModule& E, uint32_t n, const RPoly& g);

// Presentation R[Y_1..Y_N]/(Y_j^q - sum_i a_ij Y_i) of the associated group
// scheme; a = the phi matrix.
struct GroupSchemeAlgebra {
    RingPtr ring;
    uint32_t N = 0;
    RMat rel;

    // F_q-dimension of the coordinate algebra: q^N * dim_Fq(R)
    double fq_dimension() const;
};

GroupSchemeAlgebra dr_q(const TorsionShtuka& F);

// Reduced point count of the group scheme over the ring itself.
size_t gsa_count_here(const GroupSchemeAlgebra& G);
// Reduced point count over the degree-s extension (base rings only).
size_t gsa_count(const GroupSchemeAlgebra& G, uint32_t s);
// Smallest s with two stable doublings, as for kernel_points.
std::pair<uint32_t, size_t> gsa_stabilized_count(const GroupSchemeAlgebra& G, uint32_t s_max = 12);

// Flag of quotient torsion shtukas L_{r-1} <- ... <- L_1 with L_i of rank i
// over R[pi]/(pi^n). quot[j] = L_{r-1-j}; proj[0] maps top onto quot[0],
// proj[j] maps quot[j-1] onto quot[j].
struct NaiveFlag {
    RingPtr ring;
    uint32_t n = 1, r = 0;
    TorsionShtuka top;
    std::vector<TorsionShtuka> quot;
    std::vector<RMat> proj;
};

bool check_naive_flag(const NaiveFlag& flag, std::string* diagnostic = nullptr);

// L free of rank `rank` over R[pi]/(pi^n): dimension count plus minimal
// generator count over the local ring R[pi]/(pi^n).
bool shtuka_free_of_rank(const TorsionShtuka& L, uint32_t rank);

// phi-stable quotient L_mbar = sum R[pi]/(pi^{m_i}) e_i of quot[0] for an
// adapted basis (e_i); mbar decreasing, entries <= n.
TorsionShtuka sub_quotient_L_m(const NaiveFlag& flag, const std::vector<uint32_t>& mbar);

// The canonical submodule span used by sub_quotient_L_m (exposed so tests can
// compare two adapted-basis runs: equal subspaces mean equal quotients).
Subspace sub_quotient_kernel(const NaiveFlag& flag, const std::vector<uint32_t>& mbar, bool reverse_basis_search);

} // namespace dlv
