#pragma once

#include "dlv/shtuka.hpp"

namespace dlv {

// --- Cartier divisors in A^1 (monic polynomials) ---

RPoly point_divisor(const RingPtr& R, const Elem& P); // t - P
// D is a closed subscheme of D2, i.e. D divides D2 exactly.
bool is_subscheme(const RPoly& D, const RPoly& D2);
// ker(g) is stable under e_T (right division test).
bool divisor_e_stable(const DrinfeldModule& E, const RPoly& g);

// --- M-structures ---

// M = p^{-n_1}/O + ... + p^{-n_m}/O, exponents decreasing and positive.
struct MShape {
    std::vector<uint32_t> exps;
    explicit MShape(std::vector<uint32_t> e = {});
    size_t factors() const { return exps.size(); }
    uint32_t level() const { return exps.empty() ? 0 : exps[0]; }
};

struct MStructure {
    MShape shape;
    DrinfeldModule E;
    std::vector<Elem> gens; // P_i = iota(pi^{-n_i}), one per cyclic factor
};

// Validates torsion membership of the generators.
MStructure make_mstructure(MShape shape, DrinfeldModule E, std::vector<Elem> gens);

// prod_{alpha in M'} (t - iota(alpha)); caps (optional) restrict factor i to
// p^{-min(n_i, caps_i)}/O.
RPoly divisor_of(const MStructure& iota, const std::vector<uint32_t>& caps = {});

// The p-torsion restriction cuts a subscheme of E[p].
bool is_m_structure(const MStructure& iota);

// Divisor of the full module; checked to be additive and e-stable.
RPoly generated_subscheme(const MStructure& iota);

// --- freeness of finite R-modules ---

// B given as ambient F_q-space modulo `relations`, R acting through the maps;
// true iff B is free of rank r over the local ring R.
bool module_free_of_rank(const Ring& R, size_t ambient_dim, const Subspace& relations,
                         const linear_map* mult_zeta, size_t r);

// --- scheme of generators and cyclicity ---

struct GeneratorScheme {
    RingPtr ring;
    uint32_t n = 0;
    size_t ambient_rank = 0; // q^{nr}, the R-rank of the ambient algebra B
    Subspace ideal;          // relations inside B as an F_q-subspace
    GeneratorScheme(RingPtr r, uint32_t level, size_t rank, Subspace id)
        : ring(std::move(r)), n(level), ambient_rank(rank), ideal(std::move(id)) {}
    size_t fq_dim() const { return ambient_rank * ring->dim_fq() - ideal.dim(); }
    // R-rank when free; dimension count otherwise meaningless
    bool free_of_rank(size_t r) const;
};

// B = R[Q]/(f_n(Q)) modulo the ideal forcing Q to be a generator of ker(g).
GeneratorScheme generator_scheme(const DrinfeldModule& E, const RPoly& g, uint32_t n);

// H = ker(g) is p^n-cyclic iff the scheme of generators is free of rank
// q^{n-1}(q-1).
bool is_cyclic(const DrinfeldModule& E, const RPoly& g, uint32_t n);

// --- quotient lines and the constructive generator recursion ---

// Free rank-1 R[pi]/(pi^n)-quotient line L of the n-torsion shtuka of E:
// phi_L = multiplication by sum alpha_j pi^j, lambda = image of the shtuka
// generator 1 in the chosen basis of L.
struct QuotientLine {
    DrinfeldModule E;
    uint32_t n = 0;
    std::vector<Elem> alpha;
    std::vector<Elem> lambda;
};

// Whole shtuka of a rank-1 module as its own line.
QuotientLine line_of_rank1(const DrinfeldModule& E, uint32_t n);
// Line attached to a subgroup divisor g of degree q^n whose quotient shtuka
// is free of rank 1 (nullopt when it is not).
std::optional<QuotientLine> line_of_divisor(const DrinfeldModule& E, uint32_t n, const RPoly& g);
void validate_line(const QuotientLine& line);

// beta_0 root of t^{q-1} - alpha_0, beta_j root of
// t^q - alpha_0 t - alpha_1 beta_{j-1} - ... - alpha_j beta_0; nullopt if the
// ring does not contain the needed roots.
std::optional<std::vector<Elem>> beta_recursion(const Ring& R, const std::vector<Elem>& alpha);

// Runs the recursion over growing scalar extensions and returns the generator
// iota: pi^{-n} -> P as an M-structure over the extension where it succeeds.
MStructure build_cyclic_generator(const QuotientLine& line, uint32_t s_bound = 24);

// --- Gamma_0(p^n) flags ---

struct Gamma0Flag {
    DrinfeldModule E;
    uint32_t n = 0;
    std::vector<RPoly> divisors;      // g_1 | g_2 | ... | g_{r-1}
    std::optional<MStructure> witness; // (p^{-n}/O)^{r-1}-generator, same ring
    uint32_t rank() const { return uint32_t(divisors.size()) + 1; }
};

// Validates degrees, the divisibility chain, e-stability, and that witness
// restrictions generate the g_i.
Gamma0Flag make_gamma0(DrinfeldModule E, uint32_t n, std::vector<RPoly> divisors,
                       std::optional<MStructure> witness = std::nullopt);

// Every layer H_i/H_{i-1} is p^n-cyclic on the quotient module.
bool check_gamma0(const Gamma0Flag& flag, uint32_t s_max = 12);

// Divisor of H_mbar from the witness restriction; mbar decreasing, <= n.
RPoly canonical_submodule(const Gamma0Flag& flag, const std::vector<uint32_t>& mbar);

// Image divisor of ker(g) under the isogeny psi (skew right division).
RPoly pushforward_divisor(const RPoly& g, const Isogeny& psi);

// Level map F_{mbar, ntilde, tau}: quotient by H_mbar carrying the flag of
// the H_{mbar + ntilde_tau^(i)}. tau is 0-based: tau[j] = coordinate bumped
// at step j+1.
std::pair<DrinfeldModule, Gamma0Flag> level_map(const Gamma0Flag& flag,
                                                const std::vector<uint32_t>& mbar, uint32_t ntilde,
                                                const std::vector<uint32_t>& tau);

// n = 1 flags come from naive flags: rebuild the quotient torsion shtukas.
NaiveFlag parahoric_roundtrip(const Gamma0Flag& flag);

} // namespace dlv
