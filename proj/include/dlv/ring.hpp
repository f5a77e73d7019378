#pragma once

#include "dlv/linalg.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace dlv {

// Raw coordinates of a ring element over F_p. Layout: index (i, j, l) ->
// l*(dm*s) + j*dm + i for x^i * u^j * zeta^l, so zeta-degree is the major
// stride and the field basis the minor one, matching the serialization order.
using Elem = std::vector<uint16_t>;

// R = F_{q^{m*s}}[zeta]/(zeta^k) where
//   F_{q^m}   = F_p[x]/(modulus), deg modulus = d*m, q = p^d,
//   F_{q^ms}  = F_{q^m}[u]/(h_s) for a scalar extension of degree s (s = 1: none),
//   zeta^k = 0 (k = 1: R is a field).
// Immutable after construction; hand around via shared_ptr.
class Ring {
  public:
    // Base ring (s = 1). If modulus is empty, the lexicographically smallest
    // monic irreducible of degree d*m over F_p is used.
    Ring(uint32_t p, uint32_t d, uint32_t m, uint32_t k, fp_poly modulus = {});

    // Scalar extension of degree s of a base ring: extends only the field part.
    static std::shared_ptr<const Ring> extend(const std::shared_ptr<const Ring>& base, uint32_t s);

    uint32_t p() const { return p_; }
    uint32_t d() const { return d_; }
    uint32_t m() const { return m_; }
    uint32_t k() const { return k_; }
    uint32_t s() const { return s_; }
    uint32_t q() const { return Fq_.q(); }
    const fp_poly& modulus() const { return fmod_; }
    const SmallField& fq() const { return Fq_; }
    // degree of the field part over F_q
    uint32_t field_degree() const { return m_ * s_; }
    size_t dim_fp() const { return size_t(dm_) * s_ * k_; }
    size_t dim_fq() const { return size_t(m_) * s_ * k_; }
    bool is_field() const { return k_ == 1; }
    bool same_as(const Ring& other) const;

    Elem zero() const { return Elem(dim_fp(), 0); }
    Elem one() const;
    Elem from_int(int64_t v) const;
    // c*1 for c in F_q (digit index of the attached SmallField)
    Elem embed_gf(gf c) const;
    bool is_zero(const Elem& a) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem mul_gf(gf c, const Elem& a) const;
    Elem pow(const Elem& a, uint64_t e) const;

    bool is_unit(const Elem& a) const;
    bool is_nilpotent(const Elem& a) const;
    // Inverse of a unit: field-part inverse then a geometric series over the
    // nilpotent part.
    Elem inv(const Elem& a) const;

    // q-power Frobenius x -> x^q and its i-fold iterate.
    Elem frobq(const Elem& a) const;
    Elem frobq_iter(const Elem& a, uint32_t i) const;
    // q-th root; on a field this is the inverse Frobenius. With k > 1 only
    // exact field-part elements admit one (NoQthRoot otherwise).
    Elem root_q(const Elem& a) const;

    // Component of zeta-degree l as an element (zeroes elsewhere).
    Elem zeta_component(const Elem& a, uint32_t l) const;
    Elem zeta() const;  // the nilpotent generator (zero if k = 1)
    Elem x_gen() const; // residue of x
    Elem u_gen() const; // residue of u (zero if s = 1)

    // F_q-coordinates in the basis {x^i u^j zeta^l}, i<m, j<s, l<k.
    gf_vec to_gfq(const Elem& a) const;
    Elem from_gfq(const gf_vec& v) const;
    Elem fq_basis_elem(size_t t) const;

    // F_q-matrix of an F_q-linear map given by its values on the basis.
    GfMat matrix_of(const std::vector<Elem>& images) const;

    std::string to_csv(const Elem& a) const;
    Elem from_csv(const std::string& text) const;
    // Short human-readable form using 1, x, u, z.
    std::string to_string(const Elem& a) const;

    Elem random(std::mt19937_64& rng) const;
    Elem random_unit(std::mt19937_64& rng) const;

    // Embed an element of the base ring (s = 1) into this ring.
    Elem embed_base(const Elem& a) const;

    // All q^{m s k} elements, F_p-coordinate counting order. Guarded.
    std::vector<Elem> all_elements(size_t limit = 1u << 20) const;

  private:
    Ring() = default;
    void init_tables();

    // base field F_{p^{dm}} helpers (length dm_ views)
    void bf_mul(const uint16_t* a, const uint16_t* b, uint16_t* out) const;
    std::vector<uint16_t> bf_inv(const uint16_t* a) const;
    bool bf_is_zero(const uint16_t* a) const;
    // extension field F_{q^{ms}} helpers (length dm_*s_ views)
    void ef_mul(const uint16_t* a, const uint16_t* b, uint16_t* out) const;
    std::vector<uint16_t> ef_inv(const uint16_t* a) const;
    bool ef_is_zero(const uint16_t* a) const;

    uint32_t p_ = 0, d_ = 0, m_ = 0, k_ = 0, s_ = 1, dm_ = 0;
    fp_poly fmod_;                            // over F_p, monic, degree d*m
    std::vector<std::vector<uint16_t>> hs_;   // minpoly of u over the base field, s_+1 coeffs
    SmallField Fq_;
    std::vector<uint16_t> wpow_;              // F_p-coords of w^t, t < d (w = root of Fq's modulus)
    GfMat frob_;                              // F_p-matrix of x -> x^q (as p-digit field... stored as gf entries mod p)
    GfMat bmat_inv_;                          // F_p-coords -> (F_q digit) coords per base-field block
    GfMat bmat_;
    SmallField Fp_;                           // prime field for F_p-level eliminations
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(uint32_t p, uint32_t d, uint32_t m, uint32_t k, fp_poly modulus = {});

} // namespace dlv
