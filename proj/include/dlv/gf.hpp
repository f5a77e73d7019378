#pragma once

#include "dlv/common.hpp"

#include <cstdint>
#include <vector>

namespace dlv {

// Element of a small finite field F_q, q = p^d, stored as a base-p digit index:
// value = c_0 + c_1*p + ... + c_{d-1}*p^{d-1} for the residue class
// c_0 + c_1*y + ... mod g(y), g the field's defining polynomial over F_p.
using gf = uint32_t;

bool is_prime(uint32_t n);

// Dense polynomial over F_p as coefficient digits, index = degree.
using fp_poly = std::vector<uint16_t>;

// Lexicographically smallest monic irreducible of the given degree over F_p,
// ordering candidates by (c_0, c_1, ..., c_{deg-1}) with c_0 most significant.
fp_poly lex_smallest_irreducible(uint32_t p, uint32_t deg);

// Irreducibility by trial division against all monic factors of degree <= deg/2.
bool is_irreducible_fp(uint32_t p, const fp_poly& f);

// F_q arithmetic on digit-indexed elements, q = p^d <= 4096. Multiplication and
// inversion run through exp/log tables over a primitive element.
class SmallField {
  public:
    SmallField() = default;
    SmallField(uint32_t p, uint32_t d);

    uint32_t p() const { return p_; }
    uint32_t d() const { return d_; }
    uint32_t q() const { return q_; }
    const fp_poly& modulus() const { return g_; }

    gf add(gf a, gf b) const;
    gf sub(gf a, gf b) const;
    gf neg(gf a) const;
    gf mul(gf a, gf b) const;
    gf inv(gf a) const;
    gf pow(gf a, uint64_t e) const;
    uint16_t digit(gf a, uint32_t i) const;

    // All q elements in index order (0, 1, 2, ...).
    std::vector<gf> elements() const;

  private:
    uint32_t p_ = 0, d_ = 0, q_ = 0;
    fp_poly g_;
    std::vector<uint32_t> exp_, log_;
};

} // namespace dlv
