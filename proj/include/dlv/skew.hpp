#pragma once

#include "dlv/poly.hpp"

namespace dlv {

// Twisted polynomial in R{tau} with tau*c = c^q*tau. Coefficient index = tau-degree.
// A skew polynomial doubles as the additive polynomial sum_i c_i t^{q^i}.
class SkewPoly {
  public:
    SkewPoly() = default;
    SkewPoly(RingPtr ring, std::vector<Elem> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
        normalize();
    }
    static SkewPoly zero(RingPtr ring) { return SkewPoly(std::move(ring), {}); }
    static SkewPoly constant(RingPtr ring, Elem c);
    static SkewPoly tau_power(RingPtr ring, size_t i); // tau^i

    const RingPtr& ring() const { return ring_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int64_t degree() const { return int64_t(c_.size()) - 1; }
    Elem coeff(size_t i) const { return i < c_.size() ? c_[i] : ring_->zero(); }
    Elem lead() const { return c_.empty() ? ring_->zero() : c_.back(); }

    SkewPoly operator+(const SkewPoly& o) const;
    SkewPoly operator-(const SkewPoly& o) const;
    SkewPoly operator*(const SkewPoly& o) const;
    bool operator==(const SkewPoly& o) const { return c_ == o.c_; }

    // a = quot*b + rem with deg rem < deg b; b needs a unit leading coefficient.
    std::pair<SkewPoly, SkewPoly> right_divmod(const SkewPoly& b) const;
    // a = b*quot + rem; needs q-th roots of the quotient coefficients, which
    // exist canonically only over fields (NoQthRoot otherwise).
    std::pair<SkewPoly, SkewPoly> left_divmod(const SkewPoly& b) const;

    // sum_i c_i t^{q^i} as a plain polynomial.
    RPoly to_additive() const;
    // value of the additive polynomial at x
    Elem eval_additive(const Elem& x) const;

    std::string to_string() const;

  private:
    void normalize() {
        while (!c_.empty() && ring_->is_zero(c_.back())) c_.pop_back();
    }
    RingPtr ring_;
    std::vector<Elem> c_;
};

// Inverse of to_additive on additive polynomials; NotAdditive otherwise.
SkewPoly skew_of_additive(const RPoly& f);

} // namespace dlv
