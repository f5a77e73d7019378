#pragma once

#include "dlv/ring.hpp"

namespace dlv {

// Dense univariate polynomial over R; coefficient index = degree, no trailing
// zeros (zero polynomial has empty coefficient list).
class RPoly {
  public:
    RPoly() = default;
    RPoly(RingPtr ring, std::vector<Elem> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
        normalize();
    }
    static RPoly zero(RingPtr ring) { return RPoly(std::move(ring), {}); }
    static RPoly constant(RingPtr ring, Elem c);
    static RPoly monomial(RingPtr ring, Elem c, size_t deg);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int64_t degree() const { return int64_t(c_.size()) - 1; }
    Elem coeff(size_t i) const { return i < c_.size() ? c_[i] : ring_->zero(); }
    Elem lead() const;
    bool is_monic() const;

    RPoly operator+(const RPoly& o) const;
    RPoly operator-(const RPoly& o) const;
    RPoly operator*(const RPoly& o) const;
    bool operator==(const RPoly& o) const { return c_ == o.c_; }

    // (quotient, remainder) with deg rem < deg b; b must have a unit leading
    // coefficient.
    std::pair<RPoly, RPoly> divmod(const RPoly& b) const;
    bool divides(const RPoly& multiple_of_this) const;

    Elem eval(const Elem& x) const;
    RPoly make_monic() const;

    // Only monomials t^{q^i} present (and degree a power of q, unless zero).
    bool is_additive() const;

    std::string to_string(const std::string& var = "t") const;

  private:
    void normalize() {
        while (!c_.empty() && ring_->is_zero(c_.back())) c_.pop_back();
    }
    RingPtr ring_;
    std::vector<Elem> c_;
};

} // namespace dlv
