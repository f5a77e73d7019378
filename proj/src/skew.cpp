#include "dlv/skew.hpp"

namespace dlv {

SkewPoly SkewPoly::constant(RingPtr ring, Elem c) {
    std::vector<Elem> v{std::move(c)};
    return SkewPoly(std::move(ring), std::move(v));
}

SkewPoly SkewPoly::tau_power(RingPtr ring, size_t i) {
    std::vector<Elem> v(i + 1, ring->zero());
    v[i] = ring->one();
    return SkewPoly(std::move(ring), std::move(v));
}

SkewPoly SkewPoly::operator+(const SkewPoly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), ring_->zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] = ring_->add(r[i], c_[i]);
        if (i < o.c_.size()) r[i] = ring_->add(r[i], o.c_[i]);
    }
    return SkewPoly(ring_, std::move(r));
}

SkewPoly SkewPoly::operator-(const SkewPoly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), ring_->zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] = ring_->add(r[i], c_[i]);
        if (i < o.c_.size()) r[i] = ring_->sub(r[i], o.c_[i]);
    }
    return SkewPoly(ring_, std::move(r));
}

SkewPoly SkewPoly::operator*(const SkewPoly& o) const {
    if (!ring_->same_as(*o.ring_)) fail(errc::ring_mismatch, "skew product across different rings");
    if (is_zero() || o.is_zero()) return SkewPoly::zero(ring_);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, ring_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (ring_->is_zero(c_[i])) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            // tau^i * b = b^{q^i} * tau^i
            Elem t = ring_->mul(c_[i], ring_->frobq_iter(o.c_[j], uint32_t(i)));
            r[i + j] = ring_->add(r[i + j], t);
        }
    }
    return SkewPoly(ring_, std::move(r));
}

std::pair<SkewPoly, SkewPoly> SkewPoly::right_divmod(const SkewPoly& b) const {
    if (b.is_zero() || !ring_->is_unit(b.lead()))
        fail(errc::non_unit_leading_coeff, "right division needs a unit leading coefficient");
    if (degree() < b.degree()) return {SkewPoly::zero(ring_), *this};
    size_t v = size_t(b.degree());
    std::vector<Elem> rem = c_;
    std::vector<Elem> quot(c_.size() - v, ring_->zero());
    for (size_t i = rem.size(); i-- > v;) {
        if (ring_->is_zero(rem[i])) continue;
        size_t sh = i - v;
        // leading term of f*tau^sh * b is f * lead(b)^{q^sh} * tau^i
        Elem f = ring_->mul(rem[i], ring_->inv(ring_->frobq_iter(b.lead(), uint32_t(sh))));
        quot[sh] = f;
        for (size_t j = 0; j <= v; ++j) {
            Elem t = ring_->mul(f, ring_->frobq_iter(b.c_[j], uint32_t(sh)));
            rem[sh + j] = ring_->sub(rem[sh + j], t);
        }
    }
    rem.resize(v, ring_->zero());
    return {SkewPoly(ring_, std::move(quot)), SkewPoly(ring_, std::move(rem))};
}

std::pair<SkewPoly, SkewPoly> SkewPoly::left_divmod(const SkewPoly& b) const {
    if (b.is_zero() || !ring_->is_unit(b.lead()))
        fail(errc::non_unit_leading_coeff, "left division needs a unit leading coefficient");
    if (degree() < b.degree()) return {SkewPoly::zero(ring_), *this};
    size_t v = size_t(b.degree());
    Elem lead_inv = ring_->inv(b.lead());
    std::vector<Elem> rem = c_;
    std::vector<Elem> quot(c_.size() - v, ring_->zero());
    for (size_t i = rem.size(); i-- > v;) {
        if (ring_->is_zero(rem[i])) continue;
        size_t sh = i - v;
        // leading term of b * f*tau^sh is lead(b) * f^{q^v} * tau^i
        Elem z = ring_->mul(lead_inv, rem[i]);
        Elem f;
        if (v == 0) {
            f = z;
        } else if (ring_->is_field()) {
            f = z;
            for (uint32_t t = 0; t < v; ++t) f = ring_->root_q(f);
        } else if (ring_->is_zero(z)) {
            f = ring_->zero();
        } else {
            // f^{q^v} = z needs a q-th root with nilpotents around
            f = z;
            for (uint32_t t = 0; t < v; ++t) f = ring_->root_q(f); // throws NoQthRoot unless exact
            // verify, since q-power is not injective here
            Elem chk = ring_->frobq_iter(f, uint32_t(v));
            if (!(chk == z)) fail(errc::no_qth_root, "left quotient coefficient has no q-th root");
        }
        quot[sh] = f;
        for (size_t j = 0; j <= v; ++j) {
            Elem t = ring_->mul(b.c_[j], ring_->frobq_iter(f, uint32_t(j)));
            rem[sh + j] = ring_->sub(rem[sh + j], t);
        }
    }
    rem.resize(v, ring_->zero());
    return {SkewPoly(ring_, std::move(quot)), SkewPoly(ring_, std::move(rem))};
}

RPoly SkewPoly::to_additive() const {
    if (is_zero()) return RPoly::zero(ring_);
    uint64_t q = ring_->q();
    uint64_t top = 1;
    for (int64_t i = 0; i < degree(); ++i) top *= q;
    std::vector<Elem> r(top + 1, ring_->zero());
    uint64_t pw = 1;
    for (size_t i = 0; i < c_.size(); ++i) {
        r[pw] = c_[i];
        pw *= q;
    }
    return RPoly(ring_, std::move(r));
}

Elem SkewPoly::eval_additive(const Elem& x) const {
    Elem acc = ring_->zero();
    Elem pw = x;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!ring_->is_zero(c_[i])) acc = ring_->add(acc, ring_->mul(c_[i], pw));
        if (i + 1 < c_.size()) pw = ring_->frobq(pw);
    }
    return acc;
}

std::string SkewPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (ring_->is_zero(c_[i])) continue;
        std::string cs = ring_->to_string(c_[i]);
        std::string term;
        if (i == 0) {
            term = cs;
        } else {
            if (cs != "1") term = (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) + "*";
            term += "t" + std::to_string(i);
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

SkewPoly skew_of_additive(const RPoly& f) {
    const RingPtr& R = f.ring();
    if (f.is_zero()) return SkewPoly::zero(R);
    if (!f.is_additive()) fail(errc::not_additive, "polynomial is not additive");
    uint64_t q = R->q();
    std::vector<Elem> c;
    uint64_t pw = 1;
    while (pw <= uint64_t(f.degree())) {
        c.push_back(f.coeff(size_t(pw)));
        if (pw > uint64_t(f.degree()) / q) break;
        pw *= q;
    }
    return SkewPoly(R, std::move(c));
}

} // namespace dlv
