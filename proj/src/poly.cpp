#include "dlv/poly.hpp"

namespace dlv {

RPoly RPoly::constant(RingPtr ring, Elem c) {
    std::vector<Elem> v{std::move(c)};
    return RPoly(std::move(ring), std::move(v));
}

RPoly RPoly::monomial(RingPtr ring, Elem c, size_t deg) {
    std::vector<Elem> v(deg + 1, ring->zero());
    v[deg] = std::move(c);
    return RPoly(std::move(ring), std::move(v));
}

Elem RPoly::lead() const {
    if (c_.empty()) return ring_->zero();
    return c_.back();
}

bool RPoly::is_monic() const { return !c_.empty() && c_.back() == ring_->one(); }

RPoly RPoly::operator+(const RPoly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), ring_->zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] = ring_->add(r[i], c_[i]);
        if (i < o.c_.size()) r[i] = ring_->add(r[i], o.c_[i]);
    }
    return RPoly(ring_, std::move(r));
}

RPoly RPoly::operator-(const RPoly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), ring_->zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] = ring_->add(r[i], c_[i]);
        if (i < o.c_.size()) r[i] = ring_->sub(r[i], o.c_[i]);
    }
    return RPoly(ring_, std::move(r));
}

RPoly RPoly::operator*(const RPoly& o) const {
    if (is_zero() || o.is_zero()) return RPoly::zero(ring_);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, ring_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (ring_->is_zero(c_[i])) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (ring_->is_zero(o.c_[j])) continue;
            r[i + j] = ring_->add(r[i + j], ring_->mul(c_[i], o.c_[j]));
        }
    }
    return RPoly(ring_, std::move(r));
}

std::pair<RPoly, RPoly> RPoly::divmod(const RPoly& b) const {
    if (b.is_zero() || !ring_->is_unit(b.lead()))
        fail(errc::non_unit_leading_coeff, "polynomial division needs a unit leading coefficient");
    if (degree() < b.degree()) return {RPoly::zero(ring_), *this};
    Elem lead_inv = ring_->inv(b.lead());
    std::vector<Elem> rem = c_;
    std::vector<Elem> quot(c_.size() - b.c_.size() + 1, ring_->zero());
    for (size_t i = rem.size(); i-- > b.c_.size() - 1;) {
        if (ring_->is_zero(rem[i])) continue;
        size_t sh = i - (b.c_.size() - 1);
        Elem f = ring_->mul(rem[i], lead_inv);
        quot[sh] = f;
        for (size_t j = 0; j < b.c_.size(); ++j)
            rem[sh + j] = ring_->sub(rem[sh + j], ring_->mul(f, b.c_[j]));
    }
    rem.resize(b.c_.size() - 1, ring_->zero());
    return {RPoly(ring_, std::move(quot)), RPoly(ring_, std::move(rem))};
}

bool RPoly::divides(const RPoly& multiple) const {
    if (multiple.is_zero()) return true;
    if (is_zero()) return false;
    return multiple.divmod(*this).second.is_zero();
}

Elem RPoly::eval(const Elem& x) const {
    Elem acc = ring_->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = ring_->add(ring_->mul(acc, x), c_[i]);
    return acc;
}

RPoly RPoly::make_monic() const {
    if (is_zero()) return *this;
    if (!ring_->is_unit(lead()))
        fail(errc::non_unit_leading_coeff, "cannot normalize: leading coefficient is not a unit");
    Elem li = ring_->inv(lead());
    std::vector<Elem> r = c_;
    for (auto& e : r) e = ring_->mul(e, li);
    return RPoly(ring_, std::move(r));
}

bool RPoly::is_additive() const {
    if (is_zero()) return true;
    uint64_t q = ring_->q();
    // q-power degrees: 1, q, q^2, ...
    uint64_t pw = 1;
    std::vector<uint64_t> qpows;
    while (pw <= uint64_t(degree())) {
        qpows.push_back(pw);
        if (pw > uint64_t(degree()) / q) break;
        pw *= q;
    }
    for (size_t i = 0; i < c_.size(); ++i) {
        if (ring_->is_zero(c_[i])) continue;
        bool ok = false;
        for (uint64_t x : qpows)
            if (x == i) ok = true;
        if (!ok) return false;
    }
    uint64_t d = uint64_t(degree());
    while (d % q == 0) d /= q;
    return d == 1;
}

std::string RPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        if (ring_->is_zero(c_[i])) continue;
        std::string term;
        std::string cs = ring_->to_string(c_[i]);
        if (i == 0) {
            term = cs;
        } else {
            if (cs != "1") term = (cs.find('+') != std::string::npos) ? "(" + cs + ")*" : cs + "*";
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

} // namespace dlv
