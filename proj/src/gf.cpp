#include "dlv/gf.hpp"

namespace dlv {

const char* errc_name(errc code) {
    switch (code) {
        case errc::not_prime: return "NotPrime";
        case errc::reducible_modulus: return "ReducibleModulus";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::ring_mismatch: return "RingMismatch";
        case errc::non_unit_leading_coeff: return "NonUnitLeadingCoeff";
        case errc::no_qth_root: return "NoQthRoot";
        case errc::bound_too_small: return "BoundTooSmall";
        case errc::kernel_not_stable: return "KernelNotStable";
        case errc::not_additive: return "NotAdditive";
        case errc::not_monic: return "NotMonic";
        case errc::not_a_field: return "NotAField";
        case errc::not_m_structure: return "NotMStructure";
        case errc::not_additive_divisor: return "NotAdditiveDivisor";
        case errc::not_subscheme: return "NotSubscheme";
        case errc::not_divisible: return "NotDivisible";
        case errc::not_adapted: return "NotAdapted";
        case errc::extension_bound_exceeded: return "ExtensionBoundExceeded";
        case errc::no_witness: return "NoWitness";
        case errc::invalid_subsimplex: return "InvalidSubsimplex";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::unsupported_mu: return "UnsupportedMu";
        case errc::syntax_error: return "SyntaxError";
        case errc::unknown_name: return "UnknownName";
        case errc::type_mismatch: return "TypeMismatch";
        case errc::unsupported: return "Unsupported";
    }
    return "Unknown";
}

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

namespace {

fp_poly fp_mul_mod(uint32_t p, const fp_poly& a, const fp_poly& b, const fp_poly& f) {
    // f monic; result reduced to deg < deg f
    size_t df = f.size() - 1;
    std::vector<uint32_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + uint32_t(a[i]) * b[j]) % p;
    }
    for (size_t i = acc.size(); i-- > df;) {
        uint32_t c = acc[i];
        if (!c) continue;
        acc[i] = 0;
        for (size_t j = 0; j < df; ++j) acc[i - df + j] = (acc[i - df + j] + c * (p - f[j])) % p;
    }
    fp_poly r(df);
    for (size_t i = 0; i < df; ++i) r[i] = uint16_t(acc[i]);
    return r;
}

// divide a by monic b, return remainder
fp_poly fp_rem(uint32_t p, fp_poly a, const fp_poly& b) {
    size_t db = b.size() - 1;
    while (a.size() > db) {
        uint32_t c = a.back();
        size_t sh = a.size() - 1 - db;
        if (c)
            for (size_t j = 0; j < db; ++j) a[sh + j] = uint16_t((a[sh + j] + c * (p - b[j])) % p);
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

} // namespace

bool is_irreducible_fp(uint32_t p, const fp_poly& f) {
    size_t deg = f.size() - 1;
    if (deg == 0) return false;
    if (f.back() != 1) fail(errc::not_monic, "irreducibility test expects a monic polynomial");
    if (deg == 1) return true;
    // trial division by every monic polynomial of degree 1..deg/2
    for (size_t dd = 1; dd <= deg / 2; ++dd) {
        uint64_t count = 1;
        for (size_t i = 0; i < dd; ++i) count *= p;
        for (uint64_t v = 0; v < count; ++v) {
            fp_poly g(dd + 1, 0);
            uint64_t t = v;
            for (size_t i = 0; i < dd; ++i) {
                g[i] = uint16_t(t % p);
                t /= p;
            }
            g[dd] = 1;
            if (fp_rem(p, f, g).empty()) return false;
        }
    }
    return true;
}

fp_poly lex_smallest_irreducible(uint32_t p, uint32_t deg) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < deg; ++i) count *= p;
    for (uint64_t v = 0; v < count; ++v) {
        fp_poly f(deg + 1, 0);
        uint64_t t = v;
        // v counts lexicographically on (c_0, ..., c_{deg-1}), c_0 most significant
        for (uint32_t i = deg; i-- > 0;) {
            f[i] = uint16_t(t % p);
            t /= p;
        }
        f[deg] = 1;
        if (is_irreducible_fp(p, f)) return f;
    }
    fail(errc::reducible_modulus, "no irreducible polynomial found (degree 0?)");
}

SmallField::SmallField(uint32_t p, uint32_t d) : p_(p), d_(d) {
    if (!is_prime(p)) fail(errc::not_prime, "p = " + std::to_string(p) + " is not prime");
    if (d < 1) fail(errc::dimension_mismatch, "d must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < d; ++i) {
        q *= p;
        if (q > 4096) fail(errc::unsupported, "q = p^d above the supported bound 4096");
    }
    q_ = uint32_t(q);
    g_ = (d == 1) ? fp_poly{0, 1} : lex_smallest_irreducible(p, d);

    exp_.assign(2 * q_, 0);
    log_.assign(q_, 0);
    auto idx_of = [&](const fp_poly& e) {
        uint32_t v = 0;
        for (size_t i = e.size(); i-- > 0;) v = v * p_ + e[i];
        return v;
    };
    auto elem_of = [&](gf v) {
        fp_poly e(d_, 0);
        for (uint32_t i = 0; i < d_; ++i) {
            e[i] = uint16_t(v % p_);
            v /= p_;
        }
        return e;
    };
    // find a primitive element by direct order computation
    for (gf cand = 1; cand < q_; ++cand) {
        fp_poly c = elem_of(cand), acc = elem_of(1);
        uint32_t ord = 0;
        bool primitive = true;
        std::vector<uint32_t> seq;
        seq.reserve(q_ - 1);
        do {
            acc = fp_mul_mod(p_, acc, c, g_);
            seq.push_back(idx_of(acc));
            ++ord;
        } while (idx_of(acc) != 1 && ord < q_);
        primitive = (ord == q_ - 1);
        if (!primitive) continue;
        // seq[t] = cand^{t+1}
        for (uint32_t t = 0; t < q_ - 1; ++t) {
            uint32_t power = seq[(t + q_ - 2) % (q_ - 1)]; // cand^t
            exp_[t] = power;
            exp_[t + q_ - 1] = power;
            log_[power] = t;
        }
        break;
    }
}

gf SmallField::add(gf a, gf b) const {
    gf r = 0, mult = 1;
    for (uint32_t i = 0; i < d_; ++i) {
        r += ((a % p_) + (b % p_)) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

gf SmallField::neg(gf a) const {
    gf r = 0, mult = 1;
    for (uint32_t i = 0; i < d_; ++i) {
        r += (p_ - (a % p_)) % p_ * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

gf SmallField::sub(gf a, gf b) const { return add(a, neg(b)); }

gf SmallField::mul(gf a, gf b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

gf SmallField::inv(gf a) const {
    if (a == 0) fail(errc::dimension_mismatch, "division by zero in F_q");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

gf SmallField::pow(gf a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[(uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

uint16_t SmallField::digit(gf a, uint32_t i) const {
    for (uint32_t t = 0; t < i; ++t) a /= p_;
    return uint16_t(a % p_);
}

std::vector<gf> SmallField::elements() const {
    std::vector<gf> out(q_);
    for (uint32_t i = 0; i < q_; ++i) out[i] = i;
    return out;
}

} // namespace dlv
