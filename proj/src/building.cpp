#include "dlv/building.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dlv {

bool vertex_valid(const Vertex& m, uint32_t r, uint32_t n) {
    if (m.size() != size_t(r) - 1) return false;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] > n) return false;
        if (i && m[i - 1] < m[i]) return false;
    }
    return true;
}

std::vector<Vertex> enumerate_vertices(uint32_t r, uint32_t n) {
    if (r < 2) fail(errc::dimension_mismatch, "rank must be >= 2");
    std::vector<Vertex> out;
    Vertex cur(r - 1, 0);
    // lexicographic odometer over decreasing tuples
    while (true) {
        out.push_back(cur);
        size_t i = r - 2;
        while (true) {
            uint32_t cap = (i == 0) ? n : cur[i - 1];
            if (cur[i] < cap) {
                ++cur[i];
                for (size_t j = i + 1; j < cur.size(); ++j) cur[j] = 0;
                break;
            }
            if (i == 0) {
                std::sort(out.begin(), out.end());
                return out;
            }
            --i;
        }
    }
}

std::vector<Vertex> facet_vertices(const Facet& f) {
    std::vector<Vertex> out;
    for (uint32_t j = 0; j <= f.dim; ++j) {
        Vertex v = f.base;
        for (uint32_t t = 0; t < j; ++t) v[f.tau[t]] += 1;
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Facet::operator==(const Facet& o) const {
    return base == o.base && dim == o.dim && tau == o.tau;
}

Facet make_facet(Vertex base, uint32_t dim, std::vector<uint32_t> tau, uint32_t r, uint32_t n) {
    if (base.size() != size_t(r) - 1 || tau.size() != size_t(r) - 1)
        fail(errc::dimension_mismatch, "facet data has wrong length");
    if (dim > r - 1) fail(errc::dimension_mismatch, "facet dimension exceeds r-1");
    {
        std::vector<bool> seen(r - 1, false);
        for (uint32_t t : tau) {
            if (t >= r - 1 || seen[t]) fail(errc::dimension_mismatch, "tau is not a permutation");
            seen[t] = true;
        }
    }
    Facet f{std::move(base), dim, std::move(tau)};
    std::vector<Vertex> vs = facet_vertices(f);
    for (const Vertex& v : vs)
        if (!vertex_valid(v, r, n)) fail(errc::invalid_subsimplex, "facet leaves the simplex");
    // canonical tau: lexicographically least permutation with the same vertex set
    std::vector<uint32_t> perm(r - 1);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Facet cand{f.base, dim, perm};
        if (facet_vertices(cand) == vs) return cand;
    } while (std::next_permutation(perm.begin(), perm.end()));
    fail(errc::invalid_subsimplex, "internal: no canonical orientation found");
}

Facet base_alcove(uint32_t r) {
    if (r < 2) fail(errc::dimension_mismatch, "rank must be >= 2");
    std::vector<uint32_t> tau(r - 1);
    std::iota(tau.begin(), tau.end(), 0);
    return make_facet(Vertex(r - 1, 0), r - 1, tau, r, 1);
}

bool closure_leq(const Facet& f, const Facet& f2) {
    std::vector<Vertex> a = facet_vertices(f), b = facet_vertices(f2);
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Facet> enumerate_facets(uint32_t r, uint32_t n) {
    std::vector<Facet> out;
    std::set<std::vector<Vertex>> seen;
    std::vector<uint32_t> perm(r - 1);
    for (const Vertex& base : enumerate_vertices(r, n))
        for (uint32_t dim = 0; dim <= r - 1; ++dim) {
            std::iota(perm.begin(), perm.end(), 0);
            do {
                Facet f{base, dim, perm};
                bool valid = true;
                for (const Vertex& v : facet_vertices(f))
                    if (!vertex_valid(v, r, n)) valid = false;
                if (!valid) continue;
                std::vector<Vertex> key = facet_vertices(f);
                if (seen.insert(key).second) out.push_back(make_facet(base, dim, perm, r, n));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.base != b.base) return a.base < b.base;
        return a.tau < b.tau;
    });
    return out;
}

bool is_edge(const Vertex& a, const Vertex& b) {
    if (a.size() != b.size() || a == b) return false;
    bool a_dom = true, b_dom = true;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t d = int64_t(a[i]) - int64_t(b[i]);
        if (d < 0 || d > 1) a_dom = false;
        if (d > 0 || d < -1) b_dom = false;
    }
    return a_dom || b_dom;
}

bool validate_subsimplex(const std::vector<uint32_t>& mbar, uint32_t ntilde,
                         const std::vector<uint32_t>& tau, uint32_t r, uint32_t n) {
    if (mbar.size() != size_t(r) - 1 || tau.size() != size_t(r) - 1) return false;
    if (ntilde > n) return false;
    {
        std::vector<bool> seen(r - 1, false);
        for (uint32_t t : tau) {
            if (t >= r - 1 || seen[t]) return false;
            seen[t] = true;
        }
    }
    for (uint32_t i = 0; i <= r - 1; ++i) {
        Vertex v = mbar;
        for (uint32_t j = 0; j < i; ++j) v[tau[j]] += ntilde;
        if (!vertex_valid(v, r, n)) return false;
    }
    return true;
}

Rat::Rat(int64_t n, int64_t d) {
    if (d == 0) fail(errc::dimension_mismatch, "zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rat rat_add(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }

bool rat_leq(const Rat& a, const Rat& b) { return a.num * b.den <= b.num * a.den; }

NewtonPoint make_newton(std::vector<Rat> slopes) {
    for (size_t i = 1; i < slopes.size(); ++i)
        if (!rat_leq(slopes[i], slopes[i - 1]))
            fail(errc::dimension_mismatch, "slopes must be decreasing");
    // integrality: total multiplicity of a/b divisible by b
    for (size_t i = 0; i < slopes.size();) {
        size_t j = i;
        while (j < slopes.size() && slopes[j] == slopes[i]) ++j;
        if ((j - i) % size_t(slopes[i].den) != 0)
            fail(errc::dimension_mismatch, "slope multiplicities violate integrality");
        i = j;
    }
    return NewtonPoint{std::move(slopes)};
}

bool newton_leq(const NewtonPoint& u, const NewtonPoint& u2) {
    if (u.slopes.size() != u2.slopes.size())
        fail(errc::length_mismatch, "newton points have different rank");
    Rat a(0, 1), b(0, 1);
    for (size_t i = 0; i < u.slopes.size(); ++i) {
        a = rat_add(a, u.slopes[i]);
        b = rat_add(b, u2.slopes[i]);
        if (!rat_leq(a, b)) return false;
    }
    return a == b;
}

std::vector<NewtonPoint> enumerate_B(uint32_t r, const std::vector<int64_t>& mu) {
    if (!mu.empty()) {
        bool ok = mu.size() == r && mu[0] == 1;
        for (size_t i = 1; i < mu.size(); ++i)
            if (mu[i] != 0) ok = false;
        if (!ok) fail(errc::unsupported_mu, "only the minuscule mu = (1,0,...,0) is supported");
    }
    std::vector<NewtonPoint> out;
    for (uint32_t h = 1; h <= r; ++h) {
        std::vector<Rat> s;
        for (uint32_t i = 0; i < h; ++i) s.push_back(Rat(1, h));
        for (uint32_t i = h; i < r; ++i) s.push_back(Rat(0, 1));
        out.push_back(make_newton(std::move(s)));
    }
    return out;
}

NewtonPoint newton_of_drinfeld(const DrinfeldModule& E) {
    uint32_t h = height(E);
    if (h == 0)
        fail(errc::dimension_mismatch, "Newton point at 0 needs characteristic p (gamma_T = 0)");
    std::vector<Rat> s;
    for (uint32_t i = 0; i < h; ++i) s.push_back(Rat(1, h));
    for (uint32_t i = h; i < E.rank; ++i) s.push_back(Rat(0, 1));
    return make_newton(std::move(s));
}

} // namespace dlv
