#include "dlv/roots.hpp"

#include <algorithm>
#include <map>

namespace dlv {

RingPtr extension_of(const RingPtr& base, uint32_t s) {
    if (s <= 1) return base;
    static std::map<std::string, RingPtr> cache;
    std::string key = std::to_string(base->p()) + "," + std::to_string(base->d()) + "," +
                      std::to_string(base->m()) + "," + std::to_string(base->k()) + ";";
    for (auto c : base->modulus()) key += std::to_string(c) + ".";
    key += ";" + std::to_string(s);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    RingPtr ext = Ring::extend(base, s);
    cache.emplace(std::move(key), ext);
    return ext;
}

GfMat additive_matrix(const Ring& R, const std::vector<Elem>& coeffs) {
    size_t dim = R.dim_fq();
    GfMat M(dim, dim);
    for (size_t t = 0; t < dim; ++t) {
        Elem b = R.fq_basis_elem(t);
        Elem acc = R.zero(), pw = b;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (!R.is_zero(coeffs[i])) acc = R.add(acc, R.mul(coeffs[i], pw));
            if (i + 1 < coeffs.size()) pw = R.frobq(pw);
        }
        gf_vec col = R.to_gfq(acc);
        for (size_t i = 0; i < dim; ++i) M.at(i, t) = col[i];
    }
    return M;
}

AffineSolution additive_solve(const Ring& R, const std::vector<Elem>& coeffs, const Elem& rhs) {
    GfMat M = additive_matrix(R, coeffs);
    AffineSolution out;
    auto part = solve(R.fq(), M, R.to_gfq(rhs));
    if (!part) return out;
    out.solvable = true;
    out.particular = R.from_gfq(*part);
    for (const gf_vec& v : null_space(R.fq(), M)) out.kernel.push_back(R.from_gfq(v));
    return out;
}

std::optional<Elem> kummer_root(const Ring& R, const Elem& a) {
    if (R.is_zero(a)) return R.zero();
    if (R.is_nilpotent(a)) {
        // x^{q-1} hits no nonzero nilpotent unless q = 2
        if (R.q() == 2) return a;
        return std::nullopt;
    }
    // nonzero elements of ker(x^q - a x) are exactly the roots of x^{q-1} = a
    // over a field; with nilpotents we filter by re-checking the power.
    std::vector<Elem> coeffs{R.neg(a), R.one()}; // -a*x + x^q
    GfMat M = additive_matrix(R, coeffs);
    std::vector<gf_vec> ker = null_space(R.fq(), M);
    if (ker.empty()) return std::nullopt;
    size_t nu = ker.size();
    double total = 1;
    for (size_t i = 0; i < nu; ++i) total *= R.q();
    if (total > double(1u << 20)) fail(errc::bound_too_small, "kummer root kernel too large");
    size_t n = size_t(total);
    std::vector<Elem> hits;
    std::vector<gf> digits(nu, 0);
    for (size_t c = 1; c < n; ++c) {
        size_t i = 0;
        while (true) {
            if (++digits[i] < R.q()) break;
            digits[i] = 0;
            ++i;
        }
        gf_vec v(R.dim_fq(), 0);
        for (size_t t = 0; t < nu; ++t) {
            if (!digits[t]) continue;
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = R.fq().add(v[j], R.fq().mul(digits[t], ker[t][j]));
        }
        Elem x = R.from_gfq(v);
        if (R.pow(x, R.q() - 1) == a) hits.push_back(std::move(x));
    }
    if (hits.empty()) return std::nullopt;
    std::sort(hits.begin(), hits.end());
    return hits.front();
}

namespace {

// reduced additive coefficients embedded into the degree-s extension
std::vector<Elem> reduced_coeffs_in(const RingPtr& base, const SkewPoly& a, const RingPtr& ext) {
    std::vector<Elem> out;
    out.reserve(a.coeffs().size());
    for (const Elem& c : a.coeffs()) {
        Elem red = base->zeta_component(c, 0);
        out.push_back(ext->embed_base(red));
    }
    return out;
}

// F_q-matrix of the reduced polynomial on the field part of the extension
GfMat field_part_matrix(const RingPtr& base, const SkewPoly& a, const RingPtr& ext) {
    std::vector<Elem> coeffs = reduced_coeffs_in(base, a, ext);
    size_t fdim = ext->field_degree(); // field-part F_q-dimension; first block of the basis
    GfMat M(fdim, fdim);
    for (size_t t = 0; t < fdim; ++t) {
        Elem b = ext->fq_basis_elem(t);
        Elem acc = ext->zero(), pw = b;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (!ext->is_zero(coeffs[i])) acc = ext->add(acc, ext->mul(coeffs[i], pw));
            if (i + 1 < coeffs.size()) pw = ext->frobq(pw);
        }
        gf_vec col = ext->to_gfq(acc);
        for (size_t i = 0; i < fdim; ++i) M.at(i, t) = col[i];
    }
    return M;
}

} // namespace

size_t reduced_kernel_count(const RingPtr& base, const SkewPoly& a, uint32_t s) {
    if (a.is_zero()) fail(errc::not_additive, "kernel of the zero polynomial");
    bool reduced_nonzero = false;
    for (const Elem& c : a.coeffs())
        if (!base->is_nilpotent(c)) reduced_nonzero = true;
    if (!reduced_nonzero) fail(errc::bound_too_small, "reduced polynomial vanishes; kernel is not finite");
    RingPtr ext = extension_of(base, s);
    GfMat M = field_part_matrix(base, a, ext);
    size_t nu = M.cols - rank(base->fq(), M);
    size_t count = 1;
    for (size_t i = 0; i < nu; ++i) count *= base->q();
    return count;
}

std::vector<Elem> kernel_points_at(const RingPtr& base, const SkewPoly& a, uint32_t s) {
    RingPtr ext = extension_of(base, s);
    GfMat M = field_part_matrix(base, a, ext);
    std::vector<gf_vec> ker = null_space(base->fq(), M);
    double total = 1;
    for (size_t i = 0; i < ker.size(); ++i) total *= base->q();
    if (total > double(1u << 20)) fail(errc::bound_too_small, "kernel too large to enumerate");
    size_t n = size_t(total), fdim = ext->field_degree();
    std::vector<Elem> out;
    out.reserve(n);
    std::vector<gf> digits(ker.size(), 0);
    for (size_t cidx = 0; cidx < n; ++cidx) {
        if (cidx) {
            size_t i = 0;
            while (true) {
                if (++digits[i] < base->q()) break;
                digits[i] = 0;
                ++i;
            }
        }
        gf_vec v(ext->dim_fq(), 0);
        for (size_t t = 0; t < ker.size(); ++t) {
            if (!digits[t]) continue;
            for (size_t j = 0; j < fdim; ++j)
                v[j] = base->fq().add(v[j], base->fq().mul(digits[t], ker[t][j]));
        }
        out.push_back(ext->from_gfq(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<PointSet> kernel_points_try(const RingPtr& base, const SkewPoly& a, uint32_t s_max,
                                          size_t* partial_count) {
    if (a.is_zero()) fail(errc::not_additive, "kernel of the zero polynomial");
    std::map<uint32_t, size_t> counts;
    auto count_at = [&](uint32_t s) {
        auto it = counts.find(s);
        if (it != counts.end()) return it->second;
        size_t c = reduced_kernel_count(base, a, s);
        counts.emplace(s, c);
        return c;
    };
    for (uint32_t s = 1; s <= s_max; ++s) {
        size_t c = count_at(s);
        if (count_at(2 * s) != c || count_at(4 * s) != c) continue;
        PointSet out;
        out.ring = extension_of(base, s);
        out.s = s;
        out.stabilized = true;
        out.points = kernel_points_at(base, a, s);
        return out;
    }
    if (partial_count) *partial_count = count_at(s_max);
    return std::nullopt;
}

PointSet kernel_points(const RingPtr& base, const SkewPoly& a, uint32_t s_max) {
    size_t partial = 0;
    auto r = kernel_points_try(base, a, s_max, &partial);
    if (!r)
        fail(errc::bound_too_small, "point count not stabilized by s_max = " + std::to_string(s_max) +
                                        " (partial count " + std::to_string(partial) + ")");
    return *r;
}

} // namespace dlv
