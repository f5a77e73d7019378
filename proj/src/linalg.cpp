#include "dlv/linalg.hpp"

#include <algorithm>

namespace dlv {

gf_vec mat_apply(const SmallField& F, const GfMat& M, const gf_vec& v) {
    if (v.size() != M.cols) fail(errc::dimension_mismatch, "mat_apply: size mismatch");
    gf_vec out(M.rows, 0);
    for (size_t i = 0; i < M.rows; ++i) {
        gf acc = 0;
        const gf* row = &M.a[i * M.cols];
        for (size_t j = 0; j < M.cols; ++j)
            if (v[j]) acc = F.add(acc, F.mul(row[j], v[j]));
        out[i] = acc;
    }
    return out;
}

GfMat mat_mul(const SmallField& F, const GfMat& A, const GfMat& B) {
    if (A.cols != B.rows) fail(errc::dimension_mismatch, "mat_mul: size mismatch");
    GfMat C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t l = 0; l < A.cols; ++l) {
            gf s = A.at(i, l);
            if (!s) continue;
            for (size_t j = 0; j < B.cols; ++j)
                if (B.at(l, j)) C.at(i, j) = F.add(C.at(i, j), F.mul(s, B.at(l, j)));
        }
    return C;
}

std::vector<size_t> rref(const SmallField& F, GfMat& M) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < M.cols && r < M.rows; ++c) {
        size_t sel = r;
        while (sel < M.rows && M.at(sel, c) == 0) ++sel;
        if (sel == M.rows) continue;
        if (sel != r)
            for (size_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(r, j));
        gf piv_inv = F.inv(M.at(r, c));
        for (size_t j = c; j < M.cols; ++j) M.at(r, j) = F.mul(M.at(r, j), piv_inv);
        for (size_t i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            gf f = M.at(i, c);
            if (!f) continue;
            for (size_t j = c; j < M.cols; ++j)
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(const SmallField& F, GfMat M) { return rref(F, M).size(); }

std::vector<gf_vec> null_space(const SmallField& F, const GfMat& M) {
    GfMat R = M;
    std::vector<size_t> piv = rref(F, R);
    std::vector<bool> is_piv(M.cols, false);
    for (size_t c : piv) is_piv[c] = true;
    std::vector<gf_vec> basis;
    for (size_t c = 0; c < M.cols; ++c) {
        if (is_piv[c]) continue;
        gf_vec v(M.cols, 0);
        v[c] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(R.at(i, c));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<gf_vec> solve(const SmallField& F, const GfMat& M, const gf_vec& b) {
    if (b.size() != M.rows) fail(errc::dimension_mismatch, "solve: size mismatch");
    GfMat aug(M.rows, M.cols + 1);
    for (size_t i = 0; i < M.rows; ++i) {
        for (size_t j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols) = b[i];
    }
    std::vector<size_t> piv = rref(F, aug);
    if (!piv.empty() && piv.back() == M.cols) return std::nullopt;
    gf_vec x(M.cols, 0);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, M.cols);
    return x;
}

gf_vec Subspace::reduce(const gf_vec& v) const {
    gf_vec w = v;
    for (size_t i = 0; i < rows_.size(); ++i) {
        gf c = w[pivots_[i]];
        if (!c) continue;
        const gf_vec& row = rows_[i];
        for (size_t j = pivots_[i]; j < ambient_; ++j)
            if (row[j]) w[j] = F_->sub(w[j], F_->mul(c, row[j]));
    }
    return w;
}

bool Subspace::contains(const gf_vec& v) const {
    gf_vec w = reduce(v);
    for (gf c : w)
        if (c) return false;
    return true;
}

bool Subspace::insert(const gf_vec& v) {
    if (v.size() != ambient_) fail(errc::dimension_mismatch, "Subspace::insert: wrong length");
    gf_vec w = reduce(v);
    size_t piv = ambient_;
    for (size_t j = 0; j < ambient_; ++j)
        if (w[j]) {
            piv = j;
            break;
        }
    if (piv == ambient_) return false;
    gf inv = F_->inv(w[piv]);
    for (size_t j = piv; j < ambient_; ++j) w[j] = F_->mul(w[j], inv);
    // clear the new pivot column in existing rows and keep rows sorted by pivot
    for (size_t i = 0; i < rows_.size(); ++i) {
        gf c = rows_[i][piv];
        if (!c) continue;
        for (size_t j = piv; j < ambient_; ++j)
            rows_[i][j] = F_->sub(rows_[i][j], F_->mul(c, w[j]));
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(w));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

Subspace span_closure(const SmallField& F, size_t ambient, const std::vector<gf_vec>& seeds,
                      const std::vector<linear_map>& maps) {
    Subspace S(F, ambient);
    std::vector<gf_vec> queue;
    for (const gf_vec& s : seeds) {
        if (s.size() != ambient) fail(errc::dimension_mismatch, "span_closure: bad seed length");
        if (S.insert(s)) queue.push_back(s);
    }
    while (!queue.empty()) {
        gf_vec v = std::move(queue.back());
        queue.pop_back();
        for (const linear_map& f : maps) {
            gf_vec w = f(v);
            if (w.size() != ambient) fail(errc::dimension_mismatch, "span_closure: map changed dimension");
            if (S.insert(w)) queue.push_back(std::move(w));
        }
    }
    return S;
}

} // namespace dlv
