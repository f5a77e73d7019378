#pragma once

#include "dlv/gf.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace dlv {

using gf_vec = std::vector<gf>;

// Dense row-major matrix over a SmallField.
struct GfMat {
    size_t rows = 0, cols = 0;
    gf_vec a;

    GfMat() = default;
    GfMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
    gf& at(size_t i, size_t j) { return a[i * cols + j]; }
    gf at(size_t i, size_t j) const { return a[i * cols + j]; }
    gf_vec row(size_t i) const { return gf_vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
};

gf_vec mat_apply(const SmallField& F, const GfMat& M, const gf_vec& v);
GfMat mat_mul(const SmallField& F, const GfMat& A, const GfMat& B);

// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(const SmallField& F, GfMat& M);

size_t rank(const SmallField& F, GfMat M);

// Canonical (RREF) basis of the null space of M (right kernel).
std::vector<gf_vec> null_space(const SmallField& F, const GfMat& M);

// One solution of M x = b, if any.
std::optional<gf_vec> solve(const SmallField& F, const GfMat& M, const gf_vec& b);

// F_q-subspace kept in canonical reduced echelon form; rows are basis vectors.
class Subspace {
  public:
    Subspace(const SmallField& F, size_t ambient) : F_(&F), ambient_(ambient) {}

    size_t ambient() const { return ambient_; }
    size_t dim() const { return rows_.size(); }
    const std::vector<gf_vec>& basis() const { return rows_; }

    // Reduce v against the basis; returns the residue.
    gf_vec reduce(const gf_vec& v) const;
    bool contains(const gf_vec& v) const;
    // Insert v; returns true if the dimension grew.
    bool insert(const gf_vec& v);
    bool operator==(const Subspace& other) const {
        return ambient_ == other.ambient_ && rows_ == other.rows_;
    }

  private:
    const SmallField* F_;
    size_t ambient_;
    std::vector<gf_vec> rows_;       // reduced echelon, sorted by pivot
    std::vector<size_t> pivots_;
};

using linear_map = std::function<gf_vec(const gf_vec&)>;

// Smallest subspace containing the seeds and stable under all maps
// (saturation in the finite-dimensional ambient space).
Subspace span_closure(const SmallField& F, size_t ambient, const std::vector<gf_vec>& seeds,
                      const std::vector<linear_map>& maps);

} // namespace dlv
