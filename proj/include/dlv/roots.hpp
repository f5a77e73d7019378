#pragma once

#include "dlv/skew.hpp"

#include <optional>

namespace dlv {

// Cached scalar extensions of a base ring, keyed by degree.
RingPtr extension_of(const RingPtr& base, uint32_t s);

// F_q-matrix of the additive operator x -> sum_i a_i x^{q^i} on the whole ring.
GfMat additive_matrix(const Ring& R, const std::vector<Elem>& coeffs);

struct AffineSolution {
    bool solvable = false;
    Elem particular;              // canonical: free variables zero in RREF
    std::vector<Elem> kernel;     // F_q-basis of the homogeneous solutions
};

// Solve sum_i a_i x^{q^i} = rhs over R (all solutions form an affine F_q-space).
AffineSolution additive_solve(const Ring& R, const std::vector<Elem>& coeffs, const Elem& rhs);

// Canonical solution of x^{q-1} = a: the lexicographically smallest element of
// ker(x -> x^q - a*x) whose (q-1)-th power is exactly a; a = 0 gives 0.
std::optional<Elem> kummer_root(const Ring& R, const Elem& a);

// Reduced points of the kernel of an additive polynomial: roots of the image
// of the polynomial in the residue ring, over the degree-s extension of the
// field part. Coefficients live in the base ring.
struct PointSet {
    RingPtr ring;             // extension ring the points live in
    uint32_t s = 1;           // extension degree used
    bool stabilized = false;
    std::vector<Elem> points; // sorted by coordinate sequence; zero nilpotent part
    size_t count() const { return points.size(); }
};

// Count the reduced kernel points over the degree-s extension (no enumeration).
size_t reduced_kernel_count(const RingPtr& base, const SkewPoly& a, uint32_t s);

// Smallest s <= s_max whose count survives two consecutive doublings, with the
// points enumerated there. BoundTooSmall if no such s exists.
PointSet kernel_points(const RingPtr& base, const SkewPoly& a, uint32_t s_max = 12);

// Same, but reporting failure in-band (partial count at s_max).
std::optional<PointSet> kernel_points_try(const RingPtr& base, const SkewPoly& a, uint32_t s_max,
                                          size_t* partial_count = nullptr);

// Reduced kernel points over the degree-s extension, no stabilization search.
std::vector<Elem> kernel_points_at(const RingPtr& base, const SkewPoly& a, uint32_t s);

} // namespace dlv
