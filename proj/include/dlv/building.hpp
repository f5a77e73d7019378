#pragma once

#include "dlv/drinfeld.hpp"

#include <cstdint>
#include <vector>

namespace dlv {

// Vertex of the side-n standard simplex for GL_r: n >= m_1 >= ... >= m_{r-1} >= 0.
using Vertex = std::vector<uint32_t>;

bool vertex_valid(const Vertex& m, uint32_t r, uint32_t n);
std::vector<Vertex> enumerate_vertices(uint32_t r, uint32_t n);

// Facet with base point, dimension and orientation tau (0-based permutation of
// 0..r-2); vertex j of the facet is base + tau(1^{(j)}), 0 <= j <= dim. tau is
// canonicalized to the lexicographically least permutation giving the same
// vertex set.
struct Facet {
    Vertex base;
    uint32_t dim = 0;
    std::vector<uint32_t> tau;
    bool operator==(const Facet& o) const;
};

Facet make_facet(Vertex base, uint32_t dim, std::vector<uint32_t> tau, uint32_t r, uint32_t n);
std::vector<Vertex> facet_vertices(const Facet& f);
Facet base_alcove(uint32_t r);
// f contained in the closure of f2 (vertex-set containment).
bool closure_leq(const Facet& f, const Facet& f2);
// All facets of the side-n simplex, canonicalized and sorted.
std::vector<Facet> enumerate_facets(uint32_t r, uint32_t n);

// Symmetric reading of the edge criterion: one endpoint dominates the other
// with coordinate gaps in {0, 1}.
bool is_edge(const Vertex& a, const Vertex& b);

// All vertices mbar + ntilde_tau^{(i)} stay inside the simplex.
bool validate_subsimplex(const std::vector<uint32_t>& mbar, uint32_t ntilde,
                         const std::vector<uint32_t>& tau, uint32_t r, uint32_t n);

// --- Newton points ---

struct Rat {
    int64_t num = 0, den = 1;
    Rat() = default;
    Rat(int64_t n, int64_t d);
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
};

Rat rat_add(const Rat& a, const Rat& b);
bool rat_leq(const Rat& a, const Rat& b);

// Decreasing slope vector with the isocrystal integrality condition: each
// value a/b occurs with multiplicity divisible by b.
struct NewtonPoint {
    std::vector<Rat> slopes;
    bool operator==(const NewtonPoint& o) const { return slopes == o.slopes; }
};

NewtonPoint make_newton(std::vector<Rat> slopes);

// Dominance: partial sums of u bounded by those of u2, equality at the end.
bool newton_leq(const NewtonPoint& u, const NewtonPoint& u2);

// B(GL_r, mu) for the minuscule mu = (1,0,...,0): the slope vectors
// (1/h,...,1/h,0,...,0) for 1 <= h <= r.
std::vector<NewtonPoint> enumerate_B(uint32_t r, const std::vector<int64_t>& mu = {});

// Newton point (1/h,...,1/h,0,...,0) of a module over a field in
// characteristic p, h = height.
NewtonPoint newton_of_drinfeld(const DrinfeldModule& E);

} // namespace dlv
