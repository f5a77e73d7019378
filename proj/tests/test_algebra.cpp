#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"

using namespace dlv;
using namespace dlv::testing;

TEST_CASE("ring construction and dimensions") {
    RingPtr R = ring_f3z();
    CHECK(R->dim_fp() == 2);
    CHECK(R->dim_fq() == 2);
    CHECK(R->q() == 3);
    CHECK_FALSE(R->is_field());

    RingPtr F4 = ring_f4();
    CHECK(F4->q() == 4);
    CHECK(F4->modulus() == fp_poly{1, 1, 1}); // x^2 + x + 1, the only choice
    CHECK(F4->dim_fp() == 2);
    CHECK(F4->dim_fq() == 1);

    RingPtr F9 = ring_f9();
    Elem g = F9->x_gen();
    Elem g3 = F9->frobq(g);
    CHECK_FALSE(g3 == g);            // generator is moved by Frobenius
    CHECK(F9->frobq(g3) == g);       // order 2 on F_9 \ F_3
    for (int v = 0; v < 3; ++v) CHECK(F9->frobq(F9->from_int(v)) == F9->from_int(v));
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(make_ring(4, 1, 1, 1), error);            // 4 is not prime
    CHECK_THROWS_AS(make_ring(2, 1, 2, 1, {0, 0, 1}), error); // x^2 reducible
    CHECK_NOTHROW(make_ring(2, 1, 2, 1, {1, 1, 1}));
}

TEST_CASE("frobenius on nilpotents") {
    RingPtr R = ring_f3z();
    CHECK(R->is_zero(R->frobq(R->zeta()))); // zeta^3 = 0
}

TEST_CASE("units and inverses") {
    RingPtr R = ring_f3z();
    Elem z = R->zeta();
    Elem a = R->add(R->one(), z);
    REQUIRE(R->is_unit(a));
    CHECK(R->inv(a) == R->sub(R->one(), z)); // (1+z)(1-z) = 1
    CHECK_FALSE(R->is_unit(z));
    CHECK_FALSE(R->is_unit(R->zero()));
    CHECK(R->mul(a, R->inv(a)) == R->one());
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(11);
    for (RingPtr R : {ring_f3z(), ring_f4(), ring_f9(), make_ring(2, 2, 1, 2),
                      extension_of(ring_f9(), 2)}) {
        for (int i = 0; i < 40; ++i) {
            Elem a = R->random(rng), b = R->random(rng), c = R->random(rng);
            CHECK(R->mul(a, b) == R->mul(b, a));
            CHECK(R->mul(a, R->mul(b, c)) == R->mul(R->mul(a, b), c));
            CHECK(R->mul(a, R->add(b, c)) == R->add(R->mul(a, b), R->mul(a, c)));
            CHECK(R->frobq(R->mul(a, b)) == R->mul(R->frobq(a), R->frobq(b)));
            CHECK(R->frobq(R->add(a, b)) == R->add(R->frobq(a), R->frobq(b)));
            if (R->is_unit(a)) CHECK(R->mul(a, R->inv(a)) == R->one());
        }
    }
}

TEST_CASE("gfq coordinates round trip and are F_q-linear") {
    std::mt19937_64 rng(13);
    for (RingPtr R : {ring_f3z(), ring_f4(), extension_of(ring_f4(), 3), extension_of(ring_f3z(), 2)}) {
        for (int i = 0; i < 25; ++i) {
            Elem a = R->random(rng);
            CHECK(R->from_gfq(R->to_gfq(a)) == a);
            gf c = gf(rng() % R->q());
            gf_vec va = R->to_gfq(a);
            for (gf& x : va) x = R->fq().mul(c, x);
            CHECK(R->from_gfq(va) == R->mul(R->embed_gf(c), a));
        }
    }
}

TEST_CASE("csv serialization round trip") {
    std::mt19937_64 rng(17);
    RingPtr R = make_ring(3, 1, 2, 2);
    for (int i = 0; i < 10; ++i) {
        Elem a = R->random(rng);
        CHECK(R->from_csv(R->to_csv(a)) == a);
    }
}

TEST_CASE("span closure: examples") {
    RingPtr F3 = make_ring(3, 1, 1, 1);
    const SmallField& F = F3->fq();

    // no seeds -> zero subspace
    Subspace empty = span_closure(F, 4, {}, {});
    CHECK(empty.dim() == 0);

    // swap orbit spans F_q^2
    linear_map swap = [](const gf_vec& v) { return gf_vec{v[1], v[0]}; };
    Subspace full = span_closure(F, 2, {gf_vec{1, 0}}, {swap});
    CHECK(full.dim() == 2);

    // F_3[Q]/(Q^3), seed {Q}, map = multiplication by Q -> span{Q, Q^2}
    linear_map mulQ = [](const gf_vec& v) { return gf_vec{0, v[0], v[1]}; };
    Subspace ideal = span_closure(F, 3, {gf_vec{0, 1, 0}}, {mulQ});
    CHECK(ideal.dim() == 2);
    CHECK(ideal.contains(gf_vec{0, 0, 1}));
    CHECK_FALSE(ideal.contains(gf_vec{1, 0, 0}));
}

TEST_CASE("span closure: stability and idempotence") {
    std::mt19937_64 rng(23);
    const SmallField F(3, 1);
    size_t dim = 6;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<gf_vec> seeds;
        for (int i = 0; i < 2; ++i) {
            gf_vec v(dim);
            for (gf& x : v) x = gf(rng() % 3);
            seeds.push_back(v);
        }
        GfMat M(dim, dim);
        for (gf& x : M.a) x = gf(rng() % 3);
        linear_map f = [&F, M](const gf_vec& v) { return mat_apply(F, M, v); };
        Subspace S = span_closure(F, dim, seeds, {f});
        for (const gf_vec& s : seeds) CHECK(S.contains(s));
        for (const gf_vec& b : S.basis()) CHECK(S.contains(f(b)));
        Subspace S2 = span_closure(F, dim, S.basis(), {f});
        CHECK(S2.dim() == S.dim());
    }
}

namespace {

// brute-force free-basis search: some spanning r-tuple exists
bool free_oracle(const Ring& R, size_t ambient, const Subspace& rel,
                 const std::vector<linear_map>& action, size_t r) {
    size_t dimB = ambient - rel.dim();
    if (dimB != r * R.dim_fq()) return false;
    // enumerate coset representatives: all ambient vectors, dedup by reduction
    std::vector<gf_vec> reps;
    {
        std::vector<gf_vec> seen;
        gf_vec v(ambient, 0);
        size_t total = 1;
        for (size_t i = 0; i < ambient; ++i) total *= R.q();
        REQUIRE(total <= (1u << 14));
        for (size_t c = 0; c < total; ++c) {
            if (c) {
                size_t i = 0;
                while (true) {
                    if (++v[i] < R.q()) break;
                    v[i] = 0;
                    ++i;
                }
            }
            gf_vec red = rel.reduce(v);
            if (std::find(seen.begin(), seen.end(), red) == seen.end()) {
                seen.push_back(red);
                reps.push_back(red);
            }
        }
    }
    std::vector<size_t> idx(r, 0);
    while (true) {
        std::vector<gf_vec> seeds = rel.basis();
        for (size_t i = 0; i < r; ++i) seeds.push_back(reps[idx[i]]);
        Subspace S = span_closure(R.fq(), ambient, seeds, action);
        if (S.dim() == ambient) return true;
        size_t i = 0;
        while (i < r) {
            if (++idx[i] < reps.size()) break;
            idx[i] = 0;
            ++i;
        }
        if (i == r) return false;
    }
}

} // namespace

TEST_CASE("module freeness: examples and oracle agreement") {
    RingPtr R = ring_f3z();
    size_t dr = R->dim_fq();
    linear_map mz = [R](const gf_vec& v) {
        gf_vec out(v.size(), 0);
        size_t dr = R->dim_fq();
        for (size_t i = 0; i * dr < v.size(); ++i) {
            Elem e = R->from_gfq(gf_vec(v.begin() + i * dr, v.begin() + (i + 1) * dr));
            gf_vec c = R->to_gfq(R->mul(R->zeta(), e));
            std::copy(c.begin(), c.end(), out.begin() + i * dr);
        }
        return out;
    };

    // B = R itself, rank 1: ambient = R, no relations
    Subspace none(R->fq(), dr);
    CHECK(module_free_of_rank(*R, dr, none, &mz, 1));
    CHECK(free_oracle(*R, dr, none, {mz}, 1));

    // B = R/(zeta): relations = zeta*R
    Subspace zrel(R->fq(), dr);
    zrel.insert(R->to_gfq(R->zeta()));
    CHECK_FALSE(module_free_of_rank(*R, dr, zrel, &mz, 1));
    CHECK_FALSE(free_oracle(*R, dr, zrel, {mz}, 1));

    // B = R + R (free of rank 2): ambient dim 4
    Subspace none2(R->fq(), 2 * dr);
    linear_map mz2 = [R, mz, dr](const gf_vec& v) {
        gf_vec a(v.begin(), v.begin() + dr), b(v.begin() + dr, v.end());
        gf_vec ra = mz(a), rb = mz(b);
        ra.insert(ra.end(), rb.begin(), rb.end());
        return ra;
    };
    CHECK(module_free_of_rank(*R, 2 * dr, none2, &mz2, 2));
    CHECK(free_oracle(*R, 2 * dr, none2, {mz2}, 2));

    // R-module F_3 + F_3 with zeta acting as 0 (not free): dim matches rank 1
    // but there is no single generator. Model: ambient F_3^2, zeta -> 0.
    RingPtr F3 = make_ring(3, 1, 1, 1);
    // over the field F_3 a 2-dim space is free of rank 2
    Subspace none3(F3->fq(), 2);
    CHECK(module_free_of_rank(*F3, 2, none3, nullptr, 2));
    CHECK_FALSE(module_free_of_rank(*F3, 2, none3, nullptr, 1));

    // mixed module R/(zeta) + zeta*R inside R + R: relations zeta*(first), all of
    // second slot except zeta*...: take relations = span{zeta e_1}: B = R/(z) + R
    Subspace mix(R->fq(), 2 * dr);
    {
        gf_vec v(2 * dr, 0);
        gf_vec c = R->to_gfq(R->zeta());
        std::copy(c.begin(), c.end(), v.begin());
        mix.insert(v);
    }
    // dim B = 3 != 2*k... rank 1 and 2 both fail
    CHECK_FALSE(module_free_of_rank(*R, 2 * dr, mix, &mz2, 1));
    CHECK_FALSE(module_free_of_rank(*R, 2 * dr, mix, &mz2, 2));
    CHECK_FALSE(free_oracle(*R, 2 * dr, mix, {mz2}, 1));
    CHECK_FALSE(free_oracle(*R, 2 * dr, mix, {mz2}, 2));
}

TEST_CASE("extension rings") {
    RingPtr F9 = ring_f9();
    RingPtr E2 = extension_of(F9, 2);
    CHECK(E2->field_degree() == 4);
    CHECK(extension_of(F9, 2).get() == E2.get()); // cached
    Elem x = E2->embed_base(F9->x_gen());
    CHECK(E2->frobq_iter(x, 2) == x);
    // u generates the extension: u and its Frobenius differ
    CHECK_FALSE(E2->frobq_iter(E2->u_gen(), 2) == E2->u_gen());
    CHECK(E2->frobq_iter(E2->u_gen(), 4) == E2->u_gen());
}
