#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"

using namespace dlv;
using namespace dlv::testing;

TEST_CASE("commutation rule tau c = c^q tau") {
    RingPtr F9 = ring_f9();
    Elem c = F9->x_gen();
    SkewPoly tau = SkewPoly::tau_power(F9, 1);
    SkewPoly cc = SkewPoly::constant(F9, c);
    SkewPoly lhs = tau * cc;
    CHECK(lhs.coeff(1) == F9->frobq(c));
    CHECK(lhs.coeff(0) == F9->zero());
}

TEST_CASE("square of the counterexample polynomial") {
    for (uint32_t p : {2u, 3u}) {
        RingPtr R = make_ring(p, 1, 1, 2);
        SkewPoly eT = counterexample_eT(R);
        SkewPoly sq = eT * eT;
        // (z + z tau + tau^2)^2 = z tau^2 + z tau^3 + tau^4
        CHECK(sq.degree() == 4);
        CHECK(sq.coeff(0) == R->zero());
        CHECK(sq.coeff(1) == R->zero());
        CHECK(sq.coeff(2) == R->zeta());
        CHECK(sq.coeff(3) == R->zeta());
        CHECK(sq.coeff(4) == R->one());
        CHECK(eT * SkewPoly::constant(R, R->one()) == eT);
    }
}

TEST_CASE("to_additive dictionary") {
    RingPtr R = ring_f3z();
    SkewPoly a(R, {R->zeta(), R->zeta(), R->one()}); // tau^2 + z tau + z
    RPoly f = a.to_additive();
    CHECK(f.degree() == 9);
    CHECK(f.coeff(9) == R->one());
    CHECK(f.coeff(3) == R->zeta());
    CHECK(f.coeff(1) == R->zeta());
    CHECK(f.coeff(2) == R->zero());
    CHECK(SkewPoly::constant(R, R->one()).to_additive().degree() == 1);

    RingPtr F9 = ring_f9();
    Elem th = F9->x_gen();
    SkewPoly carlitz(F9, {th, F9->one()});
    RPoly g = carlitz.to_additive();
    CHECK(g.degree() == 3);
    CHECK(g.coeff(3) == F9->one());
    CHECK(g.coeff(1) == th);

    CHECK(skew_of_additive(f) == a);
    CHECK(skew_of_additive(g) == carlitz);
}

TEST_CASE("right division: examples and round trip") {
    RingPtr R = ring_f3z();
    SkewPoly tau = SkewPoly::tau_power(R, 1);
    SkewPoly tau2 = SkewPoly::tau_power(R, 2);
    auto [q1, r1] = tau2.right_divmod(tau);
    CHECK(q1 == tau);
    CHECK(r1.is_zero());

    SkewPoly eT = counterexample_eT(R);
    auto [q2, r2] = eT.right_divmod(eT);
    CHECK(q2 == SkewPoly::constant(R, R->one()));
    CHECK(r2.is_zero());

    SkewPoly sq = eT * eT;
    auto [q3, r3] = sq.right_divmod(eT);
    CHECK(r3.is_zero());
    CHECK(q3 == eT);

    std::mt19937_64 rng(31);
    for (RingPtr Rr : {ring_f3z(), ring_f9(), ring_f4()}) {
        for (int i = 0; i < 30; ++i) {
            SkewPoly a = random_skew(Rr, rng, 1 + rng() % 4, false);
            SkewPoly b = random_skew(Rr, rng, 1 + rng() % 3, true);
            auto [qt, rm] = a.right_divmod(b);
            CHECK(qt * b + rm == a);
            CHECK(rm.degree() < b.degree());
        }
    }
}

TEST_CASE("left division") {
    RingPtr F9 = ring_f9();
    SkewPoly tau = SkewPoly::tau_power(F9, 1);
    SkewPoly tau2 = SkewPoly::tau_power(F9, 2);
    auto [q1, r1] = tau2.left_divmod(tau);
    CHECK(q1 == tau);
    CHECK(r1.is_zero());

    std::mt19937_64 rng(37);
    for (int i = 0; i < 25; ++i) {
        SkewPoly b = random_skew(F9, rng, 1 + rng() % 3, true);
        SkewPoly x = random_skew(F9, rng, rng() % 3, false);
        if (x.is_zero()) continue;
        SkewPoly a = b * x;
        auto [qt, rm] = a.left_divmod(b);
        CHECK(rm.is_zero());
        CHECK(qt == x);
        CHECK(b * qt + rm == a);
    }

    // deg a < deg b
    SkewPoly small = SkewPoly::constant(F9, F9->x_gen());
    auto [q2, r2] = small.left_divmod(tau2);
    CHECK(q2.is_zero());
    CHECK(r2 == small);

    // over a ring with nilpotents a q-th root may be required and refused
    RingPtr R = ring_f3z();
    SkewPoly a(R, {R->zero(), R->zeta(), R->zero(), R->one()}); // tau^3 + z tau
    SkewPoly b(R, {R->zero(), R->one()});                       // tau
    CHECK_THROWS_AS(a.left_divmod(b), error);
}

TEST_CASE("additive composition matches skew multiplication") {
    std::mt19937_64 rng(41);
    for (RingPtr R : {ring_f3z(), ring_f4()}) {
        for (int i = 0; i < 12; ++i) {
            SkewPoly a = random_skew(R, rng, rng() % 3, false);
            SkewPoly b = random_skew(R, rng, rng() % 3, false);
            if (a.is_zero() || b.is_zero()) continue;
            RPoly comp = RPoly::zero(R);
            {
                // compose a's additive polynomial with b's
                RPoly fb = b.to_additive();
                RPoly pw = fb;
                uint64_t q = R->q();
                RPoly acc = RPoly::zero(R);
                for (size_t t = 0; t <= size_t(a.degree()); ++t) {
                    acc = acc + RPoly::constant(R, a.coeff(t)) * pw;
                    if (t + 1 <= size_t(a.degree())) {
                        // pw <- pw^q by raising exponents and coefficients
                        std::vector<Elem> c(size_t(pw.degree()) * q + 1, R->zero());
                        for (size_t d = 0; d <= size_t(pw.degree()); ++d)
                            if (!R->is_zero(pw.coeff(d))) c[d * q] = R->pow(pw.coeff(d), q);
                        pw = RPoly(R, std::move(c));
                    }
                }
                comp = acc;
            }
            CHECK((a * b).to_additive() == comp);
        }
    }
}

TEST_CASE("degree of products") {
    std::mt19937_64 rng(43);
    RingPtr R = ring_f3z();
    for (int i = 0; i < 40; ++i) {
        SkewPoly a = random_skew(R, rng, rng() % 4, false);
        SkewPoly b = random_skew(R, rng, rng() % 4, false);
        if (a.is_zero() || b.is_zero()) continue;
        SkewPoly ab = a * b;
        CHECK(ab.degree() <= a.degree() + b.degree());
        if (R->is_unit(a.lead()) && R->is_unit(b.lead()))
            CHECK(ab.degree() == a.degree() + b.degree());
    }
}

TEST_CASE("kernel points of additive polynomials") {
    RingPtr F3 = make_ring(3, 1, 1, 1);
    // tau - 1: Artin-Schreier kernel = F_q
    SkewPoly art(F3, {F3->from_int(-1), F3->one()});
    PointSet ps = kernel_points(F3, art);
    CHECK(ps.count() == 3);
    CHECK(ps.s == 1);

    // tau^2: purely inseparable
    SkewPoly t2(F3, {F3->zero(), F3->zero(), F3->one()});
    PointSet ins = kernel_points(F3, t2);
    CHECK(ins.count() == 1);

    // tau + tau^2 over F_q: exactly q points, the roots of t^q + t;
    // oracle: exhaustive evaluation over F_{q^2}
    SkewPoly mix(F3, {F3->zero(), F3->one(), F3->one()});
    PointSet pm = kernel_points(F3, mix);
    CHECK(pm.count() == 3);
    {
        RingPtr F9big = ring_f9(); // independent model of F_{q^2}
        SkewPoly mix9(F9big, {F9big->zero(), F9big->one(), F9big->one()});
        RPoly f = mix9.to_additive();
        size_t brute = 0;
        for (const Elem& x : F9big->all_elements())
            if (F9big->is_zero(f.eval(x))) ++brute;
        CHECK(brute == pm.count());
    }

    // closure under addition and F_q-scaling
    for (const Elem& a : pm.points)
        for (const Elem& b : pm.points) {
            Elem s = pm.ring->add(a, b);
            CHECK(std::find(pm.points.begin(), pm.points.end(), s) != pm.points.end());
        }
}

TEST_CASE("kummer roots") {
    RingPtr F3 = make_ring(3, 1, 1, 1);
    auto r = kummer_root(*F3, F3->one());
    REQUIRE(r.has_value());
    CHECK(F3->pow(*r, 2) == F3->one());
    CHECK(*r == F3->one()); // lex smallest of {1, 2}
    CHECK(kummer_root(*F3, F3->zero()).has_value());
    // x^2 = -1 has no root in F_3 but one in F_9
    Elem m1 = F3->from_int(-1);
    CHECK_FALSE(kummer_root(*F3, m1).has_value());
    RingPtr E = extension_of(F3, 2);
    auto r2 = kummer_root(*E, E->embed_base(m1));
    REQUIRE(r2.has_value());
    CHECK(E->pow(*r2, 2) == E->embed_base(m1));
    // nonzero nilpotent radicand: no root for q = 3
    RingPtr R = ring_f3z();
    CHECK_FALSE(kummer_root(*R, R->zeta()).has_value());
    // unit with nilpotent part
    Elem a = R->add(R->one(), R->zeta());
    auto r3 = kummer_root(*R, a);
    REQUIRE(r3.has_value());
    CHECK(R->pow(*r3, 2) == a);
}
