#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rosen/entropy.hpp"
#include "rosen/map.hpp"
#include "rosen/natural_extension.hpp"
#include "rosen/verify.hpp"

#include <cmath>

using namespace rosen;

namespace {
const double g = (std::sqrt(5.0) - 1.0) / 2.0;
}

TEST_CASE("planar map pointwise") {
    const Params p = Params::make(3, 0.5);
    const auto im = t2(p, {0.4, 0.0});
    REQUIRE(im.has_value());
    CHECK(im->x == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(im->y == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    CHECK_FALSE(t2(p, {0.0, 0.3}).has_value());

    // golden fixed point: t2 fixes (-g^2, g^2); digit there is (-1, 3)
    const auto fix = t2(p, {g - 1.0, 1.0 - g});
    REQUIRE(fix.has_value());
    CHECK(std::abs(fix->x - (g - 1.0)) < 1e-12);
    CHECK(std::abs(fix->y - (1.0 - g)) < 1e-12);
    CHECK(digit_of(p, g - 1.0)->d == 3);
    CHECK(std::abs(1.0 / (2.0 - (1.0 - g)) - g) < 1e-12);  // 1/(2-g^2) = g

    // fiber monotonicity: for x in Delta(-1:r), y in [0,h] maps into
    // [1/(r l), 1/(r l - h)]
    const Params p8 = Params::make(8, 0.48);
    const double h = 0.3;
    const auto a = t2(p8, {-0.5, 0.0});
    const auto b = t2(p8, {-0.5, h});
    const int r = digit_of(p8, -0.5)->d;
    REQUIRE(a.has_value());
    CHECK(a->y == doctest::Approx(1.0 / (r * p8.lambda)));
    CHECK(b->y == doctest::Approx(1.0 / (r * p8.lambda - h)));
}

TEST_CASE("omega_half geometry") {
    // q = 3: two slabs of heights g^2 and g
    const Region o3 = omega_half(3);
    REQUIRE(o3.slabs().size() == 2);
    CHECK(o3.slabs()[0].x.lo == doctest::Approx(-0.5));
    CHECK(o3.slabs()[0].ys[0].hi == doctest::Approx(1.0 - g).epsilon(1e-14));
    CHECK(o3.slabs()[1].ys[0].hi == doctest::Approx(g).epsilon(1e-14));
    CHECK(o3.measure() == doctest::Approx(std::log1p(g)).epsilon(1e-12));

    // q = 8: measure equals ln((1+cos pi/8)/sin pi/8)
    const Region o8 = omega_half(8);
    const double expect8 = std::log((1 + std::cos(M_PI / 8)) / std::sin(M_PI / 8));
    CHECK(o8.measure() == doctest::Approx(expect8).epsilon(1e-12));

    // even q: H_{p-1} = lambda/2 and the slabs tile I_{1/2}
    for (int q : {4, 6, 8, 10, 12}) {
        const auto spec = domain_spec(q);
        const double l = lambda_of(q);
        if (q > 4)
            CHECK(spec.H.back() == doctest::Approx(l / 2).epsilon(1e-12));
        const Region o = omega_half(q);
        CHECK(o.slabs().front().x.lo == doctest::Approx(-l / 2).epsilon(1e-12));
        CHECK(o.slabs().back().x.hi == doctest::Approx(l / 2).epsilon(1e-12));
        for (size_t i = 0; i + 1 < o.slabs().size(); ++i)
            CHECK(o.slabs()[i].x.hi == doctest::Approx(o.slabs()[i + 1].x.lo).epsilon(1e-12));
    }

    // odd q: the height chain closes on R and L_{2h+1} + R = lambda
    for (int q : {5, 7, 9, 11}) {
        const auto spec = domain_spec(q);
        const double l = lambda_of(q);
        const double tl = 2.0 - l;
        const double R = (-tl + std::sqrt(tl * tl + 4.0)) / 2.0;
        CHECK(spec.R == doctest::Approx(R).epsilon(1e-12));
        CHECK(spec.L.back() + spec.R == doctest::Approx(l).epsilon(1e-9));
        const Region o = omega_half(q);
        for (size_t i = 0; i + 1 < o.slabs().size(); ++i)
            CHECK(o.slabs()[i].x.hi == doctest::Approx(o.slabs()[i + 1].x.lo).epsilon(1e-12));
    }
}

TEST_CASE("omega_half is invariant") {
    for (int q : {3, 5, 8}) {
        const auto rep = check_invariance(Params::make(q, 0.5), omega_half(q), 80, 99);
        CHECK(rep.escape_measure < 1e-8);
        CHECK(rep.max_measure_violation < 1e-10);
    }
}

TEST_CASE("changed-digit region") {
    // alpha = 1/2: empty
    CHECK(changed_digit_region(Params::make(5, 0.5)).region.empty());

    // q = 3, alpha = 0.48: components [delta_r(1/2), delta_r(0.48)) for r >= 2
    const Params p = Params::make(3, 0.48);
    const auto c = changed_digit_region(p, 2000);
    CHECK_FALSE(c.region.empty());
    const Params half = Params::make(3, 0.5);
    CHECK(c.region.contains(0.5 * (delta_r(half, 2) + delta_r(p, 2)), 0.1));
    CHECK(c.region.contains(-0.5 * (delta_r(half, 2) + delta_r(p, 2)), 0.1));
    CHECK_FALSE(c.region.contains(0.39, 0.1));  // inside an unchanged cylinder
    // r = 1 components fall outside I_{1/2} for q = 3
    CHECK_FALSE(c.region.contains(0.55, 0.1));

    // measure of the T_{1/2}-image of C equals mu(D0)
    const auto img = step_region(half, c.region, 4000);
    const Region dd = d0(p);
    CHECK(std::abs(img.region.measure() + img.tail_measure - dd.measure()) <
          c.tail_bound + 1e-9);
    CHECK(region_equal(img.region, dd, c.tail_bound + 1e-8));
}

TEST_CASE("basic deleted region") {
    // q = 3, alpha = 0.45: [0.45, 0.5) x [0, g)
    const Region d = d0(Params::make(3, 0.45));
    REQUIRE(d.slabs().size() == 1);
    CHECK(d.slabs()[0].x.lo == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(d.slabs()[0].x.hi == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.slabs()[0].ys[0].hi == doctest::Approx(g).epsilon(1e-12));

    CHECK(d0(Params::make(3, 0.5)).empty());

    // alpha > 1/2: the mirrored clip {x < (alpha-1) lambda} of height g^2
    const Region dm = d0(Params::make(3, 0.52));
    REQUIRE(dm.slabs().size() == 1);
    CHECK(dm.slabs()[0].x.lo == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(dm.slabs()[0].x.hi == doctest::Approx(-0.48).epsilon(1e-12));
    CHECK(dm.slabs()[0].ys[0].hi == doctest::Approx(1.0 - g).epsilon(1e-12));
}

TEST_CASE("basic added region") {
    // q = 3, alpha = 0.45: [-0.55, -0.5) x [0, g^2), and mu(A0) = mu(D0)
    const Params p = Params::make(3, 0.45);
    const Region a = a0(p);
    REQUIRE(a.slabs().size() == 1);
    CHECK(a.slabs()[0].x.lo == doctest::Approx(-0.55).epsilon(1e-12));
    CHECK(a.slabs()[0].x.hi == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(a.slabs()[0].ys[0].hi == doctest::Approx(1.0 - g).epsilon(1e-12));
    CHECK(std::abs(a.measure() - d0(p).measure()) < 1e-6);

    // q = 8: [l_0, -lambda/2) x [0, L_1) with L_1 = 1/(lambda+1)
    const Params p8 = Params::make(8, 0.48);
    const Region a8 = a0(p8);
    REQUIRE(a8.slabs().size() == 1);
    CHECK(a8.slabs()[0].x.lo == doctest::Approx(p8.i_lo()).epsilon(1e-12));
    CHECK(a8.slabs()[0].x.hi == doctest::Approx(-p8.lambda / 2).epsilon(1e-12));
    CHECK(a8.slabs()[0].ys[0].hi == doctest::Approx(1.0 / (p8.lambda + 1)).epsilon(1e-12));
    CHECK(std::abs(a8.measure() - d0(p8).measure()) < 1e-6);

    // odd q >= 5 too
    const Params p5 = Params::make(5, 0.495);
    const Region a5 = a0(p5);
    CHECK(a5.slabs()[0].ys[0].hi ==
          doctest::Approx(domain_spec(5).L[0]).epsilon(1e-9));
    CHECK(std::abs(a5.measure() - d0(p5).measure()) < 1e-6);
}

TEST_CASE("iterate_region single steps") {
    const Params p = Params::make(3, 0.45);
    const double l1 = (2 * 0.45 - 1) / (1 - 0.45);
    const double r1 = (1 - 2 * 0.45) / 0.45;

    // A_1 = [l_1, 0) x [1/2, g)
    {
        const auto its = iterate_region(p, a0(p), 1, 4000);
        const Region expect = Region::from_rects({{l1, 0.0, 0.5, g}});
        CHECK(symdiff_measure(its.images[0], expect) < 1e-10);
    }
    // D_1 = [0, r_1) x [g^2, 1/2)
    {
        const auto its = iterate_region(p, d0(p), 1, 4000);
        const Region expect = Region::from_rects({{0.0, r1, 1.0 - g, 0.5}});
        CHECK(symdiff_measure(its.images[0], expect) < 1e-10);
    }
    // a full-cylinder rect maps measure-preservingly
    {
        const Params p8 = Params::make(8, 0.48);
        const double lo = -delta_r(p8, 2), hi = -delta_r(p8, 3);
        const Region rect = Region::from_rects({{lo, hi, 0.1, 0.4}});
        const auto st = step_region(p8, rect, 4000);
        CHECK(st.tail_measure == 0.0);
        CHECK(std::abs(st.region.measure() - rect.measure()) < 1e-12);
    }
}

TEST_CASE("quilt classical case") {
    for (double alpha : {0.43, 0.45, 0.48}) {
        const Params p = Params::make(3, alpha);
        const auto rep = quilt(p);
        CHECK(rep.matched);
        CHECK(rep.k_match == 2);
        CHECK(rep.k_prime_match == 2);
        const double l1 = (2 * alpha - 1) / (1 - alpha);
        const double r1 = (1 - 2 * alpha) / alpha;
        const Region expect = Region::from_rects({
            {alpha - 1.0, l1, 0.0, 1.0 - g},
            {l1, r1, 0.0, 1.0 - g},
            {l1, r1, 0.5, g},
            {r1, alpha, 0.0, g},
        });
        CHECK(region_equal(rep.omega_alpha, expect, 1e-8));
        CHECK(rep.mu_omega_alpha == doctest::Approx(std::log1p(g)).epsilon(1e-8));
        CHECK(rep.connected);
    }
}

TEST_CASE("quilt even and odd index") {
    {
        const auto rep = quilt(Params::make(8, 0.48));
        CHECK(rep.matched);
        CHECK(rep.k_match == 4);
        CHECK(rep.k_prime_match == 4);
        CHECK(std::abs(rep.measure_delta) < 1e-8);
        CHECK(rep.connected);
    }
    {
        const auto rep = quilt(Params::make(7, 0.499));
        CHECK(rep.matched);
        CHECK(rep.k_match == 6);
        CHECK(rep.k_prime_match == 6);
        CHECK(std::abs(rep.measure_delta) < 1e-8);
    }
    {
        // odd q past 1/2 but below omega0 still matches at 2h+2
        const auto rep = quilt(Params::make(7, 0.501));
        CHECK(rep.matched);
        CHECK(rep.k_match == 6);
        CHECK(rep.k_prime_match == 6);
    }
}

TEST_CASE("quilted domain is invariant") {
    const Params p = Params::make(8, 0.48);
    const auto rep = quilt(p);
    REQUIRE(rep.matched);
    const auto inv = check_invariance(p, rep.omega_alpha, 60, 7);
    CHECK(inv.escape_measure < 1e-6);
}

TEST_CASE("staggered quilt past omega0") {
    const int q = 7;
    const double alpha = omega0(q) + 0.47 * (1.0 / lambda_of(q) - omega0(q));
    const auto rep = quilt(Params::make(q, alpha));
    CHECK(rep.matched);
    // for alpha > 1/2 the added regions track the r-orbit, so the added
    // stream runs one step past the deleted one
    CHECK(std::abs(rep.k_match - rep.k_prime_match) == 1);
    CHECK(rep.measure_delta > 0);
}
