#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rosen/map.hpp"
#include "rosen/params.hpp"

#include <cmath>
#include <random>

using namespace rosen;

TEST_CASE("t_alpha basics") {
    const Params p = Params::make(3, 0.45);
    CHECK(t_alpha(p, 0.0) == 0.0);
    // l_1 = (2a-1)/(1-a), r_1 = (1-2a)/a for q = 3
    CHECK(t_alpha(p, p.i_lo()) == doctest::Approx((2 * 0.45 - 1) / (1 - 0.45)).epsilon(1e-12));
    CHECK(t_alpha(p, p.i_hi()) == doctest::Approx((1 - 2 * 0.45) / 0.45).epsilon(1e-12));
    CHECK_THROWS_AS(t_alpha(p, 0.7), std::domain_error);
}

TEST_CASE("digit_of") {
    const Params p = Params::make(3, 0.5);
    CHECK(*digit_of(p, 0.4) == Digit{1, 3});
    CHECK(*digit_of(p, -0.4) == Digit{-1, 3});
    CHECK_FALSE(digit_of(p, 0.0).has_value());
    // exact boundary: x = delta_r gets digit r + 1
    for (int r : {2, 3, 5}) {
        const double x = delta_r(p, r);
        CHECK(digit_of(p, x)->d == r + 1);
    }
}

TEST_CASE("delta_r values and monotonicity") {
    const Params p = Params::make(3, 0.5);
    CHECK(delta_r(p, 2) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(delta_r(p, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(delta_r(p, 0), std::domain_error);
    const Params p45 = Params::make(3, 0.45);
    CHECK(delta_r(p45, 2) > delta_r(p, 2));   // decreasing in alpha
    CHECK(delta_r(p, 3) < delta_r(p, 2));     // decreasing in r
}

TEST_CASE("cylinder_of") {
    const Params p = Params::make(3, 0.5);
    const auto c3 = cylinder_of(p, 1, 3);
    CHECK_FALSE(c3.empty);
    CHECK(c3.lo == doctest::Approx(1.0 / 3.5));
    CHECK(c3.hi == doctest::Approx(0.4));
    CHECK(c3.closed_hi);

    const auto c2 = cylinder_of(p, 1, 2);  // clipped at r_0 = 1/2
    CHECK_FALSE(c2.empty);
    CHECK(c2.lo == doctest::Approx(0.4));
    CHECK(c2.hi == doctest::Approx(0.5));
    CHECK_FALSE(c2.closed_hi);

    CHECK(cylinder_of(p, -1, 1).empty);
}

TEST_CASE("expand") {
    const Params p = Params::make(3, 0.5);
    CHECK(expand(p, 0.0, 5).empty());

    // even q: expansion of l_0 starts with (-1:1)^{p-1}
    for (int q : {4, 6, 8, 10}) {
        const double alpha = alpha0(q) + 0.6 * (0.5 - alpha0(q));
        const Params pe = Params::make(q, alpha);
        const auto digs = expand(pe, pe.i_lo(), q / 2 - 1);
        REQUIRE(static_cast<int>(digs.size()) == q / 2 - 1);
        for (const auto& d : digs)
            CHECK(d == Digit{-1, 1});
    }

    // odd q: expansion of -r_0 starts with (-1:1)^h, (-1:2), (-1:1)^h
    for (int q : {5, 7, 9}) {
        const int h = (q - 3) / 2;
        const double alpha = alpha0(q) + 0.6 * (0.5 - alpha0(q));
        const Params po = Params::make(q, alpha);
        const auto digs = expand(po, -po.i_hi(), 2 * h + 1);
        REQUIRE(static_cast<int>(digs.size()) == 2 * h + 1);
        for (int i = 0; i < h; ++i)
            CHECK(digs[i] == Digit{-1, 1});
        CHECK(digs[h] == Digit{-1, 2});
        for (int i = h + 1; i <= 2 * h; ++i)
            CHECK(digs[i] == Digit{-1, 1});
    }
}

TEST_CASE("endpoint orbits") {
    // q = 3, alpha = 1/2: r_1 = 0 and the orbit stops.
    {
        const Params p = Params::make(3, 0.5);
        const auto [lo, ro] = endpoint_orbits(p, 5);
        REQUIRE(ro.points.size() >= 2);
        CHECK(ro.points[1] == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(ro.points.size() == 2);  // terminated
        (void)lo;
    }
    // q = 3, alpha = 0.45: l_2 = r_2.
    {
        const Params p = Params::make(3, 0.45);
        const auto [lo, ro] = endpoint_orbits(p, 2);
        CHECK(lo.points[2] == doctest::Approx(ro.points[2]).epsilon(1e-12));
    }
    // even q: l_p = r_p across the plateau
    for (int q : {4, 6, 8, 10}) {
        for (double t : {0.2, 0.8}) {
            const double alpha = alpha0(q) + 0.004 + t * (0.5 - alpha0(q) - 0.008);
            const Params p = Params::make(q, alpha);
            const auto [lo, ro] = endpoint_orbits(p, q / 2);
            CHECK(std::abs(lo.points[q / 2] - ro.points[q / 2]) < 1e-9);
        }
    }
}

TEST_CASE("verify_orbit_sync") {
    {
        const auto rep = verify_orbit_sync(Params::make(3, 0.45), 10);
        CHECK(rep.matched);
        CHECK(rep.k == 2);
        CHECK(rep.k_prime == 2);
        CHECK(rep.predecessor_digits_offset);
    }
    {
        const auto rep = verify_orbit_sync(Params::make(8, 0.48), 10);
        CHECK(rep.matched);
        CHECK(rep.k == 4);
        CHECK(rep.k_prime == 4);
        CHECK(rep.predecessor_digits_offset);
    }
    {
        // alpha must sit above alpha0(7) ~ 0.4973 for the 2h+2 sync
        const auto rep = verify_orbit_sync(Params::make(7, 0.499), 12);
        CHECK(rep.matched);
        CHECK(rep.k == 6);
        CHECK(rep.k_prime == 6);
    }
    // odd q past omega0: staggered k' = k + 1.  The exact midpoint of
    // (omega0, 1/lambda) is avoided: for q = 3 it is (1+sqrt 5)/4, where
    // l_1 = r_1 coincidentally and the minimal pair degenerates to (1,1).
    for (int q : {3, 5, 7}) {
        const double alpha = omega0(q) + 0.47 * (1.0 / lambda_of(q) - omega0(q));
        const auto rep = verify_orbit_sync(Params::make(q, alpha), 16);
        CHECK(rep.matched);
        CHECK(rep.k_prime == rep.k + 1);
    }
}

TEST_CASE("range and digit/cylinder consistency properties") {
    std::mt19937_64 rng(9);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (auto [q, alpha] : {std::pair<int, double>{3, 0.45}, {5, 0.5}, {8, 0.48}, {9, 0.4995}}) {
        const Params p = Params::make(q, alpha);
        for (int i = 0; i < 10000; ++i) {
            const double x = p.i_lo() + uniform() * (p.i_hi() - p.i_lo());
            const double tx = t_alpha(p, x);
            CHECK(tx >= p.i_lo() - 1e-12);
            CHECK(tx < p.i_hi() + 1e-12);
            const auto dig = digit_of(p, x);
            if (dig) {
                const auto cyl = cylinder_of(p, dig->eps, dig->d);
                REQUIRE_FALSE(cyl.empty);
                CHECK(x >= cyl.lo - 1e-12);
                CHECK(x <= cyl.hi + 1e-12);
            }
        }
    }
}

TEST_CASE("even-q closed forms and key identity") {
    for (int q : {4, 6, 8, 10}) {
        const int pp = q / 2;
        const double l = lambda_of(q);
        for (double t : {0.3, 0.7}) {
            const double alpha = alpha0(q) + 0.004 + t * (0.5 - alpha0(q) - 0.008);
            const Params p = Params::make(q, alpha);
            const auto [lo, ro] = endpoint_orbits(p, pp - 1);
            const double lpm1 = l * (1 - 2 * alpha) / (alpha * l * l - 2);
            const double rpm1 = (2 * alpha - 1) * l / ((1 - alpha) * l * l - 2);
            CHECK(lo.points[pp - 1] == doctest::Approx(lpm1).epsilon(1e-9));
            CHECK(ro.points[pp - 1] == doctest::Approx(rpm1).epsilon(1e-9));
            const double id = std::abs(1 / lo.points[pp - 1]) - std::abs(1 / ro.points[pp - 1]);
            CHECK(id == doctest::Approx(l).epsilon(1e-9));
        }
    }
}

TEST_CASE("odd-q key identity") {
    for (int q : {5, 7, 9}) {
        const double alpha = alpha0(q) + 0.6 * (0.5 - alpha0(q));
        const Params p = Params::make(q, alpha);
        const int k = q - 2;  // 2h + 1
        const auto [lo, ro] = endpoint_orbits(p, k);
        const double id = std::abs(1 / ro.points[k]) - std::abs(1 / lo.points[k]);
        CHECK(id == doctest::Approx(-p.lambda).epsilon(1e-9));
    }
}
