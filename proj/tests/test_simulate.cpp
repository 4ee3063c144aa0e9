#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rosen/natural_extension.hpp"
#include "rosen/simulate.hpp"

#include <sstream>

using namespace rosen;

TEST_CASE("simulation determinism") {
    const Params p = Params::make(8, 0.48);
    const auto c1 = simulate(p, 5000, 200, 12345);
    const auto c2 = simulate(p, 5000, 200, 12345);
    REQUIRE(c1.points.size() == c2.points.size());
    for (size_t i = 0; i < c1.points.size(); ++i) {
        CHECK(c1.points[i].x == c2.points[i].x);
        CHECK(c1.points[i].y == c2.points[i].y);
    }
    const auto c3 = simulate(p, 5000, 200, 54321);
    CHECK(c3.points[0].x != c1.points[0].x);
}

TEST_CASE("containment") {
    const Region box = Region::from_rects({{0, 1, 0, 1}});
    PointCloud cloud;
    cloud.points = {{0.5, 0.5}, {0.1, 0.9}, {1.5, 0.5}, {0.5, -0.1}};
    CHECK(containment(cloud, box) == doctest::Approx(0.5));
    CHECK(containment(cloud, Region{}) == 0.0);

    // uniform points drawn inside a region are all contained
    const Params p = Params::make(3, 0.5);
    const auto sim = simulate(p, 2000, 100, 9);
    const Region omega = omega_half(3);
    CHECK(containment(sim, omega) > 0.999);
}

TEST_CASE("simulated cloud lands in the quilted domain") {
    const Params p = Params::make(8, 0.48);
    const auto rep = quilt(p, -1, 4000);
    REQUIRE(rep.matched);
    const auto cloud = simulate(p, 20000, 500, 31);
    CHECK(containment(cloud, rep.omega_alpha) >= 0.999);
}

TEST_CASE("csv round trip at 17 digits") {
    const Params p = Params::make(5, 0.5);
    const auto cloud = simulate(p, 3000, 100, 77);
    std::stringstream ss;
    write_cloud_csv(ss, cloud);
    const auto back = read_cloud_csv(ss);
    REQUIRE(back.size() == cloud.points.size());
    for (size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].x == cloud.points[i].x);
        CHECK(back[i].y == cloud.points[i].y);
    }
}

TEST_CASE("svg emission") {
    const auto cloud = simulate(Params::make(3, 0.45), 500, 50, 1);
    std::stringstream ss;
    write_svg(ss, omega_half(3), cloud.points);
    const std::string svg = ss.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<rect") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
}
