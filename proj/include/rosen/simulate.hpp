#pragma once

#include "rosen/natural_extension.hpp"
#include "rosen/params.hpp"
#include "rosen/region.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rosen {

// A simulated natural-extension orbit; fully reproducible from
// (params, n, burn_in, seed).  The generator is std::mt19937_64 with
// uniforms built from the top 53 bits, identical on every platform.
struct PointCloud {
    std::vector<PlanarPoint> points;
    Params params;
    std::uint64_t seed = 0;
    long long burn_in = 0;
    int restarts = 0;
};

PointCloud simulate(const Params& p, long long n, long long burn_in,
                    std::uint64_t seed);

// Fraction of cloud points inside the region.
double containment(const PointCloud& cloud, const Region& region);

// CSV with header "x,y", one point per line, 17 significant digits.
void write_cloud_csv(std::ostream& os, const PointCloud& cloud);
std::vector<PlanarPoint> read_cloud_csv(std::istream& is);

// Region outlines plus a subsampled cloud (at most 20000 points).
void write_svg(std::ostream& os, const Region& region,
               const std::vector<PlanarPoint>& points);

} // namespace rosen
