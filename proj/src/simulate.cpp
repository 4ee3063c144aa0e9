#include "rosen/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace rosen {

PointCloud simulate(const Params& p, long long n, long long burn_in,
                    std::uint64_t seed) {
    PointCloud cloud;
    cloud.params = p;
    cloud.seed = seed;
    cloud.burn_in = burn_in;
    cloud.points.reserve(static_cast<size_t>(std::max<long long>(n, 0)));

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double lo = p.i_lo(), hi = p.i_hi();
    auto random_start = [&]() { return lo + (0.001 + 0.998 * uniform()) * (hi - lo); };

    double x = random_start(), y = 0.0;
    auto advance = [&]() {
        if (std::abs(x) <= kZeroOrbitTol) {
            x = random_start();
            y = 0.0;
            ++cloud.restarts;
        }
        const int eps = x > 0 ? 1 : -1;
        const int d = digit_value_unchecked(p, x);
        const double nx = map_with_digit(p, x, d);
        y = 1.0 / (d * p.lambda + eps * y);
        x = nx;
    };
    for (long long i = 0; i < burn_in; ++i)
        advance();
    for (long long i = 0; i < n; ++i) {
        advance();
        cloud.points.push_back({x, y});
    }
    return cloud;
}

double containment(const PointCloud& cloud, const Region& region) {
    if (cloud.points.empty())
        return 0.0;
    long long inside = 0;
    for (const auto& pt : cloud.points)
        if (region.contains(pt.x, pt.y))
            ++inside;
    return static_cast<double>(inside) / static_cast<double>(cloud.points.size());
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_cloud_csv(std::ostream& os, const PointCloud& cloud) {
    os << "x,y\n";
    for (const auto& pt : cloud.points)
        os << fmt17(pt.x) << ',' << fmt17(pt.y) << '\n';
}

std::vector<PlanarPoint> read_cloud_csv(std::istream& is) {
    std::vector<PlanarPoint> pts;
    std::string line;
    if (!std::getline(is, line))
        return pts;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            continue;
        pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return pts;
}

void write_svg(std::ostream& os, const Region& region,
               const std::vector<PlanarPoint>& points) {
    double xlo = std::numeric_limits<double>::max(), xhi = -xlo;
    double ylo = xlo, yhi = xhi;
    auto grow = [&](double x, double y) {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    };
    for (const auto& s : region.slabs())
        for (const auto& yiv : s.ys) {
            grow(s.x.lo, yiv.lo);
            grow(s.x.hi, yiv.hi);
        }
    for (const auto& pt : points)
        grow(pt.x, pt.y);
    if (xhi <= xlo) {
        xlo = ylo = 0;
        xhi = yhi = 1;
    }
    const double w = 840, h = 640, margin = 20;
    const double sx = (w - 2 * margin) / (xhi - xlo);
    const double sy = (h - 2 * margin) / (yhi - ylo);
    auto px = [&](double x) { return margin + (x - xlo) * sx; };
    auto py = [&](double y) { return h - margin - (y - ylo) * sy; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
       << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    const size_t stride = points.size() > 20000 ? points.size() / 20000 + 1 : 1;
    for (size_t i = 0; i < points.size(); i += stride)
        os << "<circle cx=\"" << px(points[i].x) << "\" cy=\"" << py(points[i].y)
           << "\" r=\"0.7\" fill=\"#29506d\" fill-opacity=\"0.5\"/>\n";
    for (const auto& s : region.slabs())
        for (const auto& yiv : s.ys)
            os << "<rect x=\"" << px(s.x.lo) << "\" y=\"" << py(yiv.hi) << "\" width=\""
               << (s.x.hi - s.x.lo) * sx << "\" height=\"" << (yiv.hi - yiv.lo) * sy
               << "\" fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"0.8\"/>\n";
    os << "</svg>\n";
}

} // namespace rosen
