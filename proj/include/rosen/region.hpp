#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rosen {

// Axis-aligned rectangle [x_lo, x_hi) x [y_lo, y_hi).
struct Rect {
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
};

// mu-measure of a rect under d mu = dx dy / (1 + xy)^2:
//   ln[(1+x_lo y_lo)(1+x_hi y_hi)] - ln[(1+x_lo y_hi)(1+x_hi y_lo)].
// Throws std::domain_error when the density pole 1 + xy <= 0 touches the rect.
double rect_measure(const Rect& r);

struct Interval {
    double lo = 0, hi = 0;
    double length() const { return hi - lo; }
};

// One vertical slab: an x-interval carrying a disjoint, sorted set of
// y-intervals (all closed-left / open-right).
struct Slab {
    Interval x;
    std::vector<Interval> ys;
};

// Canonical finite union of rectangles, organized as x-disjoint slabs
// sorted by x; adjacent slabs with identical y-sets are merged, endpoints
// closer than kEndpointMergeTol are unified.
class Region {
public:
    Region() = default;
    static Region from_rects(const std::vector<Rect>& rects);
    static Region from_slabs(std::vector<Slab> slabs);  // re-canonicalizes

    const std::vector<Slab>& slabs() const { return slabs_; }
    bool empty() const { return slabs_.empty(); }
    std::vector<Rect> rects() const;
    std::size_t rect_count() const;

    double measure() const;
    bool contains(double x, double y) const;

private:
    std::vector<Slab> slabs_;
};

Region region_union(const Region& a, const Region& b);
Region region_intersect(const Region& a, const Region& b);
Region region_subtract(const Region& a, const Region& b);

// mu-measure of the symmetric difference.
double symdiff_measure(const Region& a, const Region& b);

// True iff mu(a symdiff b) < tol.
bool region_equal(const Region& a, const Region& b, double tol);

// Components of the closure; rects touching within gap_tol are connected.
int connected_components(const Region& r, double gap_tol);

// {"slabs":[{"x":[lo,hi],"ys":[[lo,hi],...]},...]}, numbers at 17 significant
// digits so doubles round-trip exactly.
std::string region_to_json(const Region& r);
Region region_from_json(const std::string& text);

} // namespace rosen
