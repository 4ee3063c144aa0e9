#include "rosen/region.hpp"

#include "rosen/params.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace rosen {

namespace {

constexpr double kTol = kEndpointMergeTol;

// Union-normalize a list of y-intervals in place: sort, merge overlaps and
// near-touches, drop slivers.
void normalize_intervals(std::vector<Interval>& v) {
    if (v.empty())
        return;
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo;
    });
    std::vector<Interval> out;
    out.reserve(v.size());
    for (const auto& iv : v) {
        if (iv.hi - iv.lo <= kTol)
            continue;
        if (!out.empty() && iv.lo <= out.back().hi + kTol)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    v = std::move(out);
}

std::vector<Interval> intervals_union(const std::vector<Interval>& a,
                                      const std::vector<Interval>& b) {
    std::vector<Interval> v;
    v.reserve(a.size() + b.size());
    v.insert(v.end(), a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    normalize_intervals(v);
    return v;
}

std::vector<Interval> intervals_intersect(const std::vector<Interval>& a,
                                          const std::vector<Interval>& b) {
    std::vector<Interval> out;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].lo, b[j].lo);
        const double hi = std::min(a[i].hi, b[j].hi);
        if (hi - lo > kTol)
            out.push_back({lo, hi});
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

std::vector<Interval> intervals_subtract(const std::vector<Interval>& a,
                                         const std::vector<Interval>& b) {
    std::vector<Interval> out;
    for (const auto& ai : a) {
        double cur = ai.lo;
        for (const auto& bi : b) {
            if (bi.hi <= cur || bi.lo >= ai.hi)
                continue;
            if (bi.lo > cur && bi.lo - cur > kTol)
                out.push_back({cur, std::min(bi.lo, ai.hi)});
            cur = std::max(cur, bi.hi);
            if (cur >= ai.hi)
                break;
        }
        if (ai.hi - cur > kTol)
            out.push_back({cur, ai.hi});
    }
    normalize_intervals(out);
    return out;
}

bool interval_lists_equal(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i].lo - b[i].lo) > kTol || std::abs(a[i].hi - b[i].hi) > kTol)
            return false;
    return true;
}

// Merge adjacent slabs carrying identical y-sets, drop empty ones.
std::vector<Slab> coalesce(std::vector<Slab> slabs) {
    std::vector<Slab> out;
    for (auto& s : slabs) {
        if (s.x.hi - s.x.lo <= kTol || s.ys.empty())
            continue;
        if (!out.empty() && std::abs(out.back().x.hi - s.x.lo) <= kTol &&
            interval_lists_equal(out.back().ys, s.ys)) {
            out.back().x.hi = s.x.hi;
        } else {
            out.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace

double rect_measure(const Rect& r) {
    if (r.x_hi - r.x_lo <= 0 || r.y_hi - r.y_lo <= 0)
        return 0.0;
    const double corners[4] = {r.x_lo * r.y_lo, r.x_lo * r.y_hi,
                               r.x_hi * r.y_lo, r.x_hi * r.y_hi};
    for (double c : corners)
        if (1.0 + c <= kTol)
            throw std::domain_error("rect_measure: density pole inside rectangle");
    return std::log1p(r.x_lo * r.y_lo) + std::log1p(r.x_hi * r.y_hi) -
           std::log1p(r.x_lo * r.y_hi) - std::log1p(r.x_hi * r.y_lo);
}

Region Region::from_rects(const std::vector<Rect>& rects) {
    // Sweep the x-axis over all rect endpoints; within each cell take the
    // union of the y-intervals of the rects covering it.
    std::vector<double> cuts;
    cuts.reserve(rects.size() * 2);
    std::vector<Rect> live;
    live.reserve(rects.size());
    for (const auto& r : rects) {
        if (r.x_hi - r.x_lo <= kTol || r.y_hi - r.y_lo <= kTol)
            continue;
        live.push_back(r);
        cuts.push_back(r.x_lo);
        cuts.push_back(r.x_hi);
    }
    Region reg;
    if (live.empty())
        return reg;
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return b - a <= kTol; }),
               cuts.end());

    // Events sorted by start / end for an active-set sweep.
    std::vector<size_t> by_start(live.size()), by_end(live.size());
    std::iota(by_start.begin(), by_start.end(), 0u);
    by_end = by_start;
    std::sort(by_start.begin(), by_start.end(),
              [&](size_t i, size_t j) { return live[i].x_lo < live[j].x_lo; });
    std::sort(by_end.begin(), by_end.end(),
              [&](size_t i, size_t j) { return live[i].x_hi < live[j].x_hi; });

    // Incremental active set keyed by (y_lo, y_hi, idx) so each cell only
    // touches the rects that actually cover it.
    std::set<std::tuple<double, double, size_t>> active;
    size_t si = 0, ei = 0;
    std::vector<Slab> slabs;
    for (size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
        const double lo = cuts[ci], hi = cuts[ci + 1];
        const double mid = 0.5 * (lo + hi);
        while (si < by_start.size() && live[by_start[si]].x_lo <= mid) {
            const auto& r = live[by_start[si]];
            active.insert({r.y_lo, r.y_hi, by_start[si]});
            ++si;
        }
        while (ei < by_end.size() && live[by_end[ei]].x_hi <= mid) {
            const auto& r = live[by_end[ei]];
            active.erase({r.y_lo, r.y_hi, by_end[ei]});
            ++ei;
        }
        if (active.empty())
            continue;
        std::vector<Interval> ys;
        ys.reserve(active.size());
        for (const auto& [ylo, yhi, idx] : active)
            ys.push_back({ylo, yhi});
        normalize_intervals(ys);
        slabs.push_back(Slab{{lo, hi}, std::move(ys)});
    }
    reg.slabs_ = coalesce(std::move(slabs));
    return reg;
}

Region Region::from_slabs(std::vector<Slab> slabs) {
    std::vector<Rect> rects;
    for (auto& s : slabs)
        for (auto& y : s.ys)
            rects.push_back({s.x.lo, s.x.hi, y.lo, y.hi});
    return from_rects(rects);
}

std::vector<Rect> Region::rects() const {
    std::vector<Rect> out;
    for (const auto& s : slabs_)
        for (const auto& y : s.ys)
            out.push_back({s.x.lo, s.x.hi, y.lo, y.hi});
    return out;
}

std::size_t Region::rect_count() const {
    std::size_t n = 0;
    for (const auto& s : slabs_)
        n += s.ys.size();
    return n;
}

double Region::measure() const {
    double total = 0.0;
    for (const auto& s : slabs_)
        for (const auto& y : s.ys)
            total += rect_measure({s.x.lo, s.x.hi, y.lo, y.hi});
    return total;
}

bool Region::contains(double x, double y) const {
    auto it = std::upper_bound(slabs_.begin(), slabs_.end(), x,
                               [](double v, const Slab& s) { return v < s.x.lo; });
    if (it == slabs_.begin())
        return false;
    --it;
    if (x < it->x.lo || x >= it->x.hi)
        return false;
    auto yit = std::upper_bound(it->ys.begin(), it->ys.end(), y,
                                [](double v, const Interval& iv) { return v < iv.lo; });
    if (yit == it->ys.begin())
        return false;
    --yit;
    return y >= yit->lo && y < yit->hi;
}

namespace {

using IntervalOp = std::vector<Interval> (*)(const std::vector<Interval>&,
                                             const std::vector<Interval>&);

const std::vector<Interval>& slab_ys_at(const Region& r, double x,
                                        const std::vector<Interval>& none) {
    const auto& slabs = r.slabs();
    auto it = std::upper_bound(slabs.begin(), slabs.end(), x,
                               [](double v, const Slab& s) { return v < s.x.lo; });
    if (it == slabs.begin())
        return none;
    --it;
    if (x >= it->x.lo && x < it->x.hi)
        return it->ys;
    return none;
}

Region combine(const Region& a, const Region& b, IntervalOp op) {
    std::vector<double> cuts;
    for (const auto& s : a.slabs()) {
        cuts.push_back(s.x.lo);
        cuts.push_back(s.x.hi);
    }
    for (const auto& s : b.slabs()) {
        cuts.push_back(s.x.lo);
        cuts.push_back(s.x.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return y - x <= kTol; }),
               cuts.end());
    static const std::vector<Interval> none;
    std::vector<Slab> slabs;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        const double mid = 0.5 * (lo + hi);
        auto ys = op(slab_ys_at(a, mid, none), slab_ys_at(b, mid, none));
        if (!ys.empty())
            slabs.push_back(Slab{{lo, hi}, std::move(ys)});
    }
    return Region::from_slabs(std::move(slabs));
}

} // namespace

Region region_union(const Region& a, const Region& b) {
    return combine(a, b, &intervals_union);
}

Region region_intersect(const Region& a, const Region& b) {
    return combine(a, b, &intervals_intersect);
}

Region region_subtract(const Region& a, const Region& b) {
    return combine(a, b, &intervals_subtract);
}

double symdiff_measure(const Region& a, const Region& b) {
    return region_subtract(a, b).measure() + region_subtract(b, a).measure();
}

bool region_equal(const Region& a, const Region& b, double tol) {
    return symdiff_measure(a, b) < tol;
}

int connected_components(const Region& r, double gap_tol) {
    // Union-find over (slab, y-interval) nodes.
    const auto& slabs = r.slabs();
    std::vector<size_t> offset(slabs.size() + 1, 0);
    for (size_t i = 0; i < slabs.size(); ++i)
        offset[i + 1] = offset[i] + slabs[i].ys.size();
    const size_t n = offset.back();
    if (n == 0)
        return 0;
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };

    for (size_t i = 0; i < slabs.size(); ++i) {
        const auto& ys = slabs[i].ys;
        for (size_t j = 0; j + 1 < ys.size(); ++j)
            if (ys[j + 1].lo - ys[j].hi <= gap_tol)
                unite(offset[i] + j, offset[i] + j + 1);
        if (i + 1 < slabs.size() && slabs[i + 1].x.lo - slabs[i].x.hi <= gap_tol) {
            const auto& yn = slabs[i + 1].ys;
            size_t a = 0, b = 0;
            while (a < ys.size() && b < yn.size()) {
                if (ys[a].lo <= yn[b].hi + gap_tol && yn[b].lo <= ys[a].hi + gap_tol)
                    unite(offset[i] + a, offset[i + 1] + b);
                if (ys[a].hi < yn[b].hi)
                    ++a;
                else
                    ++b;
            }
        }
    }
    int comps = 0;
    for (size_t v = 0; v < n; ++v)
        if (find(v) == v)
            ++comps;
    return comps;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string region_to_json(const Region& r) {
    std::string s = "{\"slabs\":[";
    bool first_slab = true;
    for (const auto& slab : r.slabs()) {
        if (!first_slab)
            s += ',';
        first_slab = false;
        s += "{\"x\":[" + fmt17(slab.x.lo) + ',' + fmt17(slab.x.hi) + "],\"ys\":[";
        bool first_y = true;
        for (const auto& y : slab.ys) {
            if (!first_y)
                s += ',';
            first_y = false;
            s += '[' + fmt17(y.lo) + ',' + fmt17(y.hi) + ']';
        }
        s += "]}";
    }
    s += "]}";
    return s;
}

Region region_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<Slab> slabs;
    for (const auto& js : j.at("slabs")) {
        Slab s;
        s.x.lo = js.at("x").at(0).get<double>();
        s.x.hi = js.at("x").at(1).get<double>();
        for (const auto& jy : js.at("ys"))
            s.ys.push_back({jy.at(0).get<double>(), jy.at(1).get<double>()});
        slabs.push_back(std::move(s));
    }
    return Region::from_slabs(std::move(slabs));
}

} // namespace rosen
