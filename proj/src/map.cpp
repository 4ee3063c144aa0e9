#include "rosen/map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rosen {

namespace {

void check_domain(const Params& p, double x, const char* who) {
    if (!p.in_domain(x))
        throw std::domain_error(std::string(who) + ": x = " + std::to_string(x) +
                                " outside I_alpha for q=" + std::to_string(p.q) +
                                ", alpha=" + std::to_string(p.alpha));
}

// delta with r >= 0 (delta_0 = 1/(lambda*alpha) bounds the digit-1 cylinder).
double delta_unchecked(const Params& p, int r) {
    const double den = p.lambda * (static_cast<double>(r) + p.alpha);
    if (den <= 0.0)
        return std::numeric_limits<double>::infinity();
    return 1.0 / den;
}

// Digit with the floor argument snapped to integers within 1e-9, so exact
// cylinder boundaries (x = delta_r) get the digit r+1 deterministically
// instead of depending on the rounding of lambda.
double digit_value(const Params& p, double x) {
    double v = 1.0 / (p.lambda * std::abs(x)) + 1.0 - p.alpha;
    const double r = std::nearbyint(v);
    if (std::abs(v - r) < 1e-9)
        v = r;
    return std::floor(v);
}

// One map application with the digit already known; the true value always
// lies in I_alpha, so the output is clamped there to absorb rounding noise
// (which is severe when |x| is tiny).
double apply_map(const Params& p, double x, int d) {
    double t = 1.0 / std::abs(x) - p.lambda * static_cast<double>(d);
    const double lo = p.i_lo(), hi = p.i_hi();
    if (t < lo)
        t = lo;
    if (t >= hi)
        t = std::nextafter(hi, lo);
    return t;
}

} // namespace

int digit_value_unchecked(const Params& p, double x) {
    return static_cast<int>(digit_value(p, x));
}

double map_with_digit(const Params& p, double x, int d) {
    return apply_map(p, x, d);
}

std::optional<Digit> digit_of(const Params& p, double x) {
    check_domain(p, x, "digit_of");
    if (std::abs(x) <= kZeroOrbitTol)
        return std::nullopt;
    const int eps = x > 0 ? 1 : -1;
    const double d = digit_value(p, x);
    if (d < 1.0)
        throw std::domain_error("digit_of: digit below 1 at x = " + std::to_string(x));
    return Digit{eps, static_cast<int>(d)};
}

double t_alpha(const Params& p, double x) {
    check_domain(p, x, "t_alpha");
    const auto dig = digit_of(p, x);
    if (!dig)
        return 0.0;
    return apply_map(p, x, dig->d);
}

double delta_r(const Params& p, int r) {
    if (r < 1)
        throw std::domain_error("delta_r: r must be >= 1");
    return delta_unchecked(p, r);
}

CylinderInterval cylinder_of(const Params& p, int eps, int r) {
    if (r < 1)
        throw std::domain_error("cylinder_of: r must be >= 1");
    if (eps != 1 && eps != -1)
        throw std::domain_error("cylinder_of: eps must be +1 or -1");
    const double dr = delta_unchecked(p, r);
    const double drm1 = delta_unchecked(p, r - 1);
    CylinderInterval c;
    if (eps == 1) {
        // (delta_r, delta_{r-1}] clipped to x < i_hi.
        c.lo = dr;
        c.closed_lo = false;
        if (drm1 < p.i_hi()) {
            c.hi = drm1;
            c.closed_hi = true;
        } else {
            c.hi = p.i_hi();
            c.closed_hi = false;
        }
    } else {
        // [-delta_{r-1}, -delta_r) clipped to x >= i_lo.
        c.hi = -dr;
        c.closed_hi = false;
        if (-drm1 >= p.i_lo()) {
            c.lo = -drm1;
            c.closed_lo = true;
        } else {
            c.lo = p.i_lo();
            c.closed_lo = true;
        }
    }
    c.empty = !(c.lo < c.hi - kEndpointMergeTol);
    return c;
}

std::vector<Digit> expand(const Params& p, double x, int n) {
    check_domain(p, x, "expand");
    std::vector<Digit> out;
    out.reserve(static_cast<size_t>(std::max(n, 0)));
    double cur = x;
    for (int i = 0; i < n; ++i) {
        const auto dig = digit_of(p, cur);
        if (!dig)
            break;
        out.push_back(*dig);
        cur = apply_map(p, cur, dig->d);
    }
    return out;
}

namespace {

Orbit run_orbit(const Params& p, double x0, int n) {
    Orbit o;
    o.points.push_back(x0);
    double cur = x0;
    for (int i = 0; i < n; ++i) {
        const auto dig = digit_of(p, cur);
        if (!dig)
            break;
        o.digits.push_back(*dig);
        cur = apply_map(p, cur, dig->d);
        o.points.push_back(cur);
    }
    return o;
}

} // namespace

std::pair<Orbit, Orbit> endpoint_orbits(const Params& p, int n) {
    return {run_orbit(p, p.i_lo(), n), run_orbit(p, p.i_hi(), n)};
}

SyncReport verify_orbit_sync(const Params& p, int max_steps, double tol) {
    auto [lo, ro] = endpoint_orbits(p, max_steps);
    SyncReport rep;
    rep.digit_trace_l = lo.digits;
    rep.digit_trace_r = ro.digits;
    const int nl = static_cast<int>(lo.points.size()) - 1;
    const int nr = static_cast<int>(ro.points.size()) - 1;
    for (int sum = 2; sum <= 2 * max_steps && !rep.matched; ++sum) {
        // Prefer k = k', then widen the offset.
        for (int off = 0; off <= sum - 2 && !rep.matched; ++off) {
            for (int sgn : {+1, -1}) {
                if (off == 0 && sgn < 0)
                    continue;
                const int twice_k = sum + sgn * off;
                if (twice_k % 2 != 0)
                    continue;
                const int k = twice_k / 2;
                const int kp = sum - k;
                if (k < 1 || kp < 1 || k > nl || kp > nr)
                    continue;
                const double res = std::abs(lo.points[k] - ro.points[kp]);
                if (res < tol) {
                    rep.matched = true;
                    rep.k = k;
                    rep.k_prime = kp;
                    rep.residual = res;
                    break;
                }
            }
        }
    }
    if (rep.matched && rep.k >= 1 && rep.k_prime >= 1 &&
        rep.k - 1 < static_cast<int>(lo.digits.size()) &&
        rep.k_prime - 1 < static_cast<int>(ro.digits.size())) {
        const Digit dl = lo.digits[rep.k - 1];
        const Digit dr = ro.digits[rep.k_prime - 1];
        rep.predecessor_digits_offset = (dl.eps == -1 && dr.eps == 1 && dl.d == dr.d + 1);
    }
    return rep;
}

} // namespace rosen
