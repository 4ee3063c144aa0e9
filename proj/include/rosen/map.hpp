#pragma once

#include "rosen/params.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace rosen {

// Signed continued-fraction digit (eps, d): eps = sgn(x), d >= 1.
struct Digit {
    int eps = 1;
    int d = 1;
    bool operator==(const Digit&) const = default;
};

// Digit of x under T_alpha: d = floor(|1/(lambda x)| + 1 - alpha).
// Empty when the orbit has terminated (|x| below kZeroOrbitTol).
// Throws std::domain_error when x lies outside I_alpha.
std::optional<Digit> digit_of(const Params& p, double x);

// T_alpha(x) = |1/x| - lambda * d_alpha(x); T_alpha(0) = 0.
double t_alpha(const Params& p, double x);

// Hot-loop building blocks without domain checks: the digit value of a
// nonzero x, and the map application with a known digit (clamped into
// I_alpha, where the true value always lies).
int digit_value_unchecked(const Params& p, double x);
double map_with_digit(const Params& p, double x, int d);

// Cylinder boundary delta_r = 1/(lambda (r + alpha)), r >= 1.
double delta_r(const Params& p, int r);

// A cylinder as an interval with explicit endpoint closure.
struct CylinderInterval {
    double lo = 0, hi = 0;
    bool closed_lo = false, closed_hi = false;
    bool empty = true;
};

// Cylinder Delta(eps:r) intersected with I_alpha.  Full positive cylinders
// are (delta_r, delta_{r-1}], negative ones [-delta_{r-1}, -delta_r);
// cylinders at the interval ends are clipped, vanishing ones come back empty.
CylinderInterval cylinder_of(const Params& p, int eps, int r);

// First n digits of x; shorter when the orbit reaches 0.
std::vector<Digit> expand(const Params& p, double x, int n);

struct Orbit {
    std::vector<double> points;  // x_0 .. x_m (m <= n; stops after reaching 0)
    std::vector<Digit> digits;   // digit of x_i for each applied step
};

// Orbits of the interval endpoints l_0 = lambda(alpha-1) and r_0 = lambda*alpha.
std::pair<Orbit, Orbit> endpoint_orbits(const Params& p, int n);

struct SyncReport {
    bool matched = false;
    int k = -1;        // index into the l-orbit
    int k_prime = -1;  // index into the r-orbit
    double residual = 0;
    std::vector<Digit> digit_trace_l, digit_trace_r;
    // Whether digit(l_{k-1}) = (-1, d) and digit(r_{k'-1}) = (+1, d-1).
    bool predecessor_digits_offset = false;
};

// Finds the minimal (k, k') with |l_k - r_{k'}| < tol, preferring small k+k'
// and then small |k - k'|.
SyncReport verify_orbit_sync(const Params& p, int max_steps, double tol = kSyncTol);

} // namespace rosen
