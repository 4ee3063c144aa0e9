#pragma once

#include "rosen/map.hpp"
#include "rosen/params.hpp"
#include "rosen/region.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rosen {

struct PlanarPoint {
    double x = 0, y = 0;
};

// Planar natural-extension map (x, y) -> (T_alpha(x), 1/(d*lambda + eps*y)).
// Empty when the x-orbit has terminated at 0.
std::optional<PlanarPoint> t2(const Params& p, PlanarPoint pt);

// Geometry of the alpha = 1/2 natural-extension domain.
// Even q = 2p: slab marks phi_j = T_{1/2}^j(-lambda/2), heights L_1..L_{p-1}
// with L_1 = 1/(lambda+1), L_j = 1/(lambda - L_{j-1}); last slab height 1.
// Odd q = 2h+3 >= 5: heights solve L_1 = 1/(2 lambda - L_{2h}),
// L_2 = 1/(2 lambda - L_{2h+1}), L_j = 1/(lambda - L_{j-2}); last height is
// the positive root R of R^2 + (2-lambda) R - 1 = 0.
// q = 3: the nearest-integer domain with heights g^2 and g.
struct DomainSpec {
    int q = 3;
    bool odd = true;
    double R = 0;                 // last slab height (1 for even q)
    std::vector<double> phi;     // phi_0 .. phi_{last}, phi_last snapped to 0
    std::vector<double> L;       // L_1.. (heights; index 0 holds L_1)
    std::vector<double> H;       // even q: H_1 = 1/lambda, H_i = 1/(lambda-H_{i-1})
};

DomainSpec domain_spec(int q);

// The alpha = 1/2 domain as a canonical region.
Region omega_half(int q);

struct ChangedDigitRegion {
    Region region;       // truncated at cylinder index n_max
    double tail_bound;   // measure bound for the omitted components
};

// Region of Omega_{1/2} over the x-set where the T_alpha digit differs from
// the T_{1/2} digit.  Empty at alpha = 1/2.
ChangedDigitRegion changed_digit_region(const Params& p, int n_max = 10000);

// Basic deleted region: the part of Omega_{1/2} beyond the I_alpha endpoint
// (x > alpha*lambda for alpha < 1/2, x < (alpha-1)*lambda for alpha > 1/2).
Region d0(const Params& p);

// Basic added region, the T_alpha-image of the changed-digit region.  For
// alpha < 1/2 the image is cross-checked against the closed rectangle
// [l_0, -lambda/2) x [0, L_1) and the exact rectangle is returned.
Region a0(const Params& p, int n_max = 10000);

struct StepResult {
    Region region;
    double tail_measure;  // mu of the pieces with digit beyond n_max
};

// One application of the planar map to a region: every rect is split along
// T_alpha-cylinders (digits up to n_max), each piece maps to a rect.
StepResult step_region(const Params& p, const Region& r, int n_max);

struct IterateResult {
    std::vector<Region> images;  // T(r), T^2(r), ..., T^steps(r)
    double tail_measure;         // accumulated truncation loss
};

IterateResult iterate_region(const Params& p, const Region& r, int steps, int n_max);

struct QuiltReport {
    int q = 3;
    double alpha = 0.5;
    bool matched = false;
    bool diagnostic = false;     // ran below alpha0 expecting no match
    // Past omega0 the finite region orbits can interleave without reaching
    // equality within the split budget; the exact endpoint-orbit merge then
    // certifies the match and this flag records that route.
    bool match_via_orbit = false;
    int k_match = -1;            // T^k(A0) ...
    int k_prime_match = -1;      // ... equals T^{k'}(D0)
    double residual_measure = 0; // symmetric difference at the match
    double tail_bound = 0;       // accumulated truncation bounds
    Region omega_alpha;
    Region gap_region;           // diagnostic mode: deleted, never refilled
    bool connected = false;
    int n_components = 0;
    double mu_omega_half = 0;
    double mu_omega_alpha = 0;
    double mu_a0 = 0;
    double mu_d0 = 0;
    double measure_delta = 0;    // mu(omega_alpha) - mu(omega_half)
    std::vector<Region> a_regions;  // A_0, T(A_0), ...
    std::vector<Region> d_regions;  // D_0, T(D_0), ...
};

// Builds Omega_alpha from Omega_{1/2} by adding the iterated images of the
// changed-digit region and deleting the iterated images of D_0, stopping when
// the two orbits of regions coincide (equal step, or staggered by one for odd
// q past omega0).  k_max < 0 picks a parity-dependent default.
QuiltReport quilt(const Params& p, int k_max = -1, int n_max = 10000,
                  double tol = 1e-8);

struct InvarianceReport {
    int samples = 0;
    double max_measure_violation = 0;  // worst |mu(image) - mu(rect)|
    double escape_measure = 0;         // total mu of image parts outside omega
};

// Samples random sub-rectangles of omega, maps them one step and checks
// measure preservation and containment.
InvarianceReport check_invariance(const Params& p, const Region& omega,
                                  int n_samples, std::uint64_t seed);

} // namespace rosen
