#pragma once

#include <stdexcept>

namespace rosen {

// Absolute tolerance used when merging nearly identical interval endpoints.
inline constexpr double kEndpointMergeTol = 1e-12;
// Default comparison tolerance for arithmetic identities.
inline constexpr double kDefaultTol = 1e-9;
// Orbits are declared terminated once |x| falls below this.
inline constexpr double kZeroOrbitTol = 1e-14;
// Default tolerance for endpoint-orbit synchronization.
inline constexpr double kSyncTol = 1e-8;

// lambda_q = 2 cos(pi/q); throws std::domain_error for q < 3.
double lambda_of(int q);

// Map parameters (q, alpha) with the derived lambda.
// The map acts on I_alpha = [lambda*(alpha-1), lambda*alpha).
struct Params {
    int q = 3;
    double alpha = 0.5;
    double lambda = 1.0;

    static Params make(int q, double alpha);

    double i_lo() const { return lambda * (alpha - 1.0); }
    double i_hi() const { return lambda * alpha; }
    bool in_domain(double x, double tol = kDefaultTol) const {
        return x >= i_lo() - tol && x <= i_hi() + tol;
    }
};

// Connectivity threshold: below alpha0 the natural-extension domain
// disconnects.  q = 3 uses the odd-index formula.
double alpha0(int q);

// Upper end of the entropy plateau; equals 1/lambda for even q.
double omega0(int q);

} // namespace rosen
