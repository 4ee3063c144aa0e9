#pragma once

#include "rosen/natural_extension.hpp"
#include "rosen/params.hpp"

#include <cstdint>

namespace rosen {

enum class EntropyMethod { closed_form, abramov, birkhoff };

struct EntropyResult {
    double value = 0;           // nats
    EntropyMethod method = EntropyMethod::closed_form;
    double normalizer = 0;      // the constant C used (0 for birkhoff)
    bool plateau = true;
    double stderr_est = 0;      // birkhoff only
    int restarts = 0;           // birkhoff only
};

// Normalizing constant C with C * d mu a probability measure on the
// alpha = 1/2 domain.  Even q: 1/ln[(1+cos(pi/q))/sin(pi/q)]; q = 3:
// 1/ln(1+g).  For odd q >= 5 the constant is the exact mu-measure of the
// domain (a finite sum of logs from the slab decomposition); the ln(1+R)
// expression matches it only at q = 3.
double norm_const(int q);

// Entropy of the alpha = 1/2 map: C * (q-2) * pi^2 / (2q).
EntropyResult entropy_closed_form(int q);

// Entropy for (q, alpha) given a successful quilt: the plateau value when
// the region orbits match at equal step; the Abramov-adjusted estimate
// closed_form * (1 - mu(A0)/mu(Omega_alpha)) for the staggered match.
EntropyResult entropy_for_alpha(const Params& p, const QuiltReport& quilt);

// Birkhoff average of 2 ln(1/|x|) along a random orbit.
EntropyResult entropy_birkhoff(const Params& p, long long n, long long burn_in,
                               std::uint64_t seed);

} // namespace rosen
