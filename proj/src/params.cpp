#include "rosen/params.hpp"

#include <cmath>
#include <string>

namespace rosen {

double lambda_of(int q) {
    if (q < 3)
        throw std::domain_error("lambda_of: q must be >= 3, got " + std::to_string(q));
    // Exact algebraic values where they exist; 2 cos(pi/q) is a full ulp off
    // at q = 3 and that breaks exact boundary identities like T_{1/2}(1/2) = 0.
    switch (q) {
    case 3: return 1.0;
    case 4: return std::sqrt(2.0);
    case 6: return std::sqrt(3.0);
    default: return 2.0 * std::cos(M_PI / static_cast<double>(q));
    }
}

Params Params::make(int q, double alpha) {
    const double lambda = lambda_of(q);
    if (alpha < -kDefaultTol || alpha > 1.0 / lambda + kDefaultTol)
        throw std::domain_error("Params: alpha must lie in [0, 1/lambda], got " +
                                std::to_string(alpha));
    return Params{q, alpha, lambda};
}

double alpha0(int q) {
    const double l = lambda_of(q);
    const double l2 = l * l;
    if (q % 2 == 0) {
        const double s = std::sqrt((4.0 - l2) * (4.0 - l2) + 4.0 * l2);
        return (l2 - 4.0 + s) / (2.0 * l2);
    }
    const double s = std::sqrt(2.0 * l2 - 4.0 * l + 4.0);
    return (l - 2.0 + s) / l2;
}

double omega0(int q) {
    const double l = lambda_of(q);
    if (q % 2 == 0)
        return 1.0 / l;
    const double s = std::sqrt(l * l - 4.0 * l + 8.0);
    return (l - 2.0 + s) / (2.0 * l);
}

} // namespace rosen
