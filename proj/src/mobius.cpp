#include "rosen/mobius.hpp"

#include "rosen/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rosen {

double Mobius::apply(double x) const {
    const double inf = std::numeric_limits<double>::infinity();
    if (std::isinf(x))
        return c != 0.0 ? a / c : inf;
    const double den = c * x + d;
    if (den == 0.0)
        return inf;
    return (a * x + b) / den;
}

std::vector<double> b_seq(int q, int n) {
    if (n < 1)
        throw std::domain_error("b_seq: n must be >= 1");
    const double lambda = lambda_of(q);
    std::vector<double> b(static_cast<size_t>(n) + 1);
    b[0] = 0.0;
    b[1] = 1.0;
    for (int i = 2; i <= n; ++i)
        b[i] = lambda * b[i - 1] - b[i - 2];
    return b;
}

Mobius u_power(int q, int n) {
    if (n < 0)
        throw std::domain_error("u_power: n must be >= 0");
    if (n == 0)
        return Mobius::identity();
    const auto b = b_seq(q, n + 1);
    // B_{n-1} with n >= 1.
    const double bm1 = b[n - 1];
    return {b[n + 1], -b[n], b[n], -bm1};
}

} // namespace rosen
