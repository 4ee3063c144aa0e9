#include "rosen/entropy.hpp"

#include "rosen/map.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace rosen {

double norm_const(int q) {
    if (q < 3)
        throw std::domain_error("norm_const: q must be >= 3");
    if (q % 2 == 0) {
        const double c = std::cos(M_PI / q), s = std::sin(M_PI / q);
        return 1.0 / std::log((1.0 + c) / s);
    }
    if (q == 3) {
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        return 1.0 / std::log1p(g);
    }
    return 1.0 / omega_half(q).measure();
}

EntropyResult entropy_closed_form(int q) {
    EntropyResult r;
    r.method = EntropyMethod::closed_form;
    r.normalizer = norm_const(q);
    r.plateau = true;
    r.value = r.normalizer * (q - 2) * M_PI * M_PI / (2.0 * q);
    return r;
}

EntropyResult entropy_for_alpha(const Params& p, const QuiltReport& quilt) {
    if (!quilt.matched)
        throw std::runtime_error("entropy_for_alpha: quilt did not match");
    EntropyResult base = entropy_closed_form(p.q);
    if (quilt.k_match == quilt.k_prime_match)
        return base;
    if (std::abs(quilt.k_match - quilt.k_prime_match) != 1)
        throw std::runtime_error("entropy_for_alpha: unexpected match offset");
    // Staggered quilting: one more added copy than deleted ones survives, so
    // inducing past a copy of A0 recovers the alpha = 1/2 system and the
    // Abramov formula scales the entropy by its relative mass.
    EntropyResult r = base;
    r.method = EntropyMethod::abramov;
    r.plateau = false;
    if (quilt.mu_omega_alpha <= 0)
        throw std::runtime_error("entropy_for_alpha: empty quilted domain");
    r.value = base.value * (1.0 - quilt.mu_a0 / quilt.mu_omega_alpha);
    return r;
}

EntropyResult entropy_birkhoff(const Params& p, long long n, long long burn_in,
                               std::uint64_t seed) {
    if (n < 1)
        throw std::domain_error("entropy_birkhoff: n must be positive");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double lo = p.i_lo(), hi = p.i_hi();
    auto random_start = [&]() { return lo + (0.001 + 0.998 * uniform()) * (hi - lo); };

    EntropyResult r;
    r.method = EntropyMethod::birkhoff;
    r.plateau = false;

    double x = random_start();
    for (long long i = 0; i < burn_in; ++i) {
        if (std::abs(x) <= kZeroOrbitTol) {
            x = random_start();
            ++r.restarts;
        }
        x = map_with_digit(p, x, digit_value_unchecked(p, x));
    }

    // Batch means give a standard error that respects orbit correlations.
    const int n_batches = 256;
    const long long batch = std::max<long long>(1, n / n_batches);
    std::vector<double> means;
    means.reserve(n_batches + 1);
    double total = 0;
    long long count = 0;
    double bsum = 0;
    long long bcount = 0;
    while (count < n) {
        if (std::abs(x) <= kZeroOrbitTol) {
            x = random_start();
            ++r.restarts;
        }
        bsum += -2.0 * std::log(std::abs(x));
        ++bcount;
        ++count;
        x = map_with_digit(p, x, digit_value_unchecked(p, x));
        if (bcount == batch) {
            means.push_back(bsum / bcount);
            total += bsum;
            bsum = 0;
            bcount = 0;
        }
    }
    if (bcount > 0) {
        means.push_back(bsum / bcount);
        total += bsum;
    }
    r.value = total / count;
    double var = 0;
    for (double m : means)
        var += (m - r.value) * (m - r.value);
    if (means.size() > 1)
        var /= (means.size() - 1.0) * means.size();
    r.stderr_est = std::sqrt(var);
    return r;
}

} // namespace rosen
