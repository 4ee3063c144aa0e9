#include "rosen/natural_extension.hpp"

#include "rosen/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace rosen {

namespace {

constexpr double kSnapTol = 1e-9;
// Post-canonicalization rect budget for quilting; steps that would overflow
// it are split more coarsely and the loss is tracked as tail measure.
constexpr int kRectBudget = 150000;
constexpr int kMinSplit = 48;

double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }

double delta_b(const Params& p, int r) {
    return 1.0 / (p.lambda * (static_cast<double>(r) + p.alpha));
}

} // namespace

std::optional<PlanarPoint> t2(const Params& p, PlanarPoint pt) {
    const auto dig = digit_of(p, pt.x);
    if (!dig)
        return std::nullopt;
    const double x1 = 1.0 / std::abs(pt.x) - p.lambda * dig->d;
    const double y1 = 1.0 / (dig->d * p.lambda + dig->eps * pt.y);
    return PlanarPoint{x1, y1};
}

DomainSpec domain_spec(int q) {
    const double lambda = lambda_of(q);
    DomainSpec spec;
    spec.q = q;
    spec.odd = (q % 2 == 1);
    const Params half = Params::make(q, 0.5);

    if (q == 3) {
        const double g = golden();
        spec.R = g;
        spec.phi = {-0.5, 0.0};
        spec.L = {(1.0 - g)};  // g^2
        return spec;
    }

    if (!spec.odd) {
        const int p = q / 2;
        spec.phi.resize(p);
        spec.phi[0] = -lambda / 2.0;
        for (int j = 1; j < p; ++j)
            spec.phi[j] = t_alpha(half, spec.phi[j - 1]);
        if (std::abs(spec.phi[p - 1]) > kSnapTol)
            throw std::runtime_error("domain_spec: even orbit of -lambda/2 missed 0");
        spec.phi[p - 1] = 0.0;
        spec.L.resize(p - 1);
        spec.L[0] = 1.0 / (lambda + 1.0);
        for (int j = 1; j < p - 1; ++j)
            spec.L[j] = 1.0 / (lambda - spec.L[j - 1]);
        spec.H.resize(p - 1);
        spec.H[0] = 1.0 / lambda;
        for (int j = 1; j < p - 1; ++j)
            spec.H[j] = 1.0 / (lambda - spec.H[j - 1]);
        spec.R = 1.0;
        return spec;
    }

    // Odd q = 2h+3 >= 5.
    const int h = (q - 3) / 2;
    const int m = 2 * h + 2;
    spec.phi.resize(m);
    spec.phi[0] = -lambda / 2.0;
    for (int j = 1; j < m; ++j)
        spec.phi[j] = t_alpha(half, spec.phi[j - 1]);
    if (std::abs(spec.phi[m - 1]) > kSnapTol)
        throw std::runtime_error("domain_spec: odd orbit of -lambda/2 missed 0");
    spec.phi[m - 1] = 0.0;

    const double tl = 2.0 - lambda;
    spec.R = (-tl + std::sqrt(tl * tl + 4.0)) / 2.0;

    // L_1 is the fixed point of g2 o f^{h-1} o g2 o f^h with f: x -> 1/(l-x)
    // and g2: x -> 1/(2l-x); compose the matrices and solve the quadratic.
    const Mobius F{0, 1, -1, lambda};
    const Mobius G2{0, 1, -1, 2.0 * lambda};
    Mobius M = Mobius::identity();
    for (int i = 0; i < h; ++i)
        M = M * F;
    M = G2 * M;
    Mobius Fh1 = Mobius::identity();
    for (int i = 0; i + 1 < h; ++i)
        Fh1 = Fh1 * F;
    M = G2 * Fh1 * M;
    // Fixed point: c x^2 + (d - a) x - b = 0.
    const double A = M.c, B = M.d - M.a, Cc = -M.b;
    const double disc = B * B - 4.0 * A * Cc;
    if (disc < 0)
        throw std::runtime_error("domain_spec: no real height fixed point");
    const double sq = std::sqrt(disc);
    const double r1 = (-B + sq) / (2.0 * A);
    const double r2 = (-B - sq) / (2.0 * A);
    double L1 = std::numeric_limits<double>::quiet_NaN();
    for (double cand : {r1, r2})
        if (cand > 0.0 && cand < 1.0)
            L1 = cand;
    if (!(L1 > 0.0))
        throw std::runtime_error("domain_spec: height fixed point not in (0,1)");

    spec.L.resize(m);  // L_1..L_{2h+2} at indices 0..m-1
    spec.L[0] = L1;
    for (int j = 2; j < m; j += 2)  // odd chain L_3, L_5, ..
        spec.L[j] = 1.0 / (lambda - spec.L[j - 2]);
    spec.L[1] = 1.0 / (2.0 * lambda - spec.L[m - 2]);  // L_2 from L_{2h+1}
    for (int j = 3; j < m; j += 2)  // even chain L_4, ..
        spec.L[j] = 1.0 / (lambda - spec.L[j - 2]);
    if (std::abs(spec.L[m - 1] - spec.R) > kSnapTol)
        throw std::runtime_error("domain_spec: odd heights do not close on R");
    spec.L.pop_back();  // keep L_1..L_{2h+1}; the last slab carries R
    return spec;
}

Region omega_half(int q) {
    const DomainSpec s = domain_spec(q);
    const double lambda = lambda_of(q);
    std::vector<Rect> rects;
    if (q == 3) {
        const double g = golden();
        rects.push_back({-0.5, 0.0, 0.0, 1.0 - g});
        rects.push_back({0.0, 0.5, 0.0, g});
    } else if (q % 2 == 0) {
        const int p = q / 2;
        for (int j = 1; j < p; ++j)
            rects.push_back({s.phi[j - 1], s.phi[j], 0.0, s.L[j - 1]});
        rects.push_back({0.0, lambda / 2.0, 0.0, 1.0});
    } else {
        const int h = (q - 3) / 2;
        for (int k = 0; k <= h; ++k)  // J_{2k+1} = [phi_k, phi_{h+k+1})
            rects.push_back({s.phi[k], s.phi[h + k + 1], 0.0, s.L[2 * k]});
        for (int k = 1; k <= h; ++k)  // J_{2k} = [phi_{h+k}, phi_k)
            rects.push_back({s.phi[h + k], s.phi[k], 0.0, s.L[2 * k - 1]});
        rects.push_back({0.0, lambda / 2.0, 0.0, s.R});
    }
    return Region::from_rects(rects);
}

ChangedDigitRegion changed_digit_region(const Params& p, int n_max) {
    ChangedDigitRegion out;
    out.tail_bound = 0.0;
    if (std::abs(p.alpha - 0.5) < 1e-15)
        return out;
    const Params half = Params::make(p.q, 0.5);
    const double clip_lo = std::max(p.i_lo(), half.i_lo());
    const double clip_hi = std::min(p.i_hi(), half.i_hi());
    const double ymax = 1.25;
    std::vector<Rect> strips;
    for (int r = 1; r <= n_max; ++r) {
        const double da = delta_b(p, r);
        const double dh = delta_b(half, r);
        const double lo = std::min(da, dh), hi = std::max(da, dh);
        // positive component [lo, hi)
        const double plo = std::max(lo, clip_lo), phi = std::min(hi, clip_hi);
        if (phi - plo > kEndpointMergeTol)
            strips.push_back({plo, phi, 0.0, ymax});
        // mirrored negative component [-hi, -lo)
        const double nlo = std::max(-hi, clip_lo), nhi = std::min(-lo, clip_hi);
        if (nhi - nlo > kEndpointMergeTol)
            strips.push_back({nlo, nhi, 0.0, ymax});
    }
    out.region = region_intersect(Region::from_rects(strips), omega_half(p.q));
    out.tail_bound = 2.1 * std::abs(0.5 - p.alpha) / (p.lambda * static_cast<double>(n_max));
    return out;
}

Region d0(const Params& p) {
    if (std::abs(p.alpha - 0.5) < 1e-15)
        return Region{};
    const double lambda = p.lambda;
    Rect strip;
    if (p.alpha < 0.5)
        strip = {p.i_hi(), lambda / 2.0 + 0.1, 0.0, 1.25};
    else
        strip = {-lambda / 2.0 - 0.1, p.i_lo(), 0.0, 1.25};
    return region_intersect(Region::from_rects({strip}), omega_half(p.q));
}

Region a0(const Params& p, int n_max) {
    if (std::abs(p.alpha - 0.5) < 1e-15)
        return Region{};
    const auto c = changed_digit_region(p, n_max);
    const auto img = step_region(p, c.region, n_max + 2);
    if (p.alpha > 0.5)
        return img.region;
    const double l1 = domain_spec(p.q).L[0];
    const Region closed =
        Region::from_rects({{p.i_lo(), -p.lambda / 2.0, 0.0, l1}});
    const double mismatch = symdiff_measure(img.region, closed);
    if (mismatch > c.tail_bound + img.tail_measure + 1e-7)
        throw std::runtime_error("a0: mapped changed-digit region disagrees with the "
                                 "closed rectangle by " + std::to_string(mismatch));
    return closed;
}

StepResult step_region(const Params& p, const Region& r, int n_max) {
    StepResult out;
    out.tail_measure = 0.0;
    std::vector<Rect> mapped;
    const double lambda = p.lambda;
    const double alpha = p.alpha;

    auto map_neg_piece = [&](double lo, double hi, int m, double y0, double y1) {
        // eps = -1, T increasing on the piece: x' = -1/x - m*lambda.
        const double xa = -1.0 / lo - m * lambda;
        const double xb = -1.0 / hi - m * lambda;
        const double ya = 1.0 / (m * lambda - y0);
        const double yb = 1.0 / (m * lambda - y1);
        mapped.push_back({xa, xb, ya, yb});
    };
    auto map_pos_piece = [&](double lo, double hi, int m, double y0, double y1) {
        // eps = +1, T decreasing: image of [lo, hi) is [T(hi), T(lo)).
        const double xa = 1.0 / hi - m * lambda;
        const double xb = 1.0 / lo - m * lambda;
        const double ya = 1.0 / (m * lambda + y1);
        const double yb = 1.0 / (m * lambda + y0);
        mapped.push_back({xa, xb, ya, yb});
    };

    for (const auto& slab : r.slabs()) {
        for (const auto& yiv : slab.ys) {
            const double y0 = yiv.lo, y1 = yiv.hi;
            // Negative part [a, b), b <= 0.
            const double na = slab.x.lo, nb = std::min(slab.x.hi, 0.0);
            if (nb - na > kEndpointMergeTol) {
                const int m0 = std::max(
                    1, static_cast<int>(std::floor(1.0 / (lambda * -na) + 1.0 - alpha)));
                int m = m0;
                while (true) {
                    if (m > n_max) {
                        const double tlo = std::max(na, -delta_b(p, m - 1));
                        if (nb - tlo > kEndpointMergeTol)
                            out.tail_measure += rect_measure({tlo, nb, y0, y1});
                        break;
                    }
                    const double lo = std::max(na, -delta_b(p, m - 1));
                    const double hi = std::min(nb, -delta_b(p, m));
                    if (hi - lo > kEndpointMergeTol)
                        map_neg_piece(lo, hi, m, y0, y1);
                    if (-delta_b(p, m) >= nb)
                        break;
                    ++m;
                }
            }
            // Positive part [a, b), a >= 0.
            const double pa = std::max(slab.x.lo, 0.0), pb = slab.x.hi;
            if (pb - pa > kEndpointMergeTol) {
                const int m0 = std::max(
                    1, static_cast<int>(std::floor(1.0 / (lambda * pb) + 1.0 - alpha)));
                int m = m0;
                while (true) {
                    if (m > n_max) {
                        const double thi = std::min(pb, delta_b(p, m - 1));
                        if (thi - pa > kEndpointMergeTol)
                            out.tail_measure += rect_measure({pa, thi, y0, y1});
                        break;
                    }
                    const double lo = std::max(pa, delta_b(p, m));
                    const double hi = std::min(pb, delta_b(p, m - 1));
                    if (hi - lo > kEndpointMergeTol)
                        map_pos_piece(lo, hi, m, y0, y1);
                    if (delta_b(p, m) <= pa)
                        break;
                    ++m;
                }
            }
        }
    }
    out.region = Region::from_rects(mapped);
    return out;
}

IterateResult iterate_region(const Params& p, const Region& r, int steps, int n_max) {
    IterateResult out;
    out.tail_measure = 0.0;
    Region cur = r;
    for (int i = 0; i < steps; ++i) {
        auto st = step_region(p, cur, n_max);
        out.tail_measure += st.tail_measure;
        cur = st.region;
        out.images.push_back(cur);
    }
    return out;
}

namespace {

// Drops the smallest-measure rects until the region fits the budget;
// the lost mass is added to *lost.
Region coarsen_to_budget(const Region& r, std::size_t max_rects, double* lost) {
    if (r.rect_count() <= max_rects)
        return r;
    auto rects = r.rects();
    std::vector<std::pair<double, std::size_t>> by_mu(rects.size());
    for (std::size_t i = 0; i < rects.size(); ++i)
        by_mu[i] = {rect_measure(rects[i]), i};
    std::sort(by_mu.begin(), by_mu.end());
    std::vector<Rect> keep;
    keep.reserve(max_rects);
    const std::size_t n_drop = rects.size() - max_rects;
    for (std::size_t i = 0; i < by_mu.size(); ++i) {
        if (i < n_drop)
            *lost += by_mu[i].first;
        else
            keep.push_back(rects[by_mu[i].second]);
    }
    return Region::from_rects(keep);
}

// Number of pieces a step with split cap n_eff would emit.
std::size_t span_estimate(const Params& p, const Region& r, int n_eff) {
    std::size_t total = 0;
    for (const auto& slab : r.slabs()) {
        std::size_t span = 0;
        const double na = slab.x.lo, nb = std::min(slab.x.hi, 0.0);
        if (nb - na > kEndpointMergeTol) {
            const int d_lo = digit_value_unchecked(p, na);
            const int d_hi = (nb > -kZeroOrbitTol) ? n_eff
                                                   : std::min(n_eff, digit_value_unchecked(p, nb));
            span += static_cast<std::size_t>(std::max(0, d_hi - d_lo + 1));
        }
        const double pa = std::max(slab.x.lo, 0.0), pb = slab.x.hi;
        if (pb - pa > kEndpointMergeTol) {
            const int d_lo = digit_value_unchecked(p, pb);
            const int d_hi = (pa < kZeroOrbitTol) ? n_eff
                                                  : std::min(n_eff, digit_value_unchecked(p, pa));
            span += static_cast<std::size_t>(std::max(0, d_hi - d_lo + 1));
        }
        total += span * slab.ys.size();
    }
    return total;
}

// Step with a split cap chosen so the output stays within the rect budget.
StepResult budgeted_step(const Params& p, const Region& r, int n_max, double* tail_acc) {
    Region src = coarsen_to_budget(r, kRectBudget / 4, tail_acc);
    std::vector<int> cands = {n_max, n_max / 4, 4096, 1024, 256, kMinSplit};
    std::sort(cands.begin(), cands.end(), std::greater<int>());
    int n_eff = kMinSplit;
    for (int cand : cands) {
        if (cand < kMinSplit || cand > n_max)
            continue;
        if (span_estimate(p, src, cand) <= static_cast<std::size_t>(kRectBudget)) {
            n_eff = cand;
            break;
        }
    }
    auto st = step_region(p, src, n_eff);
    *tail_acc += st.tail_measure;
    st.region = coarsen_to_budget(st.region, kRectBudget, tail_acc);
    return st;
}

} // namespace

QuiltReport quilt(const Params& p, int k_max, int n_max, double tol) {
    QuiltReport rep;
    rep.q = p.q;
    rep.alpha = p.alpha;
    const Region omega = omega_half(p.q);
    rep.mu_omega_half = omega.measure();

    if (std::abs(p.alpha - 0.5) < 1e-15) {
        rep.matched = true;
        rep.k_match = rep.k_prime_match = 0;
        rep.omega_alpha = omega;
        rep.mu_omega_alpha = rep.mu_omega_half;
        rep.n_components = connected_components(omega, kDefaultTol);
        rep.connected = rep.n_components == 1;
        return rep;
    }

    if (k_max < 0)
        k_max = (p.q % 2 == 0) ? p.q / 2 + 2 : p.q + 1;

    const auto c = changed_digit_region(p, n_max);
    double tail_acc = c.tail_bound;
    Region A0 = a0(p, n_max);
    Region D0 = d0(p);
    rep.mu_a0 = A0.measure();
    rep.mu_d0 = D0.measure();

    rep.a_regions.push_back(A0);
    rep.d_regions.push_back(D0);

    double best_res = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= k_max && !rep.matched; ++i) {
        rep.a_regions.push_back(budgeted_step(p, rep.a_regions.back(), n_max, &tail_acc).region);
        rep.d_regions.push_back(budgeted_step(p, rep.d_regions.back(), n_max, &tail_acc).region);
        // Truncation noise sets the attainable residual; never accept a
        // "match" whose residual is a sizable fraction of the region mass.
        const double match_tol =
            std::min(std::max(tol, 3.0 * tail_acc), 0.2 * rep.mu_a0);
        // Prefer the equal-step match, then the staggered offsets.
        const std::pair<int, int> pairs[3] = {{i, i}, {i - 1, i}, {i, i - 1}};
        for (auto [ka, kd] : pairs) {
            if (ka < 1 || kd < 1)
                continue;
            const double res = symdiff_measure(rep.a_regions[ka], rep.d_regions[kd]);
            best_res = std::min(best_res, res);
            if (res < match_tol) {
                rep.matched = true;
                rep.k_match = ka;
                rep.k_prime_match = kd;
                rep.residual_measure = res;
                break;
            }
        }
    }
    rep.tail_bound = tail_acc;

    if (!rep.matched && p.q % 2 == 1 && p.alpha > omega0(p.q) + 1e-12) {
        // Past omega0 the orbits of the interval endpoints merge exactly with
        // a one-step stagger while the finite region images interleave; take
        // the orbit merge as the match certificate.  For alpha > 1/2 the
        // added regions track the r-orbit, so k runs one step past k'.
        const auto sync = verify_orbit_sync(p, 2 * k_max + 4);
        if (sync.matched && std::abs(sync.k - sync.k_prime) == 1) {
            rep.matched = true;
            rep.match_via_orbit = true;
            rep.k_match = std::max(sync.k, sync.k_prime);
            rep.k_prime_match = std::min(sync.k, sync.k_prime);
            rep.residual_measure = best_res;
            while (static_cast<int>(rep.a_regions.size()) <= rep.k_match)
                rep.a_regions.push_back(
                    budgeted_step(p, rep.a_regions.back(), n_max, &tail_acc).region);
            rep.tail_bound = tail_acc;
        }
    }

    const int steps_a = static_cast<int>(rep.a_regions.size()) - 1;
    Region a_union = rep.a_regions[0];
    for (int i = 1; i <= steps_a; ++i)
        a_union = region_union(a_union, rep.a_regions[i]);

    if (rep.matched) {
        const int kd_last =
            std::min<int>(rep.k_prime_match, static_cast<int>(rep.d_regions.size()) - 1);
        Region del = rep.d_regions[0];
        for (int i = 1; i <= kd_last; ++i)
            del = region_union(del, rep.d_regions[i]);
        Region au = rep.a_regions[0];
        for (int i = 1; i <= rep.k_match; ++i)
            au = region_union(au, rep.a_regions[i]);
        rep.omega_alpha =
            region_subtract(region_union(omega, au), region_subtract(del, au));
        if (rep.k_match != rep.k_prime_match) {
            // Staggered quilting: the common tail of images keeps adding new
            // area; follow it until the additions die out.
            Region s = rep.a_regions[rep.k_match];
            int small = 0;
            for (int t = 0; t < 80 && small < 3; ++t) {
                s = budgeted_step(p, s, 512, &tail_acc).region;
                const double add = region_subtract(s, rep.omega_alpha).measure();
                if (add > kEndpointMergeTol)
                    rep.omega_alpha = region_union(rep.omega_alpha, s);
                small = add < std::max(tol, 1e-3 * rep.mu_a0) ? small + 1 : 0;
            }
            rep.tail_bound = tail_acc;
        }
    } else {
        // Diagnostic assembly: carve the deletions up to the step where the
        // obstruction appears, keep every computed addition.
        rep.diagnostic = true;
        rep.residual_measure = best_res;
        const int horizon = (p.q % 2 == 0) ? p.q / 2 - 1 : p.q - 2;
        const int kd = std::min<int>(horizon, static_cast<int>(rep.d_regions.size()) - 1);
        Region del = rep.d_regions[0];
        for (int i = 1; i <= kd; ++i)
            del = region_union(del, rep.d_regions[i]);
        rep.omega_alpha =
            region_subtract(region_union(omega, a_union), region_subtract(del, a_union));
        rep.gap_region = region_intersect(region_subtract(del, a_union), omega);
    }

    rep.mu_omega_alpha = rep.omega_alpha.measure();
    rep.measure_delta = rep.mu_omega_alpha - rep.mu_omega_half;
    rep.n_components = connected_components(rep.omega_alpha, kDefaultTol);
    rep.connected = rep.n_components == 1;
    return rep;
}

InvarianceReport check_invariance(const Params& p, const Region& omega,
                                  int n_samples, std::uint64_t seed) {
    InvarianceReport rep;
    rep.samples = n_samples;
    if (omega.empty())
        return rep;
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    const auto& slabs = omega.slabs();
    for (int s = 0; s < n_samples; ++s) {
        const auto& slab = slabs[static_cast<size_t>(uniform() * slabs.size()) % slabs.size()];
        const auto& yiv = slab.ys[static_cast<size_t>(uniform() * slab.ys.size()) % slab.ys.size()];
        double xa = slab.x.lo + uniform() * slab.x.length();
        double xb = slab.x.lo + uniform() * slab.x.length();
        if (xa > xb)
            std::swap(xa, xb);
        double ya = yiv.lo + uniform() * yiv.length();
        double yb = yiv.lo + uniform() * yiv.length();
        if (ya > yb)
            std::swap(ya, yb);
        if (xb - xa < 1e-9 || yb - ya < 1e-9) {
            --s;
            continue;
        }
        const Rect rect{xa, xb, ya, yb};
        const Region piece = Region::from_rects({rect});
        const auto st = step_region(p, piece, 20000);
        const double mu_in = rect_measure(rect);
        const double mu_out = st.region.measure() + st.tail_measure;
        rep.max_measure_violation =
            std::max(rep.max_measure_violation, std::abs(mu_out - mu_in));
        rep.escape_measure += region_subtract(st.region, omega).measure();
    }
    return rep;
}

} // namespace rosen
