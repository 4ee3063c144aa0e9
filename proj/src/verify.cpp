#include "rosen/verify.hpp"

#include "rosen/entropy.hpp"
#include "rosen/map.hpp"
#include "rosen/mobius.hpp"
#include "rosen/natural_extension.hpp"
#include "rosen/params.hpp"
#include "rosen/region.hpp"
#include "rosen/simulate.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace rosen {

namespace {

// 16-node Gauss-Legendre abscissae/weights on [-1, 1].
constexpr int kGL = 16;
const double kGLx[kGL] = {
    -0.98940093499164993, -0.94457502307323258, -0.86563120238783175,
    -0.75540440835500303, -0.61787624440264375, -0.45801677765722739,
    -0.28160355077925891, -0.09501250983763744, 0.09501250983763744,
    0.28160355077925891,  0.45801677765722739,  0.61787624440264375,
    0.75540440835500303,  0.86563120238783175,  0.94457502307323258,
    0.98940093499164993};
const double kGLw[kGL] = {
    0.02715245941175409, 0.06225352393864789, 0.09515851168249278,
    0.12462897125553387, 0.14959598881657673, 0.16915651939500254,
    0.18260341504492359, 0.18945061045506850, 0.18945061045506850,
    0.18260341504492359, 0.16915651939500254, 0.14959598881657673,
    0.12462897125553387, 0.09515851168249278, 0.06225352393864789,
    0.02715245941175409};

double gl_cell(double xa, double xb, double ya, double yb) {
    const double hx = 0.5 * (xb - xa), cx = 0.5 * (xa + xb);
    const double hy = 0.5 * (yb - ya), cy = 0.5 * (ya + yb);
    double sum = 0;
    for (int i = 0; i < kGL; ++i) {
        const double x = cx + hx * kGLx[i];
        double row = 0;
        for (int j = 0; j < kGL; ++j) {
            const double y = cy + hy * kGLx[j];
            const double den = 1.0 + x * y;
            row += kGLw[j] / (den * den);
        }
        sum += kGLw[i] * row;
    }
    return sum * hx * hy;
}

double gl_adaptive(double xa, double xb, double ya, double yb, int depth) {
    const double whole = gl_cell(xa, xb, ya, yb);
    if (depth >= 6)
        return whole;
    const double xm = 0.5 * (xa + xb), ym = 0.5 * (ya + yb);
    const double split = gl_cell(xa, xm, ya, ym) + gl_cell(xm, xb, ya, ym) +
                         gl_cell(xa, xm, ym, yb) + gl_cell(xm, xb, ym, yb);
    if (std::abs(split - whole) < 1e-13)
        return split;
    return gl_adaptive(xa, xm, ya, ym, depth + 1) + gl_adaptive(xm, xb, ya, ym, depth + 1) +
           gl_adaptive(xa, xm, ym, yb, depth + 1) + gl_adaptive(xm, xb, ym, yb, depth + 1);
}

struct Suite {
    std::vector<CheckResult> results;
    std::mt19937_64 rng;

    explicit Suite(std::uint64_t seed) : rng(seed) {}

    double uniform() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

    void check(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void core_arith_checks(Suite& s) {
    // U^q acts as the identity.
    double worst = 0;
    for (int q = 3; q <= 20; ++q) {
        const Mobius uq = u_power(q, q);
        for (int i = 0; i < 100; ++i) {
            const double x = -3.0 + 6.0 * s.uniform();
            worst = std::max(worst, std::abs(uq.apply(x) - x));
        }
    }
    s.check("core.u_power_identity", worst < 1e-9, "max |U^q x - x| = " + num(worst));

    // Recurrence re-evaluated independently at every index.
    worst = 0;
    for (int q = 3; q <= 20; ++q) {
        const double l = lambda_of(q);
        const auto b = b_seq(q, 2 * q);
        for (size_t i = 2; i < b.size(); ++i)
            worst = std::max(worst, std::abs(b[i] - (l * b[i - 1] - b[i - 2])));
    }
    s.check("core.bseq_recurrence", worst < 1e-12, "max residual = " + num(worst));

    // Even-index relations B_{p-1} = (l/2) B_p, B_{p-2} = (l^2/2 - 1) B_p.
    worst = 0;
    for (int q = 4; q <= 20; q += 2) {
        const int p = q / 2;
        const double l = lambda_of(q);
        const auto b = b_seq(q, p + 1);
        worst = std::max(worst, std::abs(b[p - 1] - 0.5 * l * b[p]));
        worst = std::max(worst, std::abs(b[p + 1] - 0.5 * l * b[p]));
        if (p >= 2)
            worst = std::max(worst, std::abs(b[p - 2] - (0.5 * l * l - 1.0) * b[p]));
    }
    s.check("core.b_relations_even", worst < 1e-10, "max residual = " + num(worst));

    // Odd-index relations around B_{h+1} = B_{h+2}.
    worst = 0;
    for (int q = 5; q <= 19; q += 2) {
        const int h = (q - 3) / 2;
        const double l = lambda_of(q);
        const auto b = b_seq(q, h + 2);
        worst = std::max(worst, std::abs(b[h + 1] - b[h + 2]));
        worst = std::max(worst, std::abs(b[h] - (l - 1.0) * b[h + 1]));
        if (h >= 1)
            worst = std::max(worst, std::abs(b[h - 1] - (l * l - l - 1.0) * b[h + 1]));
    }
    s.check("core.b_relations_odd", worst < 1e-10, "max residual = " + num(worst));
}

void map_checks(Suite& s) {
    const std::vector<std::pair<int, double>> cases = {
        {3, 0.45}, {3, 0.5},  {4, 0.42}, {5, 0.495},
        {7, 0.499}, {8, 0.48}, {9, 0.4995}, {10, 0.49}};

    bool range_ok = true;
    bool digit_ok = true;
    for (auto [q, alpha] : cases) {
        const Params p = Params::make(q, alpha);
        for (int i = 0; i < 10000; ++i) {
            const double x = p.i_lo() + s.uniform() * (p.i_hi() - p.i_lo());
            const double tx = t_alpha(p, x);
            if (!(tx >= p.i_lo() - 1e-12 && tx < p.i_hi() + 1e-12))
                range_ok = false;
            const auto dig = digit_of(p, x);
            if (dig) {
                const auto cyl = cylinder_of(p, dig->eps, dig->d);
                if (cyl.empty || x < cyl.lo - 1e-12 || x > cyl.hi + 1e-12)
                    digit_ok = false;
            }
        }
    }
    s.check("map.range_invariant", range_ok, "T_alpha(x) stays in I_alpha");
    s.check("map.digit_cylinder_consistency", digit_ok, "digit_of matches cylinder_of");

    // Full cylinders map onto all of I_alpha.
    double worst = 0;
    for (auto [q, alpha] : cases) {
        const Params p = Params::make(q, alpha);
        for (int r = 2; r <= 40; ++r) {
            for (int eps : {-1, 1}) {
                const auto cyl = cylinder_of(p, eps, r);
                if (cyl.empty || !cyl.closed_hi || cyl.hi >= p.i_hi() - 1e-12)
                    continue;
                if (eps > 0 && !(cyl.lo > 0))
                    continue;
                if (eps < 0 && !cyl.closed_lo)
                    continue;
                // endpoints map to the interval ends
                const double ta = 1.0 / std::abs(cyl.lo) - p.lambda * r;
                const double tb = 1.0 / std::abs(cyl.hi) - p.lambda * r;
                const double im_lo = std::min(ta, tb), im_hi = std::max(ta, tb);
                worst = std::max(worst, std::abs(im_lo - p.i_lo()));
                worst = std::max(worst, std::abs(im_hi - p.i_hi()));
            }
        }
    }
    s.check("map.full_cylinder_surjective", worst < 1e-9,
            "max endpoint deviation = " + num(worst));

    // Even-q synchronization identities, iterated vs closed form.
    double worst_cf = 0, worst_id = 0;
    for (int q : {4, 6, 8, 10}) {
        const double a0v = alpha0(q);
        for (double t : {0.25, 0.5, 0.75}) {
            const double alpha = a0v + 0.004 + t * (0.5 - a0v - 0.008);
            const Params p = Params::make(q, alpha);
            const int pp = q / 2;
            const auto [lo, ro] = endpoint_orbits(p, pp);
            const double l = p.lambda;
            const double lpm1 = l * (1.0 - 2 * alpha) / (alpha * l * l - 2.0);
            const double rpm1 = (2 * alpha - 1.0) * l / ((1.0 - alpha) * l * l - 2.0);
            worst_cf = std::max(worst_cf, std::abs(lo.points[pp - 1] - lpm1));
            worst_cf = std::max(worst_cf, std::abs(ro.points[pp - 1] - rpm1));
            const double id = std::abs(1.0 / lo.points[pp - 1]) -
                              std::abs(1.0 / ro.points[pp - 1]);
            worst_id = std::max(worst_id, std::abs(id - l));
        }
    }
    s.check("map.even_closed_forms", worst_cf < 1e-9,
            "max |orbit - closed form| = " + num(worst_cf));
    s.check("map.even_key_identity", worst_id < 1e-9,
            "max ||1/l|-|1/r|-lambda| = " + num(worst_id));

    // Odd-q identity |1/r_{2h+1}| - |1/l_{2h+1}| = -lambda.
    worst_id = 0;
    for (int q : {5, 7, 9}) {
        const double a0v = alpha0(q);
        const double alpha = a0v + 0.6 * (0.5 - a0v);
        const Params p = Params::make(q, alpha);
        const int k = q - 2;  // 2h+1
        const auto [lo, ro] = endpoint_orbits(p, k);
        const double id = std::abs(1.0 / ro.points[k]) - std::abs(1.0 / lo.points[k]);
        worst_id = std::max(worst_id, std::abs(id + p.lambda));
    }
    s.check("map.odd_key_identity", worst_id < 1e-9,
            "max ||1/r|-|1/l|+lambda| = " + num(worst_id));
}

void region_checks(Suite& s) {
    auto random_rect = [&]() {
        while (true) {
            double xa = -0.9 + 1.8 * s.uniform(), xb = -0.9 + 1.8 * s.uniform();
            double ya = s.uniform(), yb = s.uniform();
            if (xa > xb)
                std::swap(xa, xb);
            if (ya > yb)
                std::swap(ya, yb);
            if (xb - xa < 1e-3 || yb - ya < 1e-3)
                continue;
            const Rect r{xa, xb, ya, yb};
            if (1.0 + r.x_lo * r.y_hi > 0.1 && 1.0 + r.x_lo * r.y_lo > 0.1)
                return r;
        }
    };

    // Closed-form rectangle measure against quadrature.
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const Rect r = random_rect();
        worst = std::max(worst, std::abs(rect_measure(r) -
                                         quadrature_measure(r.x_lo, r.x_hi, r.y_lo, r.y_hi)));
    }
    s.check("region.measure_quadrature", worst < 1e-8,
            "max |closed - quadrature| = " + num(worst));

    // Additivity of the measure under union/intersection.
    worst = 0;
    for (int i = 0; i < 60; ++i) {
        std::vector<Rect> ra, rb;
        for (int k = 0; k < 4; ++k)
            ra.push_back(random_rect());
        for (int k = 0; k < 4; ++k)
            rb.push_back(random_rect());
        const Region A = Region::from_rects(ra), B = Region::from_rects(rb);
        const double lhs = region_union(A, B).measure();
        const double rhs = A.measure() + B.measure() - region_intersect(A, B).measure();
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    s.check("region.measure_additivity", worst < 1e-10, "max residual = " + num(worst));

    // Canonical form is idempotent.
    bool idem = true;
    for (int i = 0; i < 40; ++i) {
        std::vector<Rect> ra;
        for (int k = 0; k < 6; ++k)
            ra.push_back(random_rect());
        const Region A = Region::from_rects(ra);
        const Region B = Region::from_rects(A.rects());
        if (symdiff_measure(A, B) != 0.0)
            idem = false;
    }
    s.check("region.canonical_idempotent", idem, "canonicalize twice is exact");

    // union(subtract(A,B), intersect(A,B)) = A for B inside A's bounding box.
    worst = 0;
    for (int i = 0; i < 60; ++i) {
        std::vector<Rect> ra, rb;
        for (int k = 0; k < 4; ++k)
            ra.push_back(random_rect());
        for (int k = 0; k < 3; ++k)
            rb.push_back(random_rect());
        const Region A = Region::from_rects(ra), B = Region::from_rects(rb);
        const Region back = region_union(region_subtract(A, B), region_intersect(A, B));
        worst = std::max(worst, symdiff_measure(back, A));
    }
    s.check("region.subtract_union_inverse", worst < 1e-10,
            "max symdiff = " + num(worst));
}

void extension_checks(Suite& s, bool fast) {
    // mu(Omega_alpha) = mu(Omega_half) across the plateau.
    double worst = 0;
    bool all_matched = true;
    const std::vector<std::pair<int, double>> plateau = {
        {3, 0.43}, {3, 0.47}, {4, 0.42}, {5, 0.4945}, {8, 0.48}, {8, 0.51}};
    for (auto [q, alpha] : plateau) {
        const auto rep = quilt(Params::make(q, alpha));
        if (!rep.matched || rep.k_match != rep.k_prime_match)
            all_matched = false;
        else
            worst = std::max(worst, std::abs(rep.measure_delta));
    }
    s.check("extension.measure_preserved_quilt", all_matched && worst < 1e-8,
            all_matched ? "max |mu(Omega_a)-mu(Omega_half)| = " + num(worst)
                        : "a plateau quilt failed to match");

    // Iterated images preserve measure.
    worst = 0;
    for (auto [q, alpha] : {std::pair<int, double>{3, 0.45}, {8, 0.48}}) {
        const Params p = Params::make(q, alpha);
        const Region A = a0(p);
        const auto its = iterate_region(p, A, q % 2 == 0 ? q / 2 : 2, 10000);
        const double mu0 = A.measure();
        for (const auto& im : its.images)
            worst = std::max(worst, std::abs(im.measure() + its.tail_measure - mu0));
    }
    s.check("extension.iterates_preserve_measure", worst < 1e-7,
            "max |mu(T^k A0) - mu(A0)| = " + num(worst));

    // Even-q layer shape after p-1 steps: [l_{p-1}, 0) x [H_{p-1}, 1).
    worst = 0;
    for (int q : {4, 6, 8}) {
        const double alpha = alpha0(q) + 0.7 * (0.5 - alpha0(q));
        const Params p = Params::make(q, alpha);
        const auto spec = domain_spec(q);
        const int pp = q / 2;
        const auto its = iterate_region(p, a0(p), pp - 1, 10000);
        const auto [lo, ro] = endpoint_orbits(p, pp - 1);
        const double hp = pp >= 2 ? spec.H[pp - 2] : 1.0 / p.lambda;
        const Region expect =
            Region::from_rects({{lo.points[pp - 1], 0.0, hp, 1.0}});
        if (!its.images.empty())
            worst = std::max(worst, symdiff_measure(its.images.back(), expect));
    }
    s.check("extension.even_layer_heights", worst < 1e-8,
            "max symdiff vs [l_{p-1},0)x[H_{p-1},1) = " + num(worst));

    // Invariance of the alpha = 1/2 domains.
    double escape = 0, violation = 0;
    for (int q : {3, 5, 8}) {
        const auto inv = check_invariance(Params::make(q, 0.5), omega_half(q),
                                          fast ? 40 : 120, s.rng());
        escape = std::max(escape, inv.escape_measure);
        violation = std::max(violation, inv.max_measure_violation);
    }
    s.check("extension.omega_half_invariant", escape < 1e-8 && violation < 1e-10,
            "escape = " + num(escape) + ", measure violation = " + num(violation));
}

void entropy_checks(Suite& s, bool fast) {
    // 1/C equals the domain measure.
    double worst = 0;
    for (int q = 3; q <= 12; ++q)
        worst = std::max(worst,
                         std::abs(1.0 / norm_const(q) - omega_half(q).measure()));
    s.check("entropy.norm_const_measure", worst < 1e-8,
            "max |1/C - mu(Omega_half)| = " + num(worst));

    // Plateau: quilts on an alpha grid match at equal step, so the reported
    // entropy is constant.
    bool plateau_ok = true;
    for (int q : {3, 5, 8}) {
        const double lo = alpha0(q) + 0.01 * (0.5 - alpha0(q)) + 1e-4;
        const double hi = omega0(q) - 1e-3;
        const double ref = entropy_closed_form(q).value;
        for (int i = 0; i < 5; ++i) {
            const double alpha = lo + (hi - lo) * (i + 0.5) / 5.0;
            const auto rep = quilt(Params::make(q, alpha));
            if (!rep.matched || rep.k_match != rep.k_prime_match)
                plateau_ok = false;
            else if (std::abs(entropy_for_alpha(Params::make(q, alpha), rep).value - ref) != 0.0)
                plateau_ok = false;
        }
    }
    s.check("entropy.plateau_constant", plateau_ok,
            "entropy_for_alpha constant on 5-point grids (q = 3, 5, 8)");

    // Past omega0 (odd q) the Abramov-adjusted value sits below the plateau.
    bool drop_ok = true;
    std::string drop_detail;
    for (int q : {3, 5}) {
        const double alpha = omega0(q) + 0.47 * (1.0 / lambda_of(q) - omega0(q));
        const auto rep = quilt(Params::make(q, alpha));
        if (!rep.matched || std::abs(rep.k_match - rep.k_prime_match) != 1) {
            drop_ok = false;
            drop_detail += "q=" + std::to_string(q) + " no staggered match; ";
            continue;
        }
        const auto e = entropy_for_alpha(Params::make(q, alpha), rep);
        if (!(e.value < entropy_closed_form(q).value))
            drop_ok = false;
    }
    s.check("entropy.abramov_direction", drop_ok,
            drop_ok ? "staggered value below plateau (q = 3, 5)" : drop_detail);

    // Birkhoff estimator against the closed form on the plateau.
    const long long n = fast ? 500000 : 2000000;
    double worst_sigma = 0;
    for (int q : {3, 8}) {
        const auto e = entropy_birkhoff(Params::make(q, 0.5), n, 1000, s.rng());
        const double ref = entropy_closed_form(q).value;
        worst_sigma = std::max(worst_sigma,
                               std::abs(e.value - ref) / std::max(e.stderr_est, 1e-12));
    }
    s.check("entropy.birkhoff_consistency", worst_sigma < 3.0,
            "max deviation = " + num(worst_sigma) + " sigma");
}

void simulate_checks(Suite& s) {
    const Params p = Params::make(8, 0.48);
    const auto c1 = simulate(p, 2000, 100, 7);
    const auto c2 = simulate(p, 2000, 100, 7);
    bool same = c1.points.size() == c2.points.size();
    for (size_t i = 0; same && i < c1.points.size(); ++i)
        same = c1.points[i].x == c2.points[i].x && c1.points[i].y == c2.points[i].y;
    s.check("simulate.deterministic", same, "same seed gives identical clouds");

    std::stringstream ss;
    write_cloud_csv(ss, c1);
    const auto back = read_cloud_csv(ss);
    bool rt = back.size() == c1.points.size();
    for (size_t i = 0; rt && i < back.size(); ++i)
        rt = back[i].x == c1.points[i].x && back[i].y == c1.points[i].y;
    s.check("simulate.csv_roundtrip", rt, "17 significant digits round-trip");
}

} // namespace

double quadrature_measure(double x_lo, double x_hi, double y_lo, double y_hi) {
    return gl_adaptive(x_lo, x_hi, y_lo, y_hi, 0);
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    Suite s(opt.seed);
    core_arith_checks(s);
    map_checks(s);
    region_checks(s);
    extension_checks(s, opt.fast);
    entropy_checks(s, opt.fast);
    simulate_checks(s);
    return s.results;
}

} // namespace rosen
