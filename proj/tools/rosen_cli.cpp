// Command-line front end: expansions, orbits, domains, quilting, entropy,
// simulation and the invariant suite.

#include "rosen/entropy.hpp"
#include "rosen/map.hpp"
#include "rosen/natural_extension.hpp"
#include "rosen/params.hpp"
#include "rosen/region.hpp"
#include "rosen/simulate.hpp"
#include "rosen/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

using namespace rosen;
using nlohmann::json;

namespace {

struct CommonOpts {
    int q = 3;
    double alpha = 0.5;
    int steps = 32;
    long long samples = 100000;
    long long burn_in = 1000;
    std::uint64_t seed = 20240901;
    double tol = 1e-8;
    int n_max = 10000;
    std::string format = "json";
    std::string out;
};

std::ostream& output(const CommonOpts& o, std::ofstream& file) {
    if (o.out.empty())
        return std::cout;
    file.open(o.out);
    if (!file)
        throw CLI::ValidationError("--out", "cannot open " + o.out);
    return file;
}

json digit_json(const Digit& d) { return json{{"eps", d.eps}, {"d", d.d}}; }

json orbit_json(const Orbit& o) {
    json j;
    j["points"] = o.points;
    j["digits"] = json::array();
    for (const auto& d : o.digits)
        j["digits"].push_back(digit_json(d));
    return j;
}

json sync_json(const SyncReport& r) {
    json j;
    j["matched"] = r.matched;
    j["k"] = r.k;
    j["k_prime"] = r.k_prime;
    j["residual"] = r.residual;
    j["predecessor_digits_offset"] = r.predecessor_digits_offset;
    j["digit_trace_l"] = json::array();
    for (const auto& d : r.digit_trace_l)
        j["digit_trace_l"].push_back(digit_json(d));
    j["digit_trace_r"] = json::array();
    for (const auto& d : r.digit_trace_r)
        j["digit_trace_r"].push_back(digit_json(d));
    return j;
}

json quilt_json(const QuiltReport& r, bool with_regions) {
    json j;
    j["q"] = r.q;
    j["alpha"] = r.alpha;
    j["matched"] = r.matched;
    j["diagnostic"] = r.diagnostic;
    j["match_via_orbit"] = r.match_via_orbit;
    j["k_match"] = r.k_match;
    j["k_prime_match"] = r.k_prime_match;
    j["residual_measure"] = r.residual_measure;
    j["tail_bound"] = r.tail_bound;
    j["connected"] = r.connected;
    j["n_components"] = r.n_components;
    j["mu_omega_half"] = r.mu_omega_half;
    j["mu_omega_alpha"] = r.mu_omega_alpha;
    j["mu_a0"] = r.mu_a0;
    j["mu_d0"] = r.mu_d0;
    j["measure_delta"] = r.measure_delta;
    j["omega_alpha"] = json::parse(region_to_json(r.omega_alpha));
    j["gap_region"] = json::parse(region_to_json(r.gap_region));
    if (with_regions) {
        j["a_regions"] = json::array();
        for (const auto& reg : r.a_regions)
            j["a_regions"].push_back(json::parse(region_to_json(reg)));
        j["d_regions"] = json::array();
        for (const auto& reg : r.d_regions)
            j["d_regions"].push_back(json::parse(region_to_json(reg)));
    }
    return j;
}

const char* method_name(EntropyMethod m) {
    switch (m) {
    case EntropyMethod::closed_form: return "closed-form";
    case EntropyMethod::abramov: return "abramov";
    case EntropyMethod::birkhoff: return "birkhoff";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-Rosen continued fractions: natural extensions, quilting, entropy"};
    app.require_subcommand(1);

    CommonOpts o;
    if (const char* env = std::getenv("ROSEN_TOL"))
        o.tol = std::strtod(env, nullptr);

    auto add_common = [&](CLI::App* cmd, bool needs_alpha = true) {
        cmd->add_option("--q", o.q, "index q >= 3")->check(CLI::Range(3, 200));
        if (needs_alpha)
            cmd->add_option("--alpha", o.alpha, "alpha in [0, 1/lambda]");
        cmd->add_option("--tol", o.tol, "comparison tolerance");
        cmd->add_option("--n-max", o.n_max, "cylinder split cap")->check(CLI::Range(16, 1000000));
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--format", o.format, "csv|json|svg");
    };

    double expand_x = 0.0;
    auto* cmd_expand = app.add_subcommand("expand", "digit expansion of a point");
    add_common(cmd_expand);
    cmd_expand->add_option("--x", expand_x, "point to expand")->required();
    cmd_expand->add_option("--steps", o.steps, "number of digits");

    auto* cmd_orbit = app.add_subcommand("orbit", "endpoint orbits and synchronization");
    add_common(cmd_orbit);
    cmd_orbit->add_option("--steps", o.steps, "orbit length");

    auto* cmd_domain = app.add_subcommand("domain", "emit Omega_1/2 or Omega_alpha as JSON");
    add_common(cmd_domain);

    auto* cmd_quilt = app.add_subcommand("quilt", "full quilting report");
    add_common(cmd_quilt);
    cmd_quilt->add_option("--steps", o.steps, "maximum quilting steps");
    bool with_regions = false;
    cmd_quilt->add_flag("--regions", with_regions, "include every iterated region");

    auto* cmd_entropy = app.add_subcommand("entropy", "closed-form / Abramov / Birkhoff entropy");
    add_common(cmd_entropy);
    std::string method = "auto";
    cmd_entropy->add_option("--method", method, "auto|closed|birkhoff");
    cmd_entropy->add_option("--samples", o.samples, "Birkhoff iterations");
    cmd_entropy->add_option("--burn-in", o.burn_in, "Birkhoff burn-in");
    cmd_entropy->add_option("--seed", o.seed, "random seed");

    auto* cmd_sim = app.add_subcommand("simulate", "natural-extension point cloud");
    add_common(cmd_sim);
    cmd_sim->add_option("--samples", o.samples, "number of points");
    cmd_sim->add_option("--burn-in", o.burn_in, "discarded initial points");
    cmd_sim->add_option("--seed", o.seed, "random seed");

    auto* cmd_verify = app.add_subcommand("verify", "run the full invariant suite");
    bool fast = false;
    cmd_verify->add_flag("--fast", fast, "smaller sample sizes");
    cmd_verify->add_option("--seed", o.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        std::ofstream file;
        if (cmd_expand->parsed()) {
            const Params p = Params::make(o.q, o.alpha);
            const auto digits = expand(p, expand_x, o.steps);
            auto& os = output(o, file);
            if (o.format == "csv") {
                os << "eps,d\n";
                for (const auto& d : digits)
                    os << d.eps << ',' << d.d << '\n';
            } else {
                json j;
                j["q"] = o.q;
                j["alpha"] = o.alpha;
                j["x"] = expand_x;
                j["digits"] = json::array();
                for (const auto& d : digits)
                    j["digits"].push_back(digit_json(d));
                os << j.dump(2) << '\n';
            }
        } else if (cmd_orbit->parsed()) {
            const Params p = Params::make(o.q, o.alpha);
            const auto [lo, ro] = endpoint_orbits(p, o.steps);
            const auto sync = verify_orbit_sync(p, o.steps, o.tol);
            json j;
            j["q"] = o.q;
            j["alpha"] = o.alpha;
            j["l_orbit"] = orbit_json(lo);
            j["r_orbit"] = orbit_json(ro);
            j["sync"] = sync_json(sync);
            output(o, file) << j.dump(2) << '\n';
        } else if (cmd_domain->parsed()) {
            const Params p = Params::make(o.q, o.alpha);
            Region region;
            if (std::abs(o.alpha - 0.5) < 1e-15) {
                region = omega_half(o.q);
            } else {
                const auto rep = quilt(p, -1, o.n_max, o.tol);
                region = rep.omega_alpha;
            }
            output(o, file) << region_to_json(region) << '\n';
        } else if (cmd_quilt->parsed()) {
            const Params p = Params::make(o.q, o.alpha);
            const auto rep = quilt(p, cmd_quilt->count("--steps") ? o.steps : -1,
                                   o.n_max, o.tol);
            output(o, file) << quilt_json(rep, with_regions).dump(2) << '\n';
        } else if (cmd_entropy->parsed()) {
            const Params p = Params::make(o.q, o.alpha);
            EntropyResult res;
            if (method == "birkhoff") {
                res = entropy_birkhoff(p, o.samples, o.burn_in, o.seed);
            } else if (method == "closed") {
                res = entropy_closed_form(o.q);
            } else {
                const auto rep = quilt(p, -1, o.n_max, o.tol);
                res = entropy_for_alpha(p, rep);
            }
            json j;
            j["q"] = o.q;
            j["alpha"] = o.alpha;
            j["method"] = method_name(res.method);
            j["value"] = res.value;
            j["stderr"] = res.stderr_est;
            j["seed"] = o.seed;
            j["plateau"] = res.plateau;
            output(o, file) << j.dump(2) << '\n';
        } else if (cmd_sim->parsed()) {
            const Params p = Params::make(o.q, o.alpha);
            const auto cloud = simulate(p, o.samples, o.burn_in, o.seed);
            auto& os = output(o, file);
            if (o.format == "svg") {
                Region region;
                if (std::abs(o.alpha - 0.5) < 1e-15)
                    region = omega_half(o.q);
                else
                    region = quilt(p, -1, o.n_max, o.tol).omega_alpha;
                write_svg(os, region, cloud.points);
            } else if (o.format == "json") {
                json j;
                j["q"] = o.q;
                j["alpha"] = o.alpha;
                j["seed"] = o.seed;
                j["burn_in"] = cloud.burn_in;
                j["restarts"] = cloud.restarts;
                j["points"] = json::array();
                for (const auto& pt : cloud.points)
                    j["points"].push_back({pt.x, pt.y});
                os << j.dump() << '\n';
            } else {
                write_cloud_csv(os, cloud);
            }
        } else if (cmd_verify->parsed()) {
            VerifyOptions vo;
            vo.fast = fast;
            vo.seed = o.seed;
            const auto results = run_verification(vo);
            bool all = true;
            for (const auto& r : results) {
                std::printf("%s  %-40s %s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(),
                            r.detail.c_str());
                all = all && r.pass;
            }
            std::printf("%zu checks, %s\n", results.size(), all ? "all passed" : "FAILURES");
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
