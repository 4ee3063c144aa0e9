#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rosen {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    bool fast = false;            // smaller Birkhoff runs and sample counts
    std::uint64_t seed = 20240901;
};

// Runs every module invariant; all results come back, passed or not.
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

// Independent 2-D quadrature of dx dy/(1+xy)^2 over a rectangle
// (tensor Gauss-Legendre with adaptive refinement); the oracle for
// the closed-form rectangle measure.
double quadrature_measure(double x_lo, double x_hi, double y_lo, double y_hi);

} // namespace rosen
