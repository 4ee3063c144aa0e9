#pragma once

#include <vector>

namespace rosen {

// 2x2 fractional-linear transformation x -> (a x + b) / (c x + d).
// The action is projective: infinity is a first-class value, poles map to it.
struct Mobius {
    double a = 1, b = 0, c = 0, d = 1;

    // Extended-real action; x may be +/-infinity, a pole returns infinity.
    double apply(double x) const;

    Mobius operator*(const Mobius& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mobius inverse() const { return {d, -b, -c, a}; }

    static Mobius identity() { return {1, 0, 0, 1}; }
    // S = [1 lambda; 0 1], T = [0 -1; 1 0], U = S*T = [lambda -1; 1 0].
    static Mobius shift(double lambda) { return {1, lambda, 0, 1}; }
    static Mobius inversion() { return {0, -1, 1, 0}; }
    static Mobius standard(double lambda) { return {lambda, -1, 1, 0}; }
};

// B_0..B_n with B_0 = 0, B_1 = 1, B_n = lambda B_{n-1} - B_{n-2}.
std::vector<double> b_seq(int q, int n);

// U^n = [B_{n+1} -B_n; B_n -B_{n-1}]; projectively the identity at n = q.
Mobius u_power(int q, int n);

} // namespace rosen
