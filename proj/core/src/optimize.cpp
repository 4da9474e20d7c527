#include "dlsa/optimize.hpp"

#include <cmath>

namespace dlsa {

namespace {

void midpoint_check(const std::function<double(double)>& f, double a, double b) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double eps = 1e-9 * (1.0 + std::abs(fa) + std::abs(fb));
    if (fm < 0.5 * (fa + fb) - eps)
        throw NonConcaveError("midpoint concavity test failed on [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]");
}

}  // namespace

MaxResult maximize_concave(const std::function<double(double)>& f,
                           double lo, double hi, double tol) {
    if (hi < lo) throw std::invalid_argument("maximize_concave: empty interval");
    if (hi == lo) return {lo, f(lo)};

    midpoint_check(f, lo, hi);
    midpoint_check(f, lo, 0.5 * (lo + hi));
    midpoint_check(f, 0.5 * (lo + hi), hi);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);

    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }

    // Endpoints can win when the optimum sits on the boundary.
    double x = 0.5 * (a + b);
    double fx = f(x);
    if (f(lo) > fx) { x = lo; fx = f(lo); }
    if (f(hi) > fx) { x = hi; fx = f(hi); }
    return {x, fx};
}

}  // namespace dlsa
