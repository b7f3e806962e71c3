#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

namespace surfcap {

struct BracketResult {
    double root = 0.0;
    double f_root = 0.0;
    double lo = 0.0; // final bracket
    double hi = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/**
 * Brent-Dekker zero finder on a sign-changing bracket [a, b].
 *
 * Combines bisection with secant and inverse quadratic interpolation, so
 * every step keeps the root bracketed. Stops when f vanishes or the bracket
 * shrinks below 2*eps*|b| + xtol/2. Caller guarantees f(a)*f(b) <= 0.
 */
template <class F>
BracketResult brent_zero(F&& f, double a, double b, double fa, double fb, double xtol,
                         std::size_t max_iter) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    BracketResult out;
    if (fa == 0.0) {
        out = {a, fa, a, a, 0, true};
        return out;
    }
    if (fb == 0.0) {
        out = {b, fb, b, b, 0, true};
        return out;
    }

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            out.root = b;
            out.f_root = fb;
            out.lo = std::min(b, c);
            out.hi = std::max(b, c);
            out.iterations = iter;
            out.converged = true;
            return out;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    out.root = b;
    out.f_root = fb;
    out.lo = std::min(b, c);
    out.hi = std::max(b, c);
    out.iterations = max_iter;
    out.converged = false;
    return out;
}

} // namespace surfcap
