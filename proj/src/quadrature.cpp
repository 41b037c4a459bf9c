#include "hermprod/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hermprod/error.hpp"

namespace hermprod {

EvalResult integrate(const RealFunction& f, double a, double b, double rel_tol) {
    // mapped to [-1, 1] by hand: the library's error estimate degrades on short intervals
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    auto g = [&](double t) { return hw * f(mid + hw * t); };
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, 15,
                                                                            rel_tol, &err);
    return {v, err};
}

EvalResult integrate_singular(const RealFunction& f, double a, double b, double rel_tol) {
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0;
    double v = ts.integrate(f, a, b, rel_tol, &err);
    return {v, err};
}

namespace {

// Gauss-Kronrod bisection until each piece meets max(rel_tol * |piece|, abs_tol).
EvalResult adaptive_panel(const RealFunction& f, double a, double b, double rel_tol,
                          double abs_tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    auto g = [&](double t) { return hw * f(mid + hw * t); };
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, 0,
                                                                            0.0, &err);
    if (depth == 0 || err <= std::max(rel_tol * std::abs(v), abs_tol)) return {v, err};
    auto l = adaptive_panel(f, a, mid, rel_tol, 0.5 * abs_tol, depth - 1);
    auto r = adaptive_panel(f, mid, b, rel_tol, 0.5 * abs_tol, depth - 1);
    return {l.value + r.value, l.error + r.error};
}

}  // namespace

EvalResult integrate_dyadic(const RealFunction& f, double a, double b, int levels,
                            double rel_tol) {
    const double w = b - a;
    double total = 0.0;
    double err = 0.0;
    double prev = 0.0;
    double last = 0.0;
    int quiet = 0;
    const double negligible = std::max(1e-17, 1e-3 * rel_tol);
    for (int k = 0; k < levels; ++k) {
        double hi = a + std::ldexp(w, -k);
        double lo = a + std::ldexp(w, -k - 1);
        auto r = adaptive_panel(f, lo, hi, rel_tol, rel_tol * std::abs(total), 15);
        total += r.value;
        err += r.error;
        prev = last;
        last = r.value;
        quiet = (std::abs(r.value) < negligible * std::abs(total)) ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }
    // geometric tail: panels shrink by the ratio of the last two
    double tail = 0.0;
    if (prev != 0.0) {
        double ratio = last / prev;
        if (std::abs(ratio) < 1.0) tail = last * ratio / (1.0 - ratio);
    }
    total += tail;
    err += std::abs(tail);
    return {total, err};
}

EvalResult integrate_half_line(const RealFunction& f, double scale, double x_min,
                               double rel_tol) {
    double total = 0.0;
    double err = 0.0;
    // outward first so the running total can set an absolute floor for the small panels
    int quiet = 0;
    double lo = scale;
    bool done = false;
    for (int k = 0; k < 400; ++k, lo *= 2.0) {
        auto r = adaptive_panel(f, lo, 2.0 * lo, rel_tol, rel_tol * std::abs(total), 15);
        total += r.value;
        err += r.error;
        if (std::abs(r.value) <= 1e-18 * std::abs(total) || (total == 0.0 && r.value == 0.0)) {
            if (++quiet == 3) {
                done = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if (!done) throw ConvergenceError("half-line integral did not converge");
    quiet = 0;
    const double negligible = std::max(1e-17, 1e-3 * rel_tol);
    for (double hi = scale; hi > x_min; hi *= 0.5) {
        auto r = adaptive_panel(f, 0.5 * hi, hi, rel_tol, rel_tol * std::abs(total), 15);
        total += r.value;
        err += r.error;
        quiet = (std::abs(r.value) < negligible * std::abs(total)) ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }
    return {total, err};
}

}  // namespace hermprod
