#pragma once

#include <functional>

#include "hermprod/types.hpp"

namespace hermprod {

using RealFunction = std::function<double(double)>;

// Adaptive Gauss-Kronrod on a finite interval.
EvalResult integrate(const RealFunction& f, double a, double b, double rel_tol = 1e-12);

// tanh-sinh, tolerant of integrable endpoint singularities.
EvalResult integrate_singular(const RealFunction& f, double a, double b, double rel_tol = 1e-12);

// Panels [a + w 2^{-k-1}, a + w 2^{-k}], k = 0..levels-1, w = b - a.  The remaining piece
// [a, a + w 2^{-levels}] is extrapolated from the geometric decay of the last panels.
EvalResult integrate_dyadic(const RealFunction& f, double a, double b, int levels = 60,
                            double rel_tol = 1e-12);

// Integral over (0, inf): dyadic panels inward from `scale` down to x_min, outward until
// the panels are negligible.
EvalResult integrate_half_line(const RealFunction& f, double scale = 1.0, double x_min = 1e-14,
                               double rel_tol = 1e-12);

}  // namespace hermprod
