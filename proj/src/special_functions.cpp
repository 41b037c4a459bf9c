#include "hermprod/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include "hermprod/error.hpp"

namespace hermprod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// log|Gamma(x)| and its sign; sign 0 at a pole.
int log_abs_gamma(double x, double& lg) {
    if (is_nonpositive_integer(x)) {
        lg = std::numeric_limits<double>::infinity();
        return 0;
    }
    lg = std::lgamma(x);
    if (x > 0.0) return 1;
    return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
}

// B_{2k} / (2k (2k-1)) for k = 1..10
constexpr double kStirling[] = {
    1.0 / 12.0,        -1.0 / 360.0,        1.0 / 1260.0,       -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0,   1.0 / 156.0,        -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0};

}  // namespace

cplx complex_log_gamma(cplx z) {
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
        throw DomainError("log-gamma evaluated at a pole");
    cplx shift = 0.0;
    auto needs_shift = [](cplx w) {
        return w.real() < 15.0 && (std::abs(w) < 30.0 || w.real() < -std::abs(w.imag()));
    };
    while (needs_shift(z)) {
        shift += std::log(z);
        z += 1.0;
    }
    cplx inv = 1.0 / z;
    cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (double c : kStirling) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series - shift;
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x < 170.0) return 1.0 / std::tgamma(x);
    return std::exp(-std::lgamma(x));
}

cplx rgamma(cplx z) {
    if (z.imag() == 0.0) return rgamma(z.real());
    return std::exp(-complex_log_gamma(z));
}

void VerticalContour::validate() const {
    if (!(half_extent > 0.0)) throw ContourError("contour half extent must be positive");
    if (nodes < 16) throw ContourError("contour needs at least 16 nodes");
    if (!std::isfinite(abscissa)) throw ContourError("contour abscissa must be finite");
}

cplx GammaProductIntegrand::log_at(cplx s) const {
    cplx acc = (power_offset + power_scale * s) * log_base;
    for (const auto& f : num) acc += complex_log_gamma(f.offset + f.scale * s);
    for (const auto& f : den) {
        cplx w = f.offset + f.scale * s;
        if (w.imag() == 0.0 && is_nonpositive_integer(w.real()))
            return {-std::numeric_limits<double>::infinity(), 0.0};
        acc -= complex_log_gamma(w);
    }
    return acc;
}

double GammaProductIntegrand::decay_rate() const {
    double k = 0.0;
    for (const auto& f : num) k += std::abs(f.scale);
    for (const auto& f : den) k -= std::abs(f.scale);
    return k;
}

std::pair<double, double> GammaProductIntegrand::strip() const {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& f : num) {
        double edge = -f.offset / f.scale;
        if (f.scale > 0.0)
            lo = std::max(lo, edge);
        else
            hi = std::min(hi, edge);
    }
    return {lo, hi};
}

VerticalContour fit_contour(const LineFunction& f, double abscissa, const LineOptions& opt) {
    const double step = 0.5;
    const double t_cap = 5000.0;
    double peak = 0.0;
    double T = 0.0;
    int quiet = 0;
    for (double t = 0.0; t <= t_cap; t += step) {
        double mag = std::abs(f({abscissa, t}));
        if (!opt.conjugate_symmetric) mag = std::max(mag, std::abs(f({abscissa, -t})));
        if (!std::isfinite(mag)) throw ConvergenceError("non-finite integrand on contour");
        peak = std::max(peak, mag);
        if (t >= 2.0 && mag < opt.cutoff * peak) {
            if (++quiet == 3) {
                T = t;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if (T == 0.0) throw ConvergenceError("integrand tail does not decay along the contour");
    VerticalContour c;
    c.abscissa = abscissa;
    c.half_extent = T;
    c.nodes = std::max(256, static_cast<int>(std::ceil(T / 0.05)) * 2);
    return c;
}

namespace {

// Trapezoid refinement on [0, T] (symmetric) or [-T, T].
ComplexEvalResult trapezoid_line(const LineFunction& f, const VerticalContour& vc,
                                 const LineOptions& opt) {
    const double c = vc.abscissa;
    const double T = vc.half_extent;
    const double lo = opt.conjugate_symmetric ? 0.0 : -T;
    int intervals = std::max(8, opt.conjugate_symmetric ? vc.nodes / 2 : vc.nodes);
    // coarse level with half the intervals
    int coarse = intervals / 2;
    double h = (T - lo) / coarse;
    cplx sum = 0.5 * (f({c, lo}) + f({c, T}));
    double mag = 0.5 * (std::abs(f({c, lo})) + std::abs(f({c, T})));
    for (int k = 1; k < coarse; ++k) {
        cplx v = f({c, lo + k * h});
        sum += v;
        mag += std::abs(v);
    }
    auto scale = [&](cplx s, double step) {
        cplx r = s * step / (2.0 * kPi);
        return opt.conjugate_symmetric ? cplx(2.0 * r.real(), 0.0) : r;
    };
    cplx prev = scale(sum, h);
    int n = coarse;
    while (true) {
        cplx mid = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx v = f({c, lo + (k + 0.5) * h});
            mid += v;
            mag += std::abs(v);
        }
        sum += mid;
        h *= 0.5;
        n *= 2;
        cplx cur = scale(sum, h);
        double diff = std::abs(cur - prev);
        double floor_err = 64.0 * std::numeric_limits<double>::epsilon() * mag * h / kPi;
        double tol = std::max({opt.abs_tol, opt.rel_tol * std::abs(cur), floor_err});
        if (diff <= tol || !opt.refine || 2 * n > opt.max_nodes) {
            if (diff > tol && opt.refine)
                throw ConvergenceError("vertical-line quadrature did not converge");
            double tail = std::abs(f({c, T})) * 2.0 / kPi;
            return {cur, std::max(diff, floor_err) + tail};
        }
        prev = cur;
    }
}

ComplexEvalResult panel_line(const LineFunction& f, const VerticalContour& vc,
                             const LineOptions& opt) {
    using Rule = boost::math::quadrature::gauss<double, 15>;
    const double c = vc.abscissa;
    const double T = vc.half_extent;
    const double lo = opt.conjugate_symmetric ? 0.0 : -T;
    auto eval = [&](int panels) {
        cplx total = 0.0;
        double w = (T - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            double a = lo + p * w;
            double re = Rule::integrate([&](double t) { return f({c, t}).real(); }, a, a + w);
            double im = 0.0;
            if (!opt.conjugate_symmetric)
                im = Rule::integrate([&](double t) { return f({c, t}).imag(); }, a, a + w);
            total += cplx(re, im);
        }
        cplx r = total / (2.0 * kPi);
        return opt.conjugate_symmetric ? cplx(2.0 * r.real(), 0.0) : r;
    };
    int panels = std::max(1, vc.nodes / 15);
    cplx prev = eval(panels);
    while (true) {
        panels *= 2;
        cplx cur = eval(panels);
        double diff = std::abs(cur - prev);
        double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(cur));
        if (diff <= tol || !opt.refine || panels * 15 > opt.max_nodes) {
            if (diff > tol && opt.refine)
                throw ConvergenceError("vertical-line quadrature did not converge");
            return {cur, diff + std::abs(f({c, T})) * 2.0 / kPi};
        }
        prev = cur;
    }
}

}  // namespace

ComplexEvalResult line_integral_complex(const LineFunction& f, const VerticalContour& contour,
                                        const LineOptions& opt) {
    contour.validate();
    if (contour.rule == QuadRule::trapezoid) return trapezoid_line(f, contour, opt);
    return panel_line(f, contour, opt);
}

EvalResult line_integral(const LineFunction& f, const VerticalContour& contour,
                         const LineOptions& opt) {
    auto r = line_integral_complex(f, contour, opt);
    return {r.value.real(), r.error};
}

double saddle_abscissa(const GammaProductIntegrand& g, double right_limit) {
    auto phi = [&](double c) { return g.log_at(cplx(c, 0.0)).real(); };
    double r = right_limit - 0.02;
    double L = 0.5;
    while (L < 1e6 && phi(r - 2.0 * L) < phi(r - L)) L *= 2.0;
    auto res = boost::math::tools::brent_find_minima(phi, r - 2.0 * L, r, 40);
    return res.first;
}

EvalResult mellin_barnes(const GammaProductIntegrand& g, double abscissa,
                         std::optional<VerticalContour> contour, const LineOptions& opt) {
    auto [lo, hi] = g.strip();
    if (!(abscissa > lo && abscissa < hi))
        throw ContourError("abscissa outside the pole-free strip");
    double ref = -std::numeric_limits<double>::infinity();
    for (double t : {0.0, 0.5, 1.0, 2.0}) ref = std::max(ref, g.log_at({abscissa, t}).real());
    if (!std::isfinite(ref)) throw ConvergenceError("integrand vanishes identically near the axis");
    LineFunction f = [&](cplx s) { return std::exp(g.log_at(s) - ref); };
    VerticalContour vc = contour ? *contour : fit_contour(f, abscissa, opt);
    vc.abscissa = abscissa;
    auto r = line_integral(f, vc, opt);
    double scale = std::exp(ref);
    return {r.value * scale, r.error * scale};
}

namespace {

// index of the first term past all zero terms coming from 1/Gamma poles
int series_start(const std::vector<double>& b) {
    int start = 0;
    for (std::size_t j = 1; j < b.size(); ++j) {
        double a = 1.0 + b[0] - b[j];
        if (is_nonpositive_integer(a)) start = std::max(start, static_cast<int>(-a) + 1);
    }
    return start;
}

}  // namespace

EvalResult meijer_g_series(const std::vector<double>& b, double x) {
    if (b.empty()) throw DomainError("Meijer G needs at least one parameter");
    if (!(x > 0.0)) throw DomainError("Meijer G series needs x > 0");
    const double lx = std::log(x);
    const int start = series_start(b);
    double sum = 0.0;
    double biggest = 0.0;
    double last = std::numeric_limits<double>::infinity();
    int k = 0;
    for (; k < 10000; ++k) {
        double lg = k * lx - std::lgamma(k + 1.0);
        int sign = (k % 2 == 0) ? 1 : -1;
        for (std::size_t j = 1; j < b.size(); ++j) {
            double l;
            int s = log_abs_gamma(1.0 + b[0] - b[j] + k, l);
            if (s == 0) {
                sign = 0;
                break;
            }
            sign *= s;
            lg -= l;
        }
        double term = sign == 0 ? 0.0 : sign * std::exp(lg);
        sum += term;
        biggest = std::max(biggest, std::abs(term));
        double mag = std::abs(term);
        if (k > start + 2 && mag <= last && mag < 1e-17 * std::abs(sum)) break;
        if (k > start + 2 && biggest == 0.0) break;
        last = mag;
    }
    if (k == 10000) throw ConvergenceError("Meijer G series did not converge");
    double pw = std::exp(b[0] * lx);
    double err = (4.0 * std::numeric_limits<double>::epsilon() * biggest * std::sqrt(k + 1.0) +
                  1e-17 * std::abs(sum)) * pw;
    return {sum * pw, err};
}

cplx meijer_g_series(const std::vector<double>& b, cplx z) {
    if (b.empty()) throw DomainError("Meijer G needs at least one parameter");
    const int start = series_start(b);
    cplx sum = 0.0;
    cplx zk = 1.0;
    double last = std::numeric_limits<double>::infinity();
    double kfact = 1.0;
    for (int k = 0; k < 10000; ++k) {
        if (k > 0) {
            zk *= -z;
            kfact *= k;
        }
        double coef = 1.0 / kfact;
        if (!std::isfinite(kfact)) coef = std::exp(-std::lgamma(k + 1.0));
        for (std::size_t j = 1; j < b.size(); ++j) coef *= rgamma(1.0 + b[0] - b[j] + k);
        cplx term = zk * coef;
        sum += term;
        double mag = std::abs(term);
        if (k > start + 2 && mag <= last && mag < 1e-17 * std::abs(sum))
            return b[0] == 0.0 ? sum : sum * std::pow(z, b[0]);
        last = mag;
    }
    throw ConvergenceError("complex Meijer G series did not converge");
}

namespace {

GammaProductIntegrand meijer_integrand(int m, const std::vector<double>& b) {
    GammaProductIntegrand g;
    for (int j = 0; j < static_cast<int>(b.size()); ++j) {
        if (j < m)
            g.num.push_back({b[j], -1.0});
        else
            g.den.push_back({1.0 - b[j], 1.0});
    }
    return g;
}

double min_numerator_b(int m, const std::vector<double>& b) {
    return *std::min_element(b.begin(), b.begin() + m);
}

}  // namespace

EvalResult meijer_g_m0(int m, const std::vector<double>& b, double x,
                       std::optional<VerticalContour> contour) {
    const int q = static_cast<int>(b.size());
    if (m < 1 || m > q) throw DomainError("Meijer G requires 1 <= m <= q");
    if (!(x > 0.0)) throw DomainError("Meijer G requires x > 0");
    if (m == 1) return meijer_g_series(b, x);
    if (2 * m - q <= 0) throw DomainError("vertical-line evaluation requires 2m > q");
    GammaProductIntegrand g = meijer_integrand(m, b);
    g.set_base(x);
    const double right = min_numerator_b(m, b);
    double c;
    if (contour) {
        c = contour->abscissa;
        if (!(c < right)) throw ContourError("abscissa must lie left of all Gamma(b_j - s) poles");
    } else {
        c = right - 0.25;
        if (g.den.empty()) c = std::min(c, saddle_abscissa(g, right));
    }
    return mellin_barnes(g, c, contour);
}

ComplexEvalResult meijer_g_qq_complex(const std::vector<double>& b, cplx z) {
    if (b.empty()) throw DomainError("Meijer G needs at least one parameter");
    if (z.real() < 0.0) throw DomainError("complex Meijer G requires Re z >= 0");
    if (b.size() == 1) return {std::pow(z, b[0]) * std::exp(-z), 0.0};
    GammaProductIntegrand g = meijer_integrand(static_cast<int>(b.size()), b);
    g.log_base = std::log(z);
    const double right = *std::min_element(b.begin(), b.end());
    GammaProductIntegrand gr = g;
    gr.set_base(std::abs(z));
    double c = std::min(right - 0.25, saddle_abscissa(gr, right));
    double ref = gr.log_at(c).real();
    LineFunction f = [&](cplx s) { return std::exp(g.log_at(s) - ref); };
    LineOptions opt;
    opt.conjugate_symmetric = false;
    VerticalContour vc = fit_contour(f, c, opt);
    auto r = line_integral_complex(f, vc, opt);
    double scale = std::exp(ref);
    return {r.value * scale, r.error * scale};
}

MeijerLine::MeijerLine(int m, std::vector<double> b, double z_max) {
    const int q = static_cast<int>(b.size());
    if (m < 2 || m > q || 2 * m - q <= 0)
        throw DomainError("cached Meijer line needs m >= 2 and 2m > q");
    const double d = 0.25;
    c_ = min_numerator_b(m, b) - d;
    GammaProductIntegrand g = meijer_integrand(m, b);
    double h = std::min(2.0 * kPi * d / 37.0, 2.0 * kPi / (37.0 + std::max(0.0, std::log(z_max))));
    LineFunction f = [&](cplx s) { return g(s); };
    LineOptions opt;
    opt.cutoff = 1e-18;
    double T = fit_contour(f, c_, opt).half_extent;
    int K = static_cast<int>(std::ceil(T / h));
    for (int k = 0; k <= K; ++k) {
        double t = k * h;
        t_.push_back(t);
        w_.push_back(k == 0 ? 0.5 * h : h);
        gamma_part_.push_back(g(cplx(c_, t)));
    }
}

double MeijerLine::operator()(double z) const {
    if (!(z > 0.0)) throw DomainError("Meijer G requires z > 0");
    const double lz = std::log(z);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < t_.size(); ++k)
        acc += w_[k] * gamma_part_[k] * cplx(std::cos(t_[k] * lz), std::sin(t_[k] * lz));
    return std::exp(c_ * lz) * acc.real() / kPi;
}

EvalResult wright_bessel(double a, double b, double x) {
    if (!(b > 0.0)) throw DomainError("Wright Bessel function requires b > 0");
    if (x == 0.0) return {rgamma(a), 0.0};
    const double lx = std::log(std::abs(x));
    const int sx = x > 0.0 ? -1 : 1;  // sign of -x
    double sum = 0.0;
    double biggest = 0.0;
    double last = std::numeric_limits<double>::infinity();
    int zero_run_end = 0;
    for (int k = 0; k * b + a <= 0.0; ++k) zero_run_end = k + 1;
    for (int k = 0; k < 10000; ++k) {
        double lg;
        int s = log_abs_gamma(a + b * k, lg);
        double term = 0.0;
        if (s != 0) {
            int sign = s * ((k % 2 == 0) ? 1 : sx);
            term = sign * std::exp(k * lx - std::lgamma(k + 1.0) - lg);
        }
        sum += term;
        double mag = std::abs(term);
        biggest = std::max(biggest, mag);
        if (k > zero_run_end && mag <= last && mag < 1e-16 * std::abs(sum)) {
            double err = 4.0 * std::numeric_limits<double>::epsilon() * biggest *
                             std::sqrt(k + 1.0) + mag;
            return {sum, err};
        }
        last = mag;
    }
    throw ConvergenceError("Wright Bessel series did not converge in 10^4 terms");
}

cplx bessel_k(double nu, cplx z) {
    if (!(z.real() > 0.0)) throw DomainError("K_nu integral representation needs Re z > 0");
    auto f = [&](double t) { return std::exp(-z * std::cosh(t)) * std::cosh(nu * t); };
    double h = 0.25;
    auto sum_at = [&](double step, double offset) {
        cplx s = 0.0;
        double peak = 0.0;
        for (int k = 0;; ++k) {
            double t = offset + k * step;
            cplx v = f(t);
            peak = std::max(peak, std::abs(v));
            s += v;
            if (t > 1.0 && std::abs(v) < 1e-18 * peak) break;
            if (t > 800.0) throw ConvergenceError("K_nu integrand does not decay");
        }
        return s;
    };
    cplx total = sum_at(h, 0.0) - 0.5 * f(0.0);
    cplx prev = total * h;
    for (int level = 0; level < 12; ++level) {
        total += sum_at(h, 0.5 * h);
        h *= 0.5;
        cplx cur = total * h;
        if (std::abs(cur - prev) <= 1e-15 * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace hermprod
