#include "hermprod/hard_edge.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "hermprod/error.hpp"
#include "hermprod/quadrature.hpp"
#include "hermprod/special_functions.hpp"

namespace hermprod {

namespace {

constexpr double kPi = std::numbers::pi;

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

void HardEdgeQuery::validate() const {
    params.validate();
    if (x == 0.0 || y == 0.0) throw DomainError("hard-edge kernel needs x, y != 0");
}

EvalResult meijer_g_kernel(int m_eff, const std::vector<double>& nu, double x, double y) {
    if (m_eff < 1) throw DomainError("Meijer kernel needs M >= 1");
    if (static_cast<int>(nu.size()) != m_eff + 1) throw DomainError("need M + 1 indices");
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("Meijer kernel needs x, y > 0");
    std::vector<double> b1;
    for (double v : nu) b1.push_back(-v);
    std::vector<double> b2(nu.rbegin(), nu.rend() - 1);
    b2.push_back(nu[0]);
    RealFunction g2;
    std::shared_ptr<MeijerLine> line;
    if (m_eff == 1) {
        g2 = [b2](double z) { return meijer_g_series(b2, z).value; };
    } else {
        line = std::make_shared<MeijerLine>(m_eff, b2, y);
        g2 = [line](double z) { return (*line)(z); };
    }
    // u = v^2 absorbs the u^{-1/2} behaviour of the second factor at the origin
    auto f = [&](double v) {
        double u = v * v;
        return 2.0 * v * meijer_g_series(b1, x * u).value * g2(y * u);
    };
    return integrate_dyadic(f, 0.0, 1.0, 80);
}

std::vector<double> hard_meijer_nu(const EnsembleParams& params, bool odd) {
    const double shift = odd ? 0.5 : -0.5;
    std::vector<double> out;
    for (int v : params.nu_full()) {
        out.push_back(0.5 * v);
        out.push_back(0.5 * v + shift);
    }
    return out;
}

namespace {

KernelValue hard_g_product(double x, double y, const EnsembleParams& params) {
    const int q = 2 * params.M + 1;
    const double scale = std::pow(4.0, params.M);
    const double X = x * x / scale;
    const double Y = y * y / scale;
    KernelValue kv{x, y, 0.0, 0.0, 0.0};
    kv.even = std::abs(y) / scale * meijer_g_kernel(q, hard_meijer_nu(params, false), X, Y).value;
    kv.odd = sgn(x * y) * std::abs(x) / scale *
             meijer_g_kernel(q, hard_meijer_nu(params, true), X, Y).value;
    kv.total = kv.even + kv.odd;
    return kv;
}

// One parity of the limiting double contour: s-residues as a series in |x|, t on a line.
double hard_contour_part(const std::vector<int>& nu, double ax, double ay, bool odd) {
    const double e = odd ? 1.0 : 0.0;
    std::vector<double> A;
    double peak = 0.0;
    for (int k = 0; k < 400; ++k) {
        double la = -std::lgamma(k + 1.0) - std::lgamma(k + 0.5 + e);
        for (int v : nu) la -= std::lgamma(v + 2.0 * k + 1.0 + e);
        double xp = (odd || k > 0) ? std::pow(ax, 2 * k + e) : 1.0;
        double a = ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(la) * xp;
        A.push_back(a);
        peak = std::max(peak, std::abs(a));
        if (k > 2 && std::abs(a) < 1e-18 * peak) break;
    }
    auto series = [&](cplx t) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < A.size(); ++k) s += A[k] / (2.0 * k + e - t);
        return s;
    };
    const double ly = std::log(ay);
    LineFunction f = [&](cplx t) {
        cplx lg = (-t - 1.0) * ly + complex_log_gamma((t + 1.0 + e) / 2.0) -
                  complex_log_gamma((e - t) / 2.0);
        for (int v : nu) lg += complex_log_gamma(static_cast<double>(v) + t + 1.0);
        return std::exp(lg) * series(t);
    };
    double c = -0.75;
    double residues = 0.0;
    if (nu.empty()) {
        // no exponential decay along the line: move it left past J poles of Gamma((t+1+e)/2)
        const int J = 10;
        for (int j = 0; j < J; ++j) {
            double t = -1.0 - e - 2.0 * j;
            double r = 2.0 * ((j % 2 == 0) ? 1.0 : -1.0) *
                       std::exp(-std::lgamma(j + 1.0) - std::lgamma(j + 0.5 + e) +
                                (2.0 * j + e) * ly) *
                       series(t).real();
            residues += r;
        }
        c -= 2.0 * J;
    }
    VerticalContour vc = fit_contour(f, c);
    return residues + line_integral(f, vc).value;
}

KernelValue hard_double_contour(double x, double y, const EnsembleParams& params) {
    KernelValue kv{x, y, 0.0, 0.0, 0.0};
    kv.even = hard_contour_part(params.nu, std::abs(x), std::abs(y), false);
    kv.odd = sgn(x * y) * hard_contour_part(params.nu, std::abs(x), std::abs(y), true);
    kv.total = kv.even + kv.odd;
    return kv;
}

// G^{M+1,0}_{0,M+1}(w | 0, nu_1..nu_M) for Re w >= 0
cplx unified_g2(const std::vector<int>& nu, cplx w) {
    if (nu.empty()) return std::exp(-w);
    if (nu.size() == 1) {
        const double v = nu[0];
        return 2.0 * std::pow(w, 0.5 * v) * bessel_k(v, 2.0 * std::sqrt(w));
    }
    std::vector<double> b{0.0};
    for (int v : nu) b.push_back(v);
    return meijer_g_qq_complex(b, w).value;
}

// K(x, y) = 2 kcal(2x, 2y), kcal(X, Y) = (1/2pi) int e^{i th} G1(-sgn(Y) X e^{i th}) G2(|Y| e^{i th})
double unified_total(double x, double y, const EnsembleParams& params) {
    const double X = 2.0 * x;
    const double Y = 2.0 * y;
    std::vector<double> b1{0.0};
    for (int v : params.nu) b1.push_back(-static_cast<double>(v));
    auto f = [&](double th) {
        cplx e = std::polar(1.0, th);
        cplx g1 = meijer_g_series(b1, -sgn(Y) * X * e);
        cplx g2 = unified_g2(params.nu, std::abs(Y) * e);
        return (e * g1 * g2).real();
    };
    return 2.0 * integrate(f, -0.5 * kPi, 0.5 * kPi, 1e-13).value / (2.0 * kPi);
}

KernelValue hard_unified(double x, double y, const EnsembleParams& params) {
    double kp = unified_total(x, y, params);
    double km = unified_total(-x, y, params);
    KernelValue kv{x, y, 0.5 * (kp + km), 0.5 * (kp - km), 0.0};
    kv.total = kv.even + kv.odd;
    return kv;
}

}  // namespace

KernelValue hard_kernel(const HardEdgeQuery& query) {
    query.validate();
    switch (query.representation) {
        case HardRepresentation::g_product:
            return hard_g_product(query.x, query.y, query.params);
        case HardRepresentation::double_contour:
            return hard_double_contour(query.x, query.y, query.params);
        case HardRepresentation::unified:
            return hard_unified(query.x, query.y, query.params);
    }
    throw DomainError("unknown hard-edge representation");
}

KernelValue hard_kernel(double x, double y, const EnsembleParams& params,
                        HardRepresentation representation) {
    return hard_kernel(HardEdgeQuery{x, y, params, representation});
}

EvalResult wright_kernel(double a, double theta, double X, double Y) {
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    if (a <= -1.0) throw DomainError("Wright kernel needs a > -1");
    auto f = [&](double u) {
        double xu = X * u;
        double pw = (a == 0.0) ? 1.0 : std::pow(xu, a);
        return pw * wright_bessel((a + 1.0) / theta, 1.0 / theta, xu).value *
               wright_bessel(a + 1.0, theta, std::pow(Y * u, theta)).value;
    };
    auto r = a < 0.0 ? integrate_dyadic(f, 0.0, 1.0, 80) : integrate(f, 0.0, 1.0, 1e-13);
    return {theta * r.value, theta * r.error};
}

KernelValue mb_hard_kernel(double alpha, int theta, double x, double y) {
    if (theta < 1 || theta % 2 == 0) throw DomainError("theta must be an odd positive integer");
    if (x == 0.0 || y == 0.0) throw DomainError("hard-edge kernel needs x, y != 0");
    const double X = x * x;
    const double Y = y * y;
    KernelValue kv{x, y, 0.0, 0.0, 0.0};
    kv.even = wright_kernel(0.5 * (alpha - 1.0), theta, X, Y).value;
    kv.odd = sgn(x * y) * std::pow(std::abs(x), theta) * std::abs(y) *
             wright_kernel(0.5 * (alpha + theta), theta, X, Y).value;
    kv.total = kv.even + kv.odd;
    return kv;
}

std::vector<double> mb_meijer_nu(double alpha, int theta) {
    std::vector<double> out{0.0};
    for (int m = 1; m <= theta; ++m) out.push_back((alpha + m) / theta - 1.0);
    return out;
}

std::vector<double> mb_meijer_nu_literal(double alpha, int theta) {
    std::vector<double> out{0.0};
    for (int m = 1; m <= theta; ++m) out.push_back((alpha + m - 1.0) / theta);
    return out;
}

IdentitySides mb_integer_theta_identity(double alpha, int M, double x, double y, bool literal_map) {
    const int theta = 2 * M + 1;
    const double scale = std::pow(4.0, M);
    const double X = x * x / scale;
    const double Y = y * y / scale;
    const double r = 1.0 / theta;
    IdentitySides s;
    s.lhs = std::pow(X, r - 1.0) *
            wright_kernel(alpha, theta, theta * std::pow(X, r), theta * std::pow(Y, r)).value;
    auto nu = literal_map ? mb_meijer_nu_literal(alpha, theta) : mb_meijer_nu(alpha, theta);
    s.rhs = meijer_g_kernel(theta, nu, Y, X).value;
    return s;
}

double sine_kernel(double x, double y) {
    const double d = x - y;
    if (d == 0.0) return 2.0 / kPi;
    return std::sin(2.0 * d) / (kPi * d);
}

}  // namespace hermprod
