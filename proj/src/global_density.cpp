#include "hermprod/global_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "hermprod/error.hpp"
#include "hermprod/quadrature.hpp"

namespace hermprod {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

double phi_max(int M) { return kPi / (2.0 * M + 2.0); }

}  // namespace

double support_edge(int M) {
    const double a = 2.0 * M + 2.0;
    const double b = 2.0 * M + 1.0;
    return std::exp(0.5 * (a * std::log(a) - b * std::log(b)));
}

double parametric_x0(int M, double phi) {
    const double a = 2.0 * M + 2.0;
    const double b = 2.0 * M + 1.0;
    double l = a * std::log(std::sin(a * phi)) - std::log(std::sin(phi)) -
               b * std::log(std::sin(b * phi));
    return std::exp(0.5 * l);
}

double parametric_density_phi(int M, double phi) {
    const double s1 = std::sin(phi);
    const double sb = std::sin((2.0 * M + 1.0) * phi);
    const double sa = std::sin((2.0 * M + 2.0) * phi);
    return std::sqrt(s1 / sb) * std::pow(sb / sa, M) * s1 / kPi;
}

double parametric_dx0(int M, double phi) {
    const double a = 2.0 * M + 2.0;
    const double b = 2.0 * M + 1.0;
    auto cot = [](double v) { return std::cos(v) / std::sin(v); };
    double dlog = 0.5 * (a * a * cot(a * phi) - cot(phi) - b * b * cot(b * phi));
    return parametric_x0(M, phi) * dlog;
}

namespace {

// phi in (0, pi/(2M+2)) with x0(phi) = ax
double solve_phi(int M, double ax) {
    const double la = std::log(ax);
    auto f = [&](double phi) { return std::log(parametric_x0(M, phi)) - la; };
    double lo = 1e-12;
    double hi = phi_max(M) * (1.0 - 1e-15);
    double flo = f(lo);
    double fhi = f(hi);
    if (!(flo > 0.0) || !(fhi < 0.0)) throw ConvergenceError("parametrisation root not bracketed");
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                               boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace

double global_density_parametric(int M, double x0) {
    if (M < 0) throw DomainError("M must be non-negative");
    if (x0 == 0.0) throw DomainError("parametric density needs x0 != 0");
    const double ax = std::abs(x0);
    if (ax >= support_edge(M)) return 0.0;
    if (ax >= parametric_x0(M, 1e-12)) return 0.0;
    return parametric_density_phi(M, solve_phi(M, ax));
}

double origin_law(int M, double x) {
    return std::sin(kPi / (2.0 * M + 2.0)) * std::pow(std::abs(x), -double(M) / (M + 1.0)) / kPi;
}

namespace {

// Roots of sum_k c_k w^k (c_last != 0) via the companion matrix.
std::vector<cplx> poly_roots(const std::vector<cplx>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + d);
    return r;
}

// w^{p+1} - s w + s = 0
std::vector<cplx> fc_poly(int p, cplx s) {
    std::vector<cplx> c(p + 2, 0.0);
    c[0] = s;
    c[1] = -s;
    c[p + 1] = 1.0;
    return c;
}

struct TrackFailure {};

// Follow the root w ~ 1 of w^{p+1} - s(z) w + s(z) = 0 along z = x + i eta, eta from
// `start` down to `eps`, with s(z) = z^2 (square = true) or z.
cplx track_root(int p, double x, double start, double eps, bool square) {
    auto s_of = [&](double eta) {
        cplx z(x, eta);
        return square ? z * z : z;
    };
    auto pick = [](const std::vector<cplx>& r, cplx target, double& gap) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < r.size(); ++i)
            if (std::abs(r[i] - target) < std::abs(r[best] - target)) best = i;
        gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = i + 1; j < r.size(); ++j) gap = std::min(gap, std::abs(r[i] - r[j]));
        return r[best];
    };
    double gap = 0.0;
    double le = std::log(start);
    const double lend = std::log(eps);
    cplx w = pick(poly_roots(fc_poly(p, s_of(start))), 1.0, gap);
    double step = 0.05;
    while (le > lend) {
        double ln = std::max(lend, le - step);
        double g2 = 0.0;
        cplx wn = pick(poly_roots(fc_poly(p, s_of(std::exp(ln)))), w, g2);
        if (std::abs(wn - w) > 0.1 * std::min(gap, g2)) {
            step *= 0.5;
            if (step < 1e-9) throw TrackFailure{};
            continue;
        }
        w = wn;
        gap = g2;
        le = ln;
        step = std::min(step * 1.5, 0.5);
    }
    return w;
}

// -Im(w / z)/pi at z = x + i eps, retried with larger eps and Richardson extrapolation
double tracked_density(int p, double x, double start, bool square) {
    auto rho = [&](double eps) {
        cplx w = track_root(p, x, start, eps, square);
        return -std::imag(w / cplx(x, eps)) / kPi;
    };
    try {
        return rho(1e-8);
    } catch (const TrackFailure&) {
    }
    for (double eps = 1e-6; eps <= 1e-2; eps *= 10.0) {
        try {
            return 2.0 * rho(eps) - rho(2.0 * eps);
        } catch (const TrackFailure&) {
        }
    }
    throw ConvergenceError("branch tracking failed");
}

}  // namespace

cplx global_stieltjes(int M, cplx z) {
    if (z.imag() <= 0.0) throw DomainError("Stieltjes transform evaluated in the upper half-plane");
    const int p = 2 * M + 1;
    const double start = std::max(10.0 * support_edge(M), 2.0 * z.imag());
    cplx w = track_root(p, z.real(), start, z.imag(), true);
    return w / z;
}

double stieltjes_density(int M, double x) {
    if (M < 0) throw DomainError("M must be non-negative");
    if (x == 0.0) throw DomainError("Stieltjes density needs x != 0");
    return std::max(0.0, tracked_density(2 * M + 1, x, 10.0 * support_edge(M), true));
}

double fuss_catalan_density(int p, double t) {
    if (p < 1) throw DomainError("Fuss-Catalan parameter must be positive");
    if (!(t > 0.0)) throw DomainError("Fuss-Catalan density needs t > 0");
    const double edge = std::pow(p + 1.0, p + 1.0) / std::pow(double(p), p);
    return std::max(0.0, tracked_density(p, t, 10.0 * edge, false));
}

double global_density_via_fc(int M, double x) {
    if (x == 0.0) throw DomainError("density needs x != 0");
    return std::abs(x) * fuss_catalan_density(2 * M + 1, x * x);
}

EvalResult global_moment(int M, int k) {
    if (k % 2 == 1) return {0.0, 0.0};
    auto f = [&](double phi) {
        double x = parametric_x0(M, phi);
        double v = parametric_density_phi(M, phi) * std::abs(parametric_dx0(M, phi));
        return k == 0 ? v : std::pow(x, k) * v;
    };
    auto r = integrate_singular(f, 0.0, phi_max(M), 1e-13);
    return {2.0 * r.value, 2.0 * r.error};
}

std::vector<double> global_scaling_map(const EnsembleParams& params, const std::vector<double>& raw) {
    const double s = std::sqrt(2.0) / std::pow(params.n, params.M + 0.5);
    std::vector<double> out;
    out.reserve(raw.size());
    for (double v : raw) out.push_back(s * v);
    return out;
}

GlobalCdf::GlobalCdf(int M, int nodes) : M_(M), edge_(support_edge(M)) {
    if (nodes < 16) throw DomainError("CDF table needs at least 16 nodes");
    using GL = boost::math::quadrature::gauss<double, 10>;
    const double top = phi_max(M);
    auto f = [&](double phi) {
        return parametric_density_phi(M, phi) * std::abs(parametric_dx0(M, phi));
    };
    // phi_i descending from phi_max: mass of (0, x0(phi_i)) accumulates
    phi_.resize(nodes + 1);
    mass_.assign(nodes + 1, 0.0);
    for (int i = 0; i <= nodes; ++i) phi_[i] = top * (1.0 - double(i) / nodes);
    for (int i = 1; i <= nodes; ++i) {
        double a = phi_[i];
        double b = phi_[i - 1];
        double piece = (i == 1) ? integrate_singular(f, a, b, 1e-12).value : GL::integrate(f, a, b);
        mass_[i] = mass_[i - 1] + piece;
    }
}

double GlobalCdf::operator()(double x) const {
    if (x <= -edge_) return 0.0;
    if (x >= edge_) return 1.0;
    if (x == 0.0) return 0.5;
    const double ax = std::abs(x);
    double m;
    if (ax >= parametric_x0(M_, 1e-12)) {
        m = mass_.back();
    } else {
        double phi = solve_phi(M_, ax);
        // phi_ is descending and uniform
        const int n = static_cast<int>(phi_.size()) - 1;
        double pos = (phi_[0] - phi) / (phi_[0] - phi_[n]) * n;
        int i = std::clamp(static_cast<int>(pos), 0, n - 1);
        double t = pos - i;
        m = (1.0 - t) * mass_[i] + t * mass_[i + 1];
    }
    return std::clamp(x > 0.0 ? 0.5 + m : 0.5 - m, 0.0, 1.0);
}

}  // namespace hermprod
