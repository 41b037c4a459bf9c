#include "hermprod/biortho_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "hermprod/error.hpp"
#include "hermprod/special_functions.hpp"

namespace hermprod {

namespace {

constexpr double kPi = std::numbers::pi;

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<double> to_double(const std::vector<Rational>& c) {
    std::vector<double> out;
    for (const auto& v : c) out.push_back(v.get_d());
    return out;
}

}  // namespace

double h_norm_value(int n, const EnsembleParams& params) { return h_norm(n, params).to_double(); }

double p_poly(int n, const EnsembleParams& params, double x) {
    return horner(to_double(p_coefficients(n, params)), x);
}

namespace {

EvalResult phi_contour(int n, const EnsembleParams& params, double x) {
    if (x == 0.0) throw DomainError("contour form of phi_n needs x != 0");
    const int N = n / 2;
    const int odd = n % 2;
    GammaProductIntegrand g;
    g.num.push_back({static_cast<double>(N), -1.0});
    g.num.push_back({0.5 + odd, 1.0});
    for (int v : params.nu) g.num.push_back({v + 1.0 + odd, 2.0});
    g.den.push_back({0.0, -1.0});
    g.set_base(std::abs(x));
    g.power_offset = -1.0 - odd;
    g.power_scale = -2.0;
    auto r = mellin_barnes(g, -0.25);
    double lc = (2 * N + odd) * std::log(2.0) - 0.5 * std::log(kPi) - std::lgamma(n + 1.0);
    for (int v : params.nu) lc -= std::lgamma(v + n + 1.0);
    double pref = std::exp(lc) * ((N % 2 == 0) ? 1.0 : -1.0) * h_norm_value(n, params);
    double sgn = (odd && x < 0.0) ? -1.0 : 1.0;
    return {sgn * pref * r.value, std::abs(pref) * r.error};
}

}  // namespace

EvalResult phi_func(int n, const EnsembleParams& params, double x, PhiBackend backend) {
    params.validate();
    if (n < 0) throw DomainError("degree must be non-negative");
    if (backend == PhiBackend::contour) return phi_contour(n, params, x);
    auto c = phi_coefficients(n);
    EvalResult out;
    for (int l = n % 2; l <= n; l += 2) {
        auto g = weight_g({l, params, WeightBackend::mellin_barnes}, x);
        out.value += c[l].get_d() * g.value;
        out.error += std::abs(c[l].get_d()) * g.error;
    }
    return out;
}

BiorthogonalSystem::BiorthogonalSystem(const EnsembleParams& params, int size)
    : params_(params), size_(size) {
    params_.validate();
    if (size < 1) throw DomainError("system size must be positive");
    for (int k = 0; k < size; ++k) {
        pc_.push_back(to_double(p_coefficients(k, params_)));
        phic_.push_back(to_double(phi_coefficients(k)));
        h_.push_back(h_norm_value(k, params_));
        g_.emplace_back(k, params_);
    }
}

std::vector<double> BiorthogonalSystem::weights(double x) const {
    std::vector<double> g;
    for (const auto& e : g_) g.push_back(e(x));
    return g;
}

std::vector<double> BiorthogonalSystem::ps(double x) const {
    std::vector<double> out;
    for (const auto& c : pc_) out.push_back(horner(c, x));
    return out;
}

std::vector<double> BiorthogonalSystem::phis(double x) const {
    auto g = weights(x);
    std::vector<double> out;
    for (const auto& c : phic_) {
        double v = 0.0;
        for (std::size_t l = 0; l < c.size(); ++l) v += c[l] * g[l];
        out.push_back(v);
    }
    return out;
}

double BiorthogonalSystem::p(int k, double x) const { return horner(pc_.at(k), x); }

double BiorthogonalSystem::phi(int k, double x) const {
    const auto& c = phic_.at(k);
    double v = 0.0;
    for (std::size_t l = k % 2; l < c.size(); l += 2) v += c[l] * g_[l](x);
    return v;
}

KernelValue BiorthogonalSystem::kernel(int n, double x, double y) const {
    if (n > size_) throw DomainError("kernel order exceeds system size");
    auto px = ps(x);
    auto py = phis(y);
    KernelValue kv{x, y, 0.0, 0.0, 0.0};
    for (int k = 0; k < n; ++k) (k % 2 == 0 ? kv.even : kv.odd) += px[k] * py[k] / h_[k];
    kv.total = kv.even + kv.odd;
    return kv;
}

namespace {

KernelValue kernel_sum(int n, const EnsembleParams& params, double x, double y) {
    KernelValue kv{x, y, 0.0, 0.0, 0.0};
    for (int k = 0; k < n; ++k) {
        double v = p_poly(k, params, x) * phi_func(k, params, y).value / h_norm_value(k, params);
        (k % 2 == 0 ? kv.even : kv.odd) += v;
    }
    kv.total = kv.even + kv.odd;
    return kv;
}

KernelValue kernel_abc(int n, const EnsembleParams& params, double x, double y) {
    RationalMatrix Rinv = inverse(bimoment_matrix(n, params));
    const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
    std::vector<double> g(n);
    for (int j = 0; j < n; ++j) g[j] = weight_g({j, params, WeightBackend::mellin_barnes}, y).value;
    KernelValue kv{x, y, 0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        double xi = std::pow(x, i);
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += Rinv[j][i].get_d() * g[j];
        (i % 2 == 0 ? kv.even : kv.odd) += xi * acc * inv_sqrt_pi;
    }
    kv.total = kv.even + kv.odd;
    return kv;
}

// One parity of the finite-n double contour: s-residues summed, t on a vertical line.
double finite_contour_part(int half, const std::vector<int>& nu, double ax, double ay,
                           bool odd, double c) {
    const double e = odd ? 1.0 : 0.0;
    std::vector<double> A(half);
    const double lgn = std::lgamma(static_cast<double>(half));
    for (int k = 0; k < half; ++k) {
        double la = -std::lgamma(k + 1.0) - std::lgamma(k + 0.5 + e) -
                    (std::lgamma(static_cast<double>(half - k)) - lgn);
        for (int v : nu) la -= std::lgamma(v + 2.0 * k + 1.0 + e);
        double xp = odd ? std::pow(ax, 2 * k + 1) : (k == 0 ? 1.0 : std::pow(ax, 2 * k));
        A[k] = ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(la) * xp;
    }
    const double ly = std::log(ay);
    LineFunction f = [&](cplx t) {
        cplx lg = (-t - 1.0) * ly + complex_log_gamma((t + 1.0 + e) / 2.0) +
                  complex_log_gamma((2.0 * half + e - t) / 2.0) - lgn -
                  complex_log_gamma((e - t) / 2.0);
        for (int v : nu) lg += complex_log_gamma(static_cast<double>(v) + t + 1.0);
        cplx s = 0.0;
        for (int k = 0; k < half; ++k) s += A[k] / (2.0 * k + e - t);
        return std::exp(lg) * s;
    };
    VerticalContour vc = fit_contour(f, c);
    return line_integral(f, vc).value;
}

KernelValue kernel_double_contour(int n, const EnsembleParams& params, double x, double y) {
    if (y == 0.0) throw DomainError("double-contour kernel needs y != 0");
    const double c = -0.5;
    const int half = n / 2;
    KernelValue kv{x, y, 0.0, 0.0, 0.0};
    kv.even = finite_contour_part(half, params.nu, std::abs(x), std::abs(y), false, c);
    double sg = (x * y > 0.0) ? 1.0 : ((x * y < 0.0) ? -1.0 : 0.0);
    if (sg != 0.0) kv.odd = sg * finite_contour_part(half, params.nu, std::abs(x), std::abs(y), true, c);
    kv.total = kv.even + kv.odd;
    return kv;
}

}  // namespace

KernelValue kernel_finite(int n, const EnsembleParams& params, double x, double y,
                          KernelRoute route) {
    params.validate();
    if (n < 2 || n % 2 != 0) throw DomainError("finite kernel needs even n >= 2");
    switch (route) {
        case KernelRoute::sum:
            return kernel_sum(n, params, x, y);
        case KernelRoute::double_contour:
            return kernel_double_contour(n, params, x, y);
        case KernelRoute::abc_oracle:
            return kernel_abc(n, params, x, y);
    }
    throw DomainError("unknown kernel route");
}

std::vector<std::pair<double, double>> half_line_nodes(const EnsembleParams& params, int kmax,
                                                       int split) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    WeightEvaluator g0(0, params);
    WeightEvaluator g1(1, params);
    // outer edge: weights times x^(2 kmax + 2) negligible
    double X = 1.0;
    while (X < 1e12) {
        double mag = (std::abs(g0(X)) + std::abs(g1(X))) * std::pow(X, 2.0 * kmax + 2.0);
        if (mag < 1e-30) break;
        X *= 2.0;
    }
    std::vector<std::pair<double, double>> panels;
    for (double hi = 1.0; hi > 1e-14; hi *= 0.5) panels.emplace_back(0.5 * hi, hi);
    for (double lo = 1.0; lo < X; lo *= 2.0) {
        // unit-width panels where the weights oscillate little relative to the scale
        int pieces = std::max(1, static_cast<int>(lo / 4.0));
        pieces = std::min(pieces, 64);
        double w = lo / pieces;
        for (int p = 0; p < pieces; ++p) panels.emplace_back(lo + p * w, lo + (p + 1) * w);
    }
    std::vector<std::pair<double, double>> nodes;
    const auto& ab = GL::abscissa();
    const auto& wt = GL::weights();
    for (auto [a0, b0] : panels) {
        double w0 = (b0 - a0) / split;
        for (int s = 0; s < split; ++s) {
            double a = a0 + s * w0;
            double b = a + w0;
            double mid = 0.5 * (a + b);
            double hw = 0.5 * (b - a);
            for (std::size_t i = 0; i < ab.size(); ++i) {
                nodes.emplace_back(mid + hw * ab[i], hw * wt[i]);
                nodes.emplace_back(mid - hw * ab[i], hw * wt[i]);
            }
        }
    }
    return nodes;
}

IntegralMatrix biorthogonality_matrix(const EnsembleParams& params, int kmax) {
    params.validate();
    BiorthogonalSystem sys(params, kmax + 1);
    auto run = [&](int split) {
        std::vector<std::vector<double>> I(kmax + 1, std::vector<double>(kmax + 1, 0.0));
        for (auto [x, w] : half_line_nodes(params, kmax, split)) {
            for (double s : {x, -x}) {
                auto p = sys.ps(s);
                auto f = sys.phis(s);
                for (int k = 0; k <= kmax; ++k)
                    for (int l = 0; l <= kmax; ++l) I[k][l] += w * p[k] * f[l];
            }
        }
        return I;
    };
    auto coarse = run(1);
    auto fine = run(2);
    IntegralMatrix out{fine, 0.0};
    for (int k = 0; k <= kmax; ++k)
        for (int l = 0; l <= kmax; ++l)
            out.error = std::max(out.error, std::abs(fine[k][l] - coarse[k][l]));
    return out;
}

EvalResult kernel_trace(int n, const EnsembleParams& params) {
    BiorthogonalSystem sys(params, n);
    auto run = [&](int split) {
        double acc = 0.0;
        for (auto [x, w] : half_line_nodes(params, n, split))
            acc += 2.0 * w * sys.kernel(n, x, x).total;
        return acc;
    };
    double coarse = run(1);
    double fine = run(2);
    return {fine, std::abs(fine - coarse)};
}

}  // namespace hermprod

namespace hermprod {

double gue_kernel(int n, double x, double y) {
    // monic Hermite: H_{k+1} = x H_k - (k/2) H_{k-1}, h_k = sqrt(pi) k! / 2^k
    double hx0 = 1.0, hx1 = x, hy0 = 1.0, hy1 = y;
    double h = std::sqrt(kPi);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += hx0 * hy0 / h;
        double nx = x * hx1 - 0.5 * (k + 1) * hx0;
        double ny = y * hy1 - 0.5 * (k + 1) * hy0;
        hx0 = hx1;
        hx1 = nx;
        hy0 = hy1;
        hy1 = ny;
        h *= 0.5 * (k + 1);
    }
    return sum * std::exp(-y * y);
}

}  // namespace hermprod
