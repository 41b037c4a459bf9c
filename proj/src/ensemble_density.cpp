#include "hermprod/ensemble_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/special_functions/digamma.hpp>

#include "hermprod/error.hpp"

namespace hermprod {

namespace {

constexpr double kPi = std::numbers::pi;

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// det[exp(E_ij)] as (log|det|, sign), with each row's maximum factored out first.
std::pair<double, int> log_det_exp(const LMatrix& E) {
    const Eigen::Index n = E.rows();
    if (n == 0) return {0.0, 1};
    if (n == 2) {
        // e^a - e^b = -e^a expm1(b - a) keeps close rows accurate
        long double delta = E(0, 1) + E(1, 0) - E(0, 0) - E(1, 1);
        if (delta == 0.0L) return {-std::numeric_limits<double>::infinity(), 0};
        long double m = std::expm1(delta);
        return {static_cast<double>(E(0, 0) + E(1, 1) + std::log(std::abs(m))), m < 0 ? 1 : -1};
    }
    LMatrix A(n, n);
    long double shift = 0.0L;
    for (Eigen::Index i = 0; i < n; ++i) {
        long double mx = E.row(i).maxCoeff();
        shift += mx;
        for (Eigen::Index j = 0; j < n; ++j) A(i, j) = std::exp(E(i, j) - mx);
    }
    long double d = A.partialPivLu().determinant();
    if (d == 0.0L) return {-std::numeric_limits<double>::infinity(), 0};
    return {static_cast<double>(std::log(std::abs(d)) + shift), d > 0 ? 1 : -1};
}

}  // namespace

double theorem1_pdf(const std::vector<double>& points, const SignedDiagonal& a, int big_N) {
    const int n = a.size();
    if (n > big_N) throw DomainError("G^dagger A G density requires n <= N");
    if (static_cast<int>(points.size()) != n) throw DomainError("need one point per diagonal entry");
    for (int i = 0; i < n; ++i) {
        if (points[i] == 0.0) throw DomainError("points must be nonzero");
        if (i > 0 && !(points[i - 1] < points[i]))
            throw DomainError("points must be strictly ascending");
    }
    int negatives = static_cast<int>(std::count_if(points.begin(), points.end(),
                                                   [](double v) { return v < 0.0; }));
    if (negatives != a.n0) return 0.0;
    const auto& av = a.entries;
    double lg = 0.0;
    for (int l = 0; l < n; ++l)
        lg += -std::log(std::abs(av[l])) + (big_N - n) * std::log(points[l] / av[l]) -
              std::lgamma(big_N - (l + 1) + 1.0);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) lg += std::log((points[k] - points[j]) / (av[k] - av[j]));
    int sign = 1;
    for (auto [lo, hi] : {std::pair{0, a.n0}, std::pair{a.n0, n}}) {
        LMatrix E(hi - lo, hi - lo);
        for (int i = lo; i < hi; ++i)
            for (int j = lo; j < hi; ++j)
                E(i - lo, j - lo) = -static_cast<long double>(points[i]) / av[j];
        auto [ld, s] = log_det_exp(E);
        lg += ld;
        sign *= s;
    }
    if (sign == 0) return 0.0;
    return sign * std::exp(lg);
}

namespace {

double weight_m0(int j, double x) { return std::pow(x, j) * std::exp(-x * x); }

double weight_at_zero(int j, const EnsembleParams& p) {
    if (j > 0) return 0.0;
    double v = 1.0;
    for (int nu : p.nu) {
        if (nu == 0) throw DomainError("g_0 diverges at the origin when some nu_m = 0");
        v *= std::tgamma(nu);
    }
    return v;
}

// g^{(m)}(x) = int du e^{nu_m u} exp(-e^u) g^{(m-1)}(x e^{-u})
EvalResult weight_recursive(int m, int j, const std::vector<int>& nu, double x) {
    if (m == 0) return {weight_m0(j, x), 0.0};
    const double v = nu[m - 1];
    auto f = [&](double u) {
        double pre = v * u - std::exp(u);
        if (pre < -745.0) return 0.0;
        return std::exp(pre) * weight_recursive(m - 1, j, nu, x * std::exp(-u)).value;
    };
    // locate the support by scanning outward from the origin
    const double step = 0.25;
    double peak = std::abs(f(0.0));
    auto scan = [&](double dir) {
        double u = 0.0;
        double last = peak;
        for (int k = 1; k < 4000; ++k) {
            u = dir * k * step;
            double val = std::abs(f(u));
            peak = std::max(peak, val);
            if (val < 1e-19 * peak && val <= last) return u;
            last = val;
        }
        throw ConvergenceError("recursive weight integrand does not decay");
    };
    double hi = scan(1.0);
    double lo = scan(-1.0);
    int n = static_cast<int>(std::ceil((hi - lo) / step));
    double h = (hi - lo) / n;
    double sum = 0.5 * (f(lo) + f(hi));
    for (int k = 1; k < n; ++k) sum += f(lo + k * h);
    double prev = sum * h;
    for (int level = 0; level < 12; ++level) {
        double mid = 0.0;
        for (int k = 0; k < n; ++k) mid += f(lo + (k + 0.5) * h);
        sum += mid;
        n *= 2;
        h *= 0.5;
        double cur = sum * h;
        if (std::abs(cur - prev) <= 1e-14 * std::abs(cur)) return {cur, std::abs(cur - prev)};
        prev = cur;
    }
    throw ConvergenceError("recursive weight quadrature did not converge");
}

GammaProductIntegrand weight_mb_integrand(int j, const std::vector<int>& nu, double ax) {
    GammaProductIntegrand g;
    g.num.push_back({0.5 * j, -0.5});
    for (int v : nu) g.num.push_back({static_cast<double>(v), -1.0});
    g.set_base(ax);
    return g;
}

double weight_mb_right(int j, const std::vector<int>& nu) {
    double r = static_cast<double>(j);
    for (int v : nu) r = std::min(r, static_cast<double>(v));
    return r;
}

EvalResult weight_mellin_barnes(int j, const std::vector<int>& nu, double x) {
    const double ax = std::abs(x);
    GammaProductIntegrand g = weight_mb_integrand(j, nu, ax);
    double c = std::min(-0.25, saddle_abscissa(g, weight_mb_right(j, nu)));
    auto r = mellin_barnes(g, c);
    double sgn = (x < 0.0 && j % 2 == 1) ? -1.0 : 1.0;
    return {0.5 * sgn * r.value, 0.5 * r.error};
}

EvalResult weight_meijer(int j, const std::vector<int>& nu, double x) {
    const int M = static_cast<int>(nu.size());
    std::vector<double> b;
    double pref = 1.0;
    for (int v : nu) {
        b.push_back(0.5 * v);
        b.push_back(0.5 * (v + 1));
        pref *= std::pow(2.0, v - 1) / std::sqrt(kPi);
    }
    b.push_back(0.5 * j);
    double X = x * x / std::pow(4.0, M);
    auto r = meijer_g_m0(2 * M + 1, b, X);
    double sgn = (x < 0.0 && j % 2 == 1) ? -1.0 : 1.0;
    return {sgn * pref * r.value, pref * r.error};
}

}  // namespace

EvalResult weight_g(const WeightSpec& spec, double x) {
    spec.params.validate();
    if (spec.degree < 0) throw DomainError("weight degree must be non-negative");
    if (x == 0.0) return {weight_at_zero(spec.degree, spec.params), 0.0};
    if (spec.params.M == 0) return {weight_m0(spec.degree, x), 0.0};
    switch (spec.backend) {
        case WeightBackend::recursive_quadrature:
            return weight_recursive(spec.params.M, spec.degree, spec.params.nu, x);
        case WeightBackend::mellin_barnes:
            return weight_mellin_barnes(spec.degree, spec.params.nu, x);
        case WeightBackend::meijer_g:
            return weight_meijer(spec.degree, spec.params.nu, x);
    }
    throw DomainError("unknown weight backend");
}

namespace {
constexpr double kLadderRatio = 1.15;
constexpr double kLadderStart = -0.25;
}  // namespace

WeightEvaluator::WeightEvaluator(int degree, const EnsembleParams& params)
    : j_(degree), params_(params), cache_(std::make_shared<Cache>()) {
    params_.validate();
    if (j_ < 0) throw DomainError("weight degree must be non-negative");
}

// log|x| whose real-axis saddle sits at abscissa c
double WeightEvaluator::saddle_log(double c) const {
    double s = 0.5 * boost::math::digamma(0.5 * (j_ - c));
    for (int v : params_.nu) s += boost::math::digamma(v - c);
    return s;
}

const WeightEvaluator::Line& WeightEvaluator::line(int index) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& slot = cache_->lines[index];
    if (slot) return *slot;
    auto ln = std::make_unique<Line>();
    ln->c = kLadderStart * std::pow(kLadderRatio, index);
    GammaProductIntegrand g = weight_mb_integrand(j_, params_.nu, 1.0);
    // strip half-width and the largest log|x| routed to this line
    const double d = std::min(1.0, weight_mb_right(j_, params_.nu) - ln->c);
    const double lx_hi = std::max(0.0, saddle_log(ln->c * std::sqrt(kLadderRatio)));
    const double h = 2.0 * kPi * d / (42.0 + d * lx_hi);
    ln->log_scale = g.log_at(cplx(ln->c, 0.0)).real();
    auto scaled = [&](cplx z) { return std::exp(g.log_at(z) - ln->log_scale); };
    LineOptions opt;
    opt.cutoff = 1e-18;
    double T = fit_contour(scaled, ln->c, opt).half_extent;
    int K = static_cast<int>(std::ceil(T / h));
    for (int k = 0; k <= K; ++k) {
        ln->t.push_back(k * h);
        ln->w.push_back(k == 0 ? 0.5 * h : h);
        ln->gamma_part.push_back(scaled(cplx(ln->c, k * h)));
    }
    slot = std::move(ln);
    return *slot;
}

double WeightEvaluator::operator()(double x) const {
    if (params_.M == 0) return weight_m0(j_, x);
    if (x == 0.0) return weight_at_zero(j_, params_);
    const double lx = std::log(std::abs(x));
    int index = 0;
    if (lx > saddle_log(kLadderStart)) {
        // saddle s < -1/4 solves saddle_log(s) = lx; bisect in log(-s)
        double lo = std::log(-kLadderStart);
        double hi = lo + 1.0;
        while (saddle_log(-std::exp(hi)) < lx) hi += 1.0;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (saddle_log(-std::exp(mid)) < lx ? lo : hi) = mid;
        }
        index = static_cast<int>(std::lround((0.5 * (lo + hi) - std::log(-kLadderStart)) /
                                             std::log(kLadderRatio)));
    }
    const Line& ln = line(index);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < ln.t.size(); ++k)
        acc += ln.w[k] * ln.gamma_part[k] * cplx(std::cos(ln.t[k] * lx), std::sin(ln.t[k] * lx));
    double sgn = (x < 0.0 && j_ % 2 == 1) ? -1.0 : 1.0;
    return 0.5 * sgn * std::exp(ln.c * lx + ln.log_scale) * acc.real() / kPi;
}

double log_normalisation(const EnsembleParams& params) {
    const int n = params.n;
    double lz = -0.5 * n * (n - 1) * std::log(2.0) + 0.5 * n * std::log(kPi);
    for (int v : params.nu_full())
        for (int j = 1; j <= n; ++j) lz += std::lgamma(v + j);
    return lz;
}

namespace {

// evaluators shared between calls so that repeated densities reuse their gamma tables
const WeightEvaluator& cached_weight(int j, const EnsembleParams& params) {
    static std::mutex mutex;
    static std::map<std::pair<int, std::vector<int>>, std::unique_ptr<WeightEvaluator>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{j, params.nu}];
    if (!slot) slot = std::make_unique<WeightEvaluator>(j, params);
    return *slot;
}

}  // namespace

double product_jpdf(const EnsembleParams& params, const std::vector<double>& points,
                    WeightBackend backend) {
    params.validate();
    const int n = params.n;
    if (static_cast<int>(points.size()) != n) throw DomainError("need n points");
    Eigen::MatrixXd G(n, n);
    double vdm = 1.0;
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            if (points[k] == points[i]) throw DomainError("points must be distinct");
            vdm *= points[k] - points[i];
        }
        for (int j = 0; j < n; ++j)
            G(i, j) = backend == WeightBackend::mellin_barnes ? cached_weight(j, params)(points[i])
                                                              : weight_g({j, params, backend}, points[i]).value;
    }
    double v = vdm * G.partialPivLu().determinant() * std::exp(-log_normalisation(params));
    return std::max(v, 0.0);
}

double mb_density_unnormalized(double alpha, int M, const std::vector<double>& points) {
    const int theta = 2 * M + 1;
    double v = 1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j)
            v *= (points[j] - points[i]) * (std::pow(points[j], theta) - std::pow(points[i], theta));
        v *= std::pow(std::abs(points[i]), alpha) * std::exp(-points[i] * points[i]);
    }
    return v;
}

double mb_alpha(const EnsembleParams& params) {
    double a = 0.0;
    for (int v : params.nu) a += 2.0 * v + 1.0;
    return a;
}

double meijer_asymptotic_leading(const std::vector<double>& b, double x) {
    const double q = static_cast<double>(b.size());
    double sb = 0.0;
    for (double v : b) sb += v;
    double r = std::pow(x, 1.0 / q);
    return std::pow(q, -0.5) * std::pow(2.0 * kPi / r, 0.5 * (q - 1.0)) * std::pow(x, sb / q) *
           std::exp(-q * r);
}

VariableMap mb_change_of_variables(int M, double y) {
    const double theta = 2.0 * M + 1.0;
    const double s = std::sqrt(theta);
    double x = std::pow(2.0, M) * std::pow(y / s, theta);
    double dx = std::pow(2.0, M) * theta * std::pow(y / s, theta - 1.0) / s;
    return {x, dx};
}

}  // namespace hermprod
