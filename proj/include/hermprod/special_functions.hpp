#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hermprod/types.hpp"

namespace hermprod {

using cplx = std::complex<double>;

// Principal branch of log Gamma(z).  Throws DomainError at non-positive integers.
cplx complex_log_gamma(cplx z);

// 1/Gamma(x) with exact zeros at the poles.
double rgamma(double x);
cplx rgamma(cplx z);

enum class QuadRule { trapezoid, gauss_legendre_panels };

// Line Re s = abscissa truncated to |Im s| <= half_extent.
struct VerticalContour {
    double abscissa = -0.25;
    double half_extent = 40.0;
    int nodes = 2048;
    QuadRule rule = QuadRule::trapezoid;

    void validate() const;
};

// prod Gamma(offset + scale*s) / prod Gamma(offset + scale*s) * base^(power_offset + power_scale*s)
struct GammaFactor {
    double offset;
    double scale;
};

struct GammaProductIntegrand {
    std::vector<GammaFactor> num;
    std::vector<GammaFactor> den;
    cplx log_base = 0.0;
    double power_offset = 0.0;
    double power_scale = 1.0;

    void set_base(double base) { log_base = std::log(base); }
    cplx log_at(cplx s) const;
    cplx operator()(cplx s) const { return std::exp(log_at(s)); }
    // exponent kappa in |integrand| ~ exp(-kappa*pi*|t|/2)
    double decay_rate() const;
    // open interval of abscissae free of numerator poles
    std::pair<double, double> strip() const;
};

using LineFunction = std::function<cplx(cplx)>;

struct LineOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    double cutoff = 1e-17;     // truncation relative to the peak magnitude
    int max_nodes = 1 << 18;
    bool refine = true;        // double the node count until the tolerance is met
    bool conjugate_symmetric = true;  // f(conj s) = conj f(s): integrate t >= 0 only
};

struct ComplexEvalResult {
    cplx value;
    double error = 0.0;
};

// Choose half_extent where |f| has dropped below cutoff * peak.
VerticalContour fit_contour(const LineFunction& f, double abscissa, const LineOptions& opt = {});

// (1/2 pi i) * integral of f along the contour; real part for conjugate-symmetric f.
EvalResult line_integral(const LineFunction& f, const VerticalContour& contour,
                         const LineOptions& opt = {});
ComplexEvalResult line_integral_complex(const LineFunction& f, const VerticalContour& contour,
                                        const LineOptions& opt = {});

// Abscissa minimising the integrand modulus on the real axis, left of the strip's right end.
double saddle_abscissa(const GammaProductIntegrand& g, double right_limit);

// Mellin-Barnes integral of a gamma product; integrand rescaled at the abscissa to avoid
// overflow.  abscissa must lie inside g.strip().
EvalResult mellin_barnes(const GammaProductIntegrand& g, double abscissa,
                         std::optional<VerticalContour> contour = std::nullopt,
                         const LineOptions& opt = {});

// G^{1,0}_{0,q}(x | b) by its residue series.
EvalResult meijer_g_series(const std::vector<double>& b, double x);
cplx meijer_g_series(const std::vector<double>& b, cplx z);

// G^{m,0}_{0,q}(x | b_1..b_q).  m = 1 uses the series, otherwise the vertical line.
EvalResult meijer_g_m0(int m, const std::vector<double>& b, double x,
                       std::optional<VerticalContour> contour = std::nullopt);

// G^{q,0}_{0,q}(z | b) for complex z with |arg z| <= pi/2.
ComplexEvalResult meijer_g_qq_complex(const std::vector<double>& b, cplx z);

// G^{m,0}_{0,q}(z | b) for many positive z on one fixed line with cached gamma values.
class MeijerLine {
public:
    MeijerLine(int m, std::vector<double> b, double z_max);
    double operator()(double z) const;
    double abscissa() const { return c_; }
    int nodes() const { return static_cast<int>(t_.size()); }

private:
    double c_ = 0.0;
    std::vector<double> t_;
    std::vector<double> w_;
    std::vector<cplx> gamma_part_;
};

// sum_k (-x)^k / (k! Gamma(a + b k))
EvalResult wright_bessel(double a, double b, double x);

// K_nu(z) for Re z > 0.
cplx bessel_k(double nu, cplx z);

}  // namespace hermprod
