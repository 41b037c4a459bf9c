#pragma once

#include <complex>
#include <vector>

#include "hermprod/exact.hpp"
#include "hermprod/types.hpp"

namespace hermprod {

// Fuss-Catalan parameter of the depth-M product: 2M + 1.
inline int fc_parameter(int M) { return 2 * M + 1; }

// sqrt((2M+2)^{2M+2} / (2M+1)^{2M+1})
double support_edge(int M);

// x0(phi) and the density along phi in (0, pi/(2M+2)).
double parametric_x0(int M, double phi);
double parametric_density_phi(int M, double phi);
// d x0 / d phi
double parametric_dx0(int M, double phi);

// Density at x0 from the trigonometric parametrisation; 0 outside the support.
double global_density_parametric(int M, double x0);

// (1/pi) sin(pi/(2M+2)) |x|^{-M/(M+1)}
double origin_law(int M, double x);

// G(z) = w/z with w^{2M+2} - z^2 w + z^2 = 0 on the branch w -> 1 as |z| -> inf.
std::complex<double> global_stieltjes(int M, std::complex<double> z);
// -Im G(x + i eps)/pi, eps = 1e-8
double stieltjes_density(int M, double x);

// Density of the Fuss-Catalan law with parameter p at t > 0, from w^{p+1} - t w + t = 0.
double fuss_catalan_density(int p, double t);
// |x| rho_FC(x^2) with parameter 2M + 1
double global_density_via_fc(int M, double x);

// int x^k rho(x) dx by quadrature in phi
EvalResult global_moment(int M, int k);

// sqrt(2) x / n^{M+1/2}
std::vector<double> global_scaling_map(const EnsembleParams& params,
                                       const std::vector<double>& raw);

// Cumulative distribution of the global density, tabulated in phi.
class GlobalCdf {
public:
    explicit GlobalCdf(int M, int nodes = 4096);
    double operator()(double x) const;

private:
    int M_;
    double edge_;
    std::vector<double> phi_;
    std::vector<double> mass_;  // mass of (0, x0(phi_i))
};

}  // namespace hermprod
