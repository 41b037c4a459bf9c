#pragma once

#include <vector>

#include "hermprod/types.hpp"

namespace hermprod {

enum class HardRepresentation { g_product, double_contour, unified };

struct HardEdgeQuery {
    double x = 0.0;
    double y = 0.0;
    EnsembleParams params;
    HardRepresentation representation = HardRepresentation::double_contour;

    void validate() const;
};

// Limiting kernel at the origin, x, y != 0.
KernelValue hard_kernel(const HardEdgeQuery& query);
KernelValue hard_kernel(double x, double y, const EnsembleParams& params,
                        HardRepresentation representation);

// int_0^1 G^{1,0}_{0,M+1}(xu | -nu_0, ..., -nu_M) G^{M,0}_{0,M+1}(yu | nu_M, ..., nu_1; nu_0) du
// with nu = {nu_0, ..., nu_M}, M = m_eff.
EvalResult meijer_g_kernel(int m_eff, const std::vector<double>& nu, double x, double y);

// The 2M+2 indices of the Meijer kernel behind the even or odd hard-edge part.
std::vector<double> hard_meijer_nu(const EnsembleParams& params, bool odd);

// theta int_0^1 (Xu)^a J_{(a+1)/theta, 1/theta}(Xu) J_{a+1, theta}((Yu)^theta) du
EvalResult wright_kernel(double a, double theta, double X, double Y);

// Hard-edge kernel of the Hermite Muttalib-Borodin ensemble with weight |x|^alpha e^{-x^2}.
KernelValue mb_hard_kernel(double alpha, int theta, double x, double y);

// Meijer kernel indices {0, nu_1, ..., nu_theta} matching K^{(alpha, theta)} for integer theta.
std::vector<double> mb_meijer_nu(double alpha, int theta);
// The same with nu_m = (alpha + m - 1) / theta, which does not reproduce the kernel.
std::vector<double> mb_meijer_nu_literal(double alpha, int theta);

// Both sides of X^{1/theta - 1} K^{(alpha,theta)}(theta X^{1/theta}, theta Y^{1/theta})
//   = K_Meijer^theta(Y, X), X = x^2 / 4^M, Y = y^2 / 4^M, theta = 2M + 1.
struct IdentitySides {
    double lhs = 0.0;
    double rhs = 0.0;
};
IdentitySides mb_integer_theta_identity(double alpha, int M, double x, double y,
                                        bool literal_map = false);

// sin(2(x - y)) / (pi (x - y)), 2/pi on the diagonal
double sine_kernel(double x, double y);

}  // namespace hermprod
