#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "hermprod/types.hpp"

namespace hermprod {

using Rational = mpq_class;
using RationalMatrix = std::vector<std::vector<Rational>>;

// coef * pi^(half_pi_power / 2)
struct SqrtPiValue {
    Rational coef;
    int half_pi_power = 0;

    double to_double() const;
    bool operator==(const SqrtPiValue& o) const {
        return coef == o.coef && (coef == 0 || half_pi_power == o.half_pi_power);
    }
};

Rational factorial(int k);
// Gamma(k + 1/2) / sqrt(pi)
Rational gamma_half_coef(int k);

// b_{k,l} = int x^k g_l(x) dx
SqrtPiValue bimoment(int k, int l, const EnsembleParams& params);
// [b_{k,l} / sqrt(pi)]_{k,l < order}
RationalMatrix bimoment_matrix(int order, const EnsembleParams& params);
// det[b_{k,l}]_{k,l=0..n}
SqrtPiValue bimoment_determinant(int n, const EnsembleParams& params);
// 2^{-n(n+1)/2} pi^{(n+1)/2} prod_{m=0}^M prod_{j=0}^n Gamma(nu_m + j + 1)
SqrtPiValue bimoment_determinant_closed(int n, const EnsembleParams& params);
SqrtPiValue h_norm(int n, const EnsembleParams& params);

Rational determinant(RationalMatrix A);
RationalMatrix inverse(RationalMatrix A);

// Coefficients of x^0..x^n of p_n.
std::vector<Rational> p_coefficients(int n, const EnsembleParams& params);
// Coefficients of g_0..g_n in phi_n.
std::vector<Rational> phi_coefficients(int n);

// 2 x^2 (theta - 2N) f = prod_{m=0}^M (theta + nu_m)(theta + nu_m - 1) f for f = p_{2N}
bool ode_check(int N, const EnsembleParams& params);

// binom((p+1)k, k) / (pk + 1)
Rational fuss_catalan_moment(int p, int k);

std::string to_string(const SqrtPiValue& v);

}  // namespace hermprod
