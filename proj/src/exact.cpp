#include "hermprod/exact.hpp"

#include <cmath>
#include <numbers>

#include "hermprod/error.hpp"

namespace hermprod {

double SqrtPiValue::to_double() const {
    return coef.get_d() * std::pow(std::numbers::pi, 0.5 * half_pi_power);
}

Rational factorial(int k) {
    if (k < 0) throw DomainError("factorial of a negative integer");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return Rational(f);
}

Rational gamma_half_coef(int k) {
    if (k < 0) throw DomainError("Gamma(k + 1/2) only for k >= 0");
    Rational r = factorial(2 * k) / factorial(k);
    mpz_class four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
    r /= Rational(four_k);
    r.canonicalize();
    return r;
}

SqrtPiValue bimoment(int k, int l, const EnsembleParams& params) {
    if (k < 0 || l < 0) throw DomainError("bi-moment indices must be non-negative");
    if ((k + l) % 2 != 0) return {Rational(0), 0};
    Rational c = gamma_half_coef((k + l) / 2);
    for (int v : params.nu) c *= factorial(v + k);
    return {c, 1};
}

RationalMatrix bimoment_matrix(int order, const EnsembleParams& params) {
    RationalMatrix B(order, std::vector<Rational>(order));
    for (int k = 0; k < order; ++k)
        for (int l = 0; l < order; ++l) B[k][l] = bimoment(k, l, params).coef;
    return B;
}

Rational determinant(RationalMatrix A) {
    const std::size_t n = A.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && A[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(A[piv], A[c]);
            det = -det;
        }
        det *= A[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (A[r][c] == 0) continue;
            Rational f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
        }
    }
    return det;
}

RationalMatrix inverse(RationalMatrix A) {
    const std::size_t n = A.size();
    RationalMatrix I(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && A[piv][c] == 0) ++piv;
        if (piv == n) throw DomainError("singular rational matrix");
        std::swap(A[piv], A[c]);
        std::swap(I[piv], I[c]);
        Rational d = A[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            A[c][k] /= d;
            I[c][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rational f = A[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                A[r][k] -= f * A[c][k];
                I[r][k] -= f * I[c][k];
            }
        }
    }
    return I;
}

SqrtPiValue bimoment_determinant(int n, const EnsembleParams& params) {
    return {determinant(bimoment_matrix(n + 1, params)), n + 1};
}

SqrtPiValue bimoment_determinant_closed(int n, const EnsembleParams& params) {
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(n * (n + 1) / 2));
    Rational c = Rational(1) / Rational(two);
    for (int v : params.nu_full())
        for (int j = 0; j <= n; ++j) c *= factorial(v + j);
    return {c, n + 1};
}

SqrtPiValue h_norm(int n, const EnsembleParams& params) {
    if (n < 0) throw DomainError("h_n needs n >= 0");
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(n));
    Rational c = Rational(1) / Rational(two);
    for (int v : params.nu_full()) c *= factorial(v + n);
    return {c, 1};
}

std::vector<Rational> p_coefficients(int n, const EnsembleParams& params) {
    if (n < 0) throw DomainError("degree must be non-negative");
    std::vector<Rational> c(n + 1);
    const int N = n / 2;
    const int odd = n % 2;
    for (int l = 0; l <= N; ++l) {
        mpz_class four;
        mpz_ui_pow_ui(four.get_mpz_t(), 4, static_cast<unsigned long>(N - l));
        Rational v = Rational(1) / (Rational(four) * factorial(N - l));
        if ((N - l) % 2 == 1) v = -v;
        for (int nu : params.nu_full()) v *= factorial(nu + 2 * N + odd) / factorial(nu + 2 * l + odd);
        c[2 * l + odd] = v;
    }
    return c;
}

std::vector<Rational> phi_coefficients(int n) {
    if (n < 0) throw DomainError("degree must be non-negative");
    std::vector<Rational> c(n + 1);
    const int N = n / 2;
    const int odd = n % 2;
    for (int l = 0; l <= N; ++l) {
        mpz_class four;
        mpz_ui_pow_ui(four.get_mpz_t(), 4, static_cast<unsigned long>(N - l));
        Rational v = factorial(2 * N + odd) /
                     (Rational(four) * factorial(N - l) * factorial(2 * l + odd));
        if ((N - l) % 2 == 1) v = -v;
        c[2 * l + odd] = v;
    }
    return c;
}

bool ode_check(int N, const EnsembleParams& params) {
    if (N < 1) throw DomainError("ODE check needs N >= 1");
    std::vector<Rational> c = p_coefficients(2 * N, params);
    if (c.back() != 1) return false;
    auto coef = [&](int k) { return (k >= 0 && k <= 2 * N) ? c[k] : Rational(0); };
    for (int k = 0; k <= 2 * N + 2; ++k) {
        Rational lhs = Rational(2 * (k - 2 - 2 * N)) * coef(k - 2);
        Rational rhs = coef(k);
        for (int nu : params.nu_full()) rhs *= Rational((k + nu) * (k + nu - 1));
        if (lhs != rhs) return false;
    }
    return true;
}

Rational fuss_catalan_moment(int p, int k) {
    if (p < 1 || k < 0) throw DomainError("Fuss-Catalan needs p >= 1, k >= 0");
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>((p + 1) * k),
                 static_cast<unsigned long>(k));
    Rational r = Rational(b) / Rational(p * k + 1);
    r.canonicalize();
    return r;
}

std::string to_string(const SqrtPiValue& v) {
    std::string s = v.coef.get_str();
    if (v.half_pi_power == 0 || v.coef == 0) return s;
    if (v.half_pi_power % 2 == 0) return s + " * pi^" + std::to_string(v.half_pi_power / 2);
    return s + " * pi^(" + std::to_string(v.half_pi_power) + "/2)";
}

}  // namespace hermprod
