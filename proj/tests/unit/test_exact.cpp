#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hermprod/ensemble_density.hpp"
#include "hermprod/exact.hpp"
#include "hermprod/quadrature.hpp"

using namespace hermprod;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {
SqrtPiValue root_pi(Rational c) { return {std::move(c), 1}; }
}

TEST_CASE("bi-moments in closed form") {
    auto p0 = make_params(0, 1);
    auto p1 = make_params(1, 1, {0});
    CHECK(bimoment(0, 0, p0) == root_pi(1));
    CHECK(bimoment(1, 0, p1) == SqrtPiValue{0, 0});
    CHECK(bimoment(2, 0, p1) == root_pi(1));
    CHECK(bimoment(2, 0, p1).to_double() == Approx(std::sqrt(pi)));
}

TEST_CASE("bi-moments against quadrature of the weights") {
    auto p = make_params(1, 1, {1});
    for (int k = 0; k <= 4; ++k) {
        for (int l = 0; l + k <= 6; ++l) {
            WeightEvaluator g(l, p);
            auto f = [&](double t) { return std::pow(t, k) * g(t) + std::pow(-t, k) * g(-t); };
            double q = integrate_half_line(f, 1.0, 1e-14, 1e-11).value;
            double exact = bimoment(k, l, p).to_double();
            if (exact == 0.0) CHECK(std::abs(q) < 1e-9);
            else CHECK(q == Approx(exact).epsilon(1e-7));
        }
    }
}

TEST_CASE("normalisations h_n") {
    auto p0 = make_params(0, 1);
    CHECK(h_norm(0, p0) == root_pi(1));
    CHECK(h_norm(1, p0) == root_pi(Rational(1, 2)));
}

TEST_CASE("h_n is a ratio of bi-moment determinants") {
    for (auto p : {make_params(0, 1), make_params(1, 1, {0}), make_params(1, 1, {2}), make_params(2, 1, {1, 1}),
                   make_params(2, 1, {0, 3})}) {
        for (int n = 1; n <= 6; ++n) {
            auto num = bimoment_determinant(n, p);
            auto den = bimoment_determinant(n - 1, p);
            CHECK(SqrtPiValue{num.coef / den.coef, num.half_pi_power - den.half_pi_power} == h_norm(n, p));
            CHECK(num == bimoment_determinant_closed(n, p));
        }
    }
}

TEST_CASE("polynomial coefficients") {
    auto p0 = make_params(0, 1);
    CHECK(p_coefficients(1, p0) == std::vector<Rational>{0, 1});
    CHECK(p_coefficients(2, p0) == std::vector<Rational>{Rational(-1, 2), 0, 1});
    // monic Hermite: x^4 - 3x^2 + 3/4, x^6 - 15/2 x^4 + 45/4 x^2 - 15/8
    CHECK(p_coefficients(4, p0) == std::vector<Rational>{Rational(3, 4), 0, -3, 0, 1});
    CHECK(p_coefficients(6, p0) ==
          std::vector<Rational>{Rational(-15, 8), 0, Rational(45, 4), 0, Rational(-15, 2), 0, 1});
    CHECK(p_coefficients(2, make_params(1, 1, {0})) == std::vector<Rational>{-1, 0, 1});
}

TEST_CASE("monic Hermite recursion for M=0, n <= 6") {
    auto p0 = make_params(0, 1);
    std::vector<Rational> prev{1}, cur{0, 1};
    for (int n = 2; n <= 6; ++n) {
        std::vector<Rational> next(n + 1, 0);
        for (int i = 0; i < n; ++i) next[i + 1] += cur[i];
        Rational half(n - 1, 2);
        half.canonicalize();
        for (int i = 0; i < n - 1; ++i) next[i] -= half * prev[i];
        CHECK(p_coefficients(n, p0) == next);
        prev = cur;
        cur = next;
    }
}

TEST_CASE("characteristic differential equation") {
    for (auto p : {make_params(0, 1), make_params(1, 1, {0}), make_params(1, 1, {3}), make_params(2, 1, {1, 1}),
                   make_params(2, 1, {2, 0})})
        for (int N = 1; N <= 4; ++N) CHECK(ode_check(N, p));
}

TEST_CASE("Fuss-Catalan numbers") {
    std::vector<int> catalan{1, 1, 2, 5, 14};
    for (int k = 0; k <= 4; ++k) CHECK(fuss_catalan_moment(1, k) == catalan[k]);
    CHECK(fuss_catalan_moment(3, 2) == 4);
    CHECK(fuss_catalan_moment(2, 3) == 12);
    CHECK(fuss_catalan_moment(3, 4) == 140);
}

TEST_CASE("rational linear algebra") {
    RationalMatrix A{{2, 1}, {1, 1}};
    CHECK(determinant(A) == 1);
    auto inv = inverse(A);
    CHECK(inv[0][0] == 1);
    CHECK(inv[0][1] == -1);
    CHECK(inv[1][1] == 2);
}

TEST_CASE("phi coefficients for M=0 reproduce Hermite functions") {
    // phi_2 = g_2 - 1/2 g_0 and phi_3 = g_3 - 3/2 g_1
    CHECK(phi_coefficients(2) == std::vector<Rational>{Rational(-1, 2), 0, 1});
    CHECK(phi_coefficients(3) == std::vector<Rational>{0, Rational(-3, 2), 0, 1});
}
