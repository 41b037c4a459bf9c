#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hermprod/ensemble_density.hpp"
#include "hermprod/error.hpp"
#include "hermprod/harness.hpp"
#include "hermprod/quadrature.hpp"

using namespace hermprod;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {
double g(int j, const EnsembleParams& p, double x, WeightBackend b = WeightBackend::mellin_barnes) {
    return weight_g({j, p, b}, x).value;
}
const WeightBackend kBackends[] = {WeightBackend::mellin_barnes, WeightBackend::recursive_quadrature,
                                   WeightBackend::meijer_g};
}  // namespace

TEST_CASE("scalar G^dagger A G densities are exponential") {
    CHECK(theorem1_pdf({0.5}, SignedDiagonal::from({1.0}), 1) == Approx(std::exp(-0.5)));
    CHECK(theorem1_pdf({-0.5}, SignedDiagonal::from({-1.0}), 1) == Approx(std::exp(-0.5)));
    CHECK(theorem1_pdf({0.5}, SignedDiagonal::from({-1.0}), 1) == 0.0);
}

TEST_CASE("G^dagger A G density is normalised") {
    CHECK(theorem1_normalisation(SignedDiagonal::from({-1.0, 2.0}), 2).value == Approx(1.0).epsilon(1e-6));
    CHECK(theorem1_normalisation(SignedDiagonal::from({0.5, 2.0}), 3).value == Approx(1.0).epsilon(1e-6));
    CHECK(theorem1_normalisation(SignedDiagonal::from({-3.0, -1.0}), 4).value == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("M=0 weights are x^j exp(-x^2)") {
    auto p = make_params(0, 3);
    for (auto b : kBackends)
        for (int j = 0; j < 4; ++j)
            for (double x : {-1.3, 0.4, 2.0})
                CHECK(g(j, p, x, b) == Approx(std::pow(x, j) * std::exp(-x * x)).epsilon(1e-14));
}

TEST_CASE("weights against an independent high-precision line integral") {
    // mpmath quadrature of the defining vertical-line integral at 30 digits
    struct Case {
        int j;
        EnsembleParams p;
        double x;
        double ref;
    };
    const Case cases[] = {
        {0, make_params(1, 1, {0}), 1.0, 0.186928732261528018621},
        {3, make_params(1, 1, {1}), 1.2, 0.143925279172330759624},
        {3, make_params(1, 1, {1}), -1.2, -0.143925279172330759624},
        {1, make_params(2, 1, {1, 1}), 0.7, 0.149022471220858245095},
        {2, make_params(1, 1, {2}), -2.5, 0.178494127591619545837},
        {0, make_params(2, 1, {1, 1}), 5.0, 0.0296921943223922066909},
    };
    for (const auto& c : cases)
        for (auto b : kBackends) CHECK(g(c.j, c.p, c.x, b) == Approx(c.ref).epsilon(1e-9));
}

TEST_CASE("M=1, nu=0, j=0 at x=1 is int y^-1 e^-y e^-1/y^2 dy") {
    auto f = [](double y) { return std::exp(-y - 1.0 / (y * y)) / y; };
    double ref = integrate_half_line(f, 1.0).value;
    CHECK(g(0, make_params(1, 1, {0}), 1.0, WeightBackend::recursive_quadrature) == Approx(ref).epsilon(1e-9));
}

TEST_CASE("backend triple agreement on a fixed grid") {
    for (auto p : {make_params(1, 1, {0}), make_params(1, 1, {2}), make_params(2, 1, {1, 1})}) {
        for (int j = 0; j <= 3; ++j) {
            for (double x : {-5.0, -1.0, -0.1, 0.05, 0.6, 3.0}) {
                double a = g(j, p, x, WeightBackend::mellin_barnes);
                CHECK(g(j, p, x, WeightBackend::recursive_quadrature) == Approx(a).epsilon(1e-7));
                CHECK(g(j, p, x, WeightBackend::meijer_g) == Approx(a).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("weight parity") {
    auto p = make_params(1, 1, {1});
    CHECK(g(3, p, -1.2) == Approx(-g(3, p, 1.2)).epsilon(1e-13));
    CHECK(g(2, p, -0.8) == Approx(g(2, p, 0.8)).epsilon(1e-13));
}

TEST_CASE("cached evaluator matches the pointwise weight") {
    auto p = make_params(2, 1, {0, 2});
    WeightEvaluator e(1, p);
    for (double x : {-7.0, -0.3, 1e-3, 0.9, 12.0})
        CHECK(e(x) == Approx(g(1, p, x)).epsilon(1e-11));
}

TEST_CASE("g_0 for M=1, nu=0 is a G^{3,0}_{0,3} function and follows its asymptotic") {
    // duplication formula: Gamma(-s) = 2^{-s-1} pi^{-1/2} Gamma(-s/2) Gamma(1/2 - s/2)
    auto p = make_params(1, 1, {0});
    for (double x : {0.3, 2.0})
        CHECK(g(0, p, x) == Approx(meijer_g_m0(3, {0.0, 0.0, 0.5}, x * x / 4).value / (2 * std::sqrt(pi))).epsilon(1e-10));
    double x = 1000.0;
    double lead = meijer_asymptotic_leading({0.0, 0.0, 0.5}, x * x / 4.0) / (2 * std::sqrt(pi));
    CHECK(g(0, p, x) / lead == Approx(1.0).epsilon(0.02));
}

TEST_CASE("M=0 product density is the GUE density") {
    auto p1 = make_params(0, 1);
    for (double x : {-0.7, 0.0, 1.4})
        CHECK(product_jpdf(p1, {x}) == Approx(std::exp(-x * x) / std::sqrt(pi)).epsilon(1e-12));
    auto p2 = make_params(0, 2);
    double x = -0.3, y = 0.8;
    double gue = 2.0 / pi * (y - x) * (y - x) * std::exp(-x * x - y * y);
    CHECK(product_jpdf(p2, {x, y}) == Approx(gue).epsilon(1e-10));
    auto f = [&](double t) { return product_jpdf(p1, {t}) + product_jpdf(p1, {-t}); };
    CHECK(integrate_half_line(f, 1.0).value == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("M=1 two-point product density is normalised") {
    auto p = make_params(1, 2, {0});
    // numerically zero beyond 1e4; the double-exponential rules probe far out
    auto pdf = [&](double x, double y) {
        if (std::abs(x) > 1e4 || std::abs(y) > 1e4 || !(x < y) || x == 0.0 || y == 0.0) return 0.0;
        return product_jpdf(p, {x, y});
    };
    boost::math::quadrature::exp_sinh<double> es;
    boost::math::quadrature::tanh_sinh<double> ts;
    const double tol = 1e-8;
    double both_negative = es.integrate(
        [&](double t) { return es.integrate([&](double u) { return pdf(-t - u, -t); }, tol); }, tol);
    double mixed = es.integrate(
        [&](double y) { return es.integrate([&](double t) { return pdf(-t, y); }, tol); }, tol);
    double both_positive = es.integrate(
        [&](double y) { return ts.integrate([&](double x) { return pdf(x, y); }, 0.0, y, tol); }, tol);
    CHECK(both_negative + mixed + both_positive == Approx(1.0).epsilon(1e-4));
    CHECK(both_negative == Approx(both_positive).epsilon(1e-6));
}

TEST_CASE("Muttalib-Borodin factor") {
    CHECK(mb_density_unnormalized(0.0, 0, {-0.4, 1.1}) ==
          Approx(1.5 * 1.5 * std::exp(-0.16 - 1.21)));
    CHECK(mb_density_unnormalized(3.0, 1, {-1.0, 0.2, 0.9}) >= 0.0);
    CHECK(mb_density_unnormalized(3.0, 1, {-0.9, -0.2, 1.0}) ==
          Approx(mb_density_unnormalized(3.0, 1, {-1.0, 0.2, 0.9})));
    CHECK(mb_alpha(make_params(2, 1, {1, 2})) == 8.0);
}

TEST_CASE("product density approaches the Muttalib-Borodin form at |x| ~ 30") {
    for (auto p : {make_params(1, 2, {0}), make_params(2, 2, {0, 0})}) {
        const double th = 2 * p.M + 1;
        auto to_y = [&](double x) {
            double y = std::sqrt(th) * std::pow(std::abs(x) / std::pow(2.0, p.M), 1 / th);
            return x < 0 ? -y : y;
        };
        std::vector<double> ratios;
        for (auto [a, b] : std::vector<std::pair<double, double>>{
                 {-30, 28}, {-31, 30}, {27, 32}, {-33, -29}, {29, 31}}) {
            double ya = to_y(a), yb = to_y(b);
            double jac = mb_change_of_variables(p.M, std::abs(ya)).jacobian *
                         mb_change_of_variables(p.M, std::abs(yb)).jacobian;
            ratios.push_back(product_jpdf(p, {a, b}) * jac /
                             mb_density_unnormalized(mb_alpha(p), p.M, {ya, yb}));
        }
        auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        CHECK(*hi / *lo - 1.0 < 0.05);
    }
}

TEST_CASE("change of variables") {
    auto m = mb_change_of_variables(1, std::sqrt(3.0));
    CHECK(m.x == Approx(2.0));
    CHECK(m.jacobian == Approx(2.0 * 3.0 / std::sqrt(3.0)));
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(make_params(2, 1, {1}), DomainError);
    CHECK_THROWS_AS(make_params(1, 0, {0}), DomainError);
    CHECK_THROWS_AS(make_params(1, 2, {-1}), DomainError);
}
