#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "hermprod/biortho_kernel.hpp"
#include "hermprod/error.hpp"
#include "hermprod/hard_edge.hpp"

using namespace hermprod;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {
const HardRepresentation kReps[] = {HardRepresentation::g_product, HardRepresentation::double_contour,
                                    HardRepresentation::unified};

// int_0^1 J_nu(a sqrt u) J_nu(b sqrt u) du in closed form
double bessel_integral(double nu, double a, double b) {
    using boost::math::cyl_bessel_j;
    using boost::math::cyl_bessel_j_prime;
    double num = b * cyl_bessel_j(nu, a) * cyl_bessel_j_prime(nu, b) -
                 a * cyl_bessel_j_prime(nu, a) * cyl_bessel_j(nu, b);
    return 2.0 * num / (a * a - b * b);
}
}  // namespace

TEST_CASE("M=0 limit is the sine kernel") {
    auto p = make_params(0, 1);
    for (auto r : kReps) {
        CHECK(hard_kernel(0.3, -0.4, p, r).total == Approx(std::sin(1.4) / (pi * 0.7)).epsilon(1e-9));
        CHECK(hard_kernel(1.0, 0.5, p, r).total == Approx(sine_kernel(1.0, 0.5)).epsilon(1e-9));
    }
    for (double x : {0.2, -1.5, 4.0})
        CHECK(hard_kernel(x, x, p, HardRepresentation::double_contour).total == Approx(2.0 / pi).epsilon(1e-10));
    CHECK(sine_kernel(0.7, 0.7) == Approx(2.0 / pi));
}

TEST_CASE("M=1 values against an independent Meijer-G quadrature") {
    // mpmath meijerg products integrated over (0, 1)
    struct Case {
        EnsembleParams p;
        double x, y, even, odd;
    };
    const Case cases[] = {
        {make_params(1, 1, {1}), 1.0, 0.5, 0.308919118157065617, 0.132759895921000772},
        {make_params(1, 1, {0}), 0.7, -1.3, 0.0693037719404703, -0.102816550472656269},
        {make_params(1, 1, {0}), 0.8, 1.3, 0.0731487899357008114, 0.116912224626536381},
    };
    for (const auto& c : cases) {
        for (auto r : kReps) {
            auto v = hard_kernel(c.x, c.y, c.p, r);
            CHECK(v.even == Approx(c.even).epsilon(1e-9));
            CHECK(v.odd == Approx(c.odd).epsilon(1e-9));
        }
    }
}

TEST_CASE("representations agree on a mixed-sign grid") {
    for (auto p : {make_params(1, 1, {0}), make_params(1, 1, {2}), make_params(2, 1, {1, 0})}) {
        for (double x : {0.4, -0.9, 1.3}) {
            for (double y : {0.6, -1.1, 0.8}) {
                double a = hard_kernel(x, y, p, HardRepresentation::double_contour).total;
                CHECK(hard_kernel(x, y, p, HardRepresentation::g_product).total == Approx(a).epsilon(1e-6));
                CHECK(hard_kernel(x, y, p, HardRepresentation::unified).total == Approx(a).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("even part through the Meijer G-kernel with halved indices") {
    auto p = make_params(1, 1, {0});
    double x = 0.8, y = 1.3;
    double X = x * x / 4, Y = y * y / 4;
    auto v = hard_kernel(x, y, p, HardRepresentation::double_contour);
    CHECK(v.even == Approx(std::abs(y) / 4 * meijer_g_kernel(3, hard_meijer_nu(p, false), X, Y).value).epsilon(1e-9));
    CHECK(v.odd == Approx(std::abs(x) / 4 * meijer_g_kernel(3, hard_meijer_nu(p, true), X, Y).value).epsilon(1e-9));
    CHECK(hard_meijer_nu(make_params(1, 1, {3}), false) == std::vector<double>{0.0, -0.5, 1.5, 1.0});
}

TEST_CASE("single-factor Meijer kernel is the Bessel kernel") {
    for (double nu : {0.0, 1.0, 2.5}) {
        for (auto [x, y] : std::vector<std::pair<double, double>>{{0.1, 0.3}, {1.2, 0.4}, {3.0, 2.0}}) {
            double ref = std::pow(y / x, nu / 2) * bessel_integral(nu, 2 * std::sqrt(x), 2 * std::sqrt(y));
            CHECK(meijer_g_kernel(1, {0.0, nu}, x, y).value == Approx(ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("even part depends on |x| only") {
    auto p = make_params(1, 1, {1});
    auto a = hard_kernel(0.7, 0.9, p, HardRepresentation::unified);
    auto b = hard_kernel(-0.7, 0.9, p, HardRepresentation::unified);
    CHECK(a.even == Approx(b.even).epsilon(1e-12));
    CHECK(a.odd == Approx(-b.odd).epsilon(1e-12));
}

TEST_CASE("Muttalib-Borodin kernel at integer theta") {
    auto s = mb_integer_theta_identity(2.0, 1, 0.6, 0.9);
    CHECK(s.lhs == Approx(1.34489554779300).epsilon(1e-10));
    CHECK(s.rhs == Approx(s.lhs).epsilon(1e-5));
    auto t = mb_integer_theta_identity(2.0, 1, 1.1, 0.4);
    CHECK(t.rhs == Approx(t.lhs).epsilon(1e-5));
    auto nu = mb_meijer_nu(2.0, 3);
    REQUIRE(nu.size() == 4);
    CHECK(nu[1] == Approx(0.0));
    CHECK(nu[2] == Approx(1.0 / 3.0));
    CHECK(nu[3] == Approx(2.0 / 3.0));
}

TEST_CASE("theta=1 Muttalib-Borodin kernel reduces to the M=0 hard edge") {
    auto p = make_params(0, 1);
    for (auto [x, y] : std::vector<std::pair<double, double>>{{0.6, 0.9}, {-1.1, 0.4}}) {
        auto m = mb_hard_kernel(0.0, 1, x, y);
        auto h = hard_kernel(x, y, p, HardRepresentation::double_contour);
        CHECK(std::abs(x) * m.even == Approx(h.even).epsilon(1e-9));
        CHECK(m.odd / std::abs(x) == Approx(h.odd).epsilon(1e-9));
    }
}

TEST_CASE("finite kernels converge to the hard edge") {
    for (auto p : {make_params(0, 1), make_params(1, 1, {0})}) {
        double limit = hard_kernel(0.7, -0.5, p, HardRepresentation::double_contour).total;
        double prev = 1e300;
        for (int n : {10, 20, 40}) {
            double s = std::sqrt(double(n));
            double d = std::abs(kernel_finite(2 * n, p, 0.7 / s, -0.5 / s, KernelRoute::double_contour).total / s - limit);
            CHECK(d < prev);
            prev = d;
        }
    }
}

TEST_CASE("hard-edge queries need nonzero arguments") {
    HardEdgeQuery q{0.0, 1.0, make_params(1, 1, {0})};
    CHECK_THROWS_AS(q.validate(), DomainError);
    CHECK_THROWS_AS(hard_kernel(q), DomainError);
}
