#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hermprod/biortho_kernel.hpp"
#include "hermprod/error.hpp"

using namespace hermprod;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {
double hermite_monic(int n, double x) {
    double a = 1.0, b = x;
    if (n == 0) return a;
    for (int k = 1; k < n; ++k) {
        double c = x * b - 0.5 * k * a;
        a = b;
        b = c;
    }
    return b;
}
}  // namespace

TEST_CASE("low-degree polynomials") {
    CHECK(p_poly(1, make_params(2, 1, {1, 1}), 0.37) == Approx(0.37));
    CHECK(p_poly(2, make_params(0, 1), 0.9) == Approx(0.81 - 0.5));
    CHECK(p_poly(2, make_params(1, 1, {0}), 0.9) == Approx(0.81 - 1.0));
}

TEST_CASE("M=0 dual functions are Hermite functions") {
    auto p = make_params(0, 1);
    double x = 0.9;
    double ref = hermite_monic(3, x) * std::exp(-x * x);
    CHECK(phi_func(3, p, x).value == Approx(ref).epsilon(1e-13));
    CHECK(phi_func(3, p, x, PhiBackend::contour).value == Approx(ref).epsilon(1e-9));
}

TEST_CASE("phi parity and backend agreement") {
    auto p = make_params(1, 1, {0});
    CHECK(phi_func(2, p, -1.1).value == Approx(phi_func(2, p, 1.1).value).epsilon(1e-13));
    for (int n : {1, 2, 5})
        for (double x : {-2.0, 0.3, 1.7})
            CHECK(phi_func(n, p, x, PhiBackend::contour).value ==
                  Approx(phi_func(n, p, x).value).epsilon(1e-8));
}

TEST_CASE("bi-orthogonality by quadrature") {
    for (auto p : {make_params(1, 1, {1}), make_params(2, 1, {1, 1})}) {
        auto I = biorthogonality_matrix(p, 5);
        for (int k = 0; k <= 5; ++k) {
            double hk = h_norm_value(k, p);
            for (int l = 0; l <= 5; ++l)
                CHECK(std::abs(I.value[k][l] - (k == l ? hk : 0.0)) < 1e-7 * hk);
        }
    }
}

TEST_CASE("kernel at the origin for M=0, n=2") {
    auto v = kernel_finite(2, make_params(0, 2), 0.0, 0.0, KernelRoute::sum);
    CHECK(v.total == Approx(1.0 / std::sqrt(pi)).epsilon(1e-14));
}

TEST_CASE("three kernel routes") {
    auto p = make_params(1, 4, {1});
    // exact rational inverse of the bi-moment matrix
    auto a = kernel_finite(4, p, 0.5, -1.2, KernelRoute::abc_oracle);
    CHECK(a.total == Approx(0.04813880962927006).epsilon(1e-12));
    for (auto r : {KernelRoute::sum, KernelRoute::double_contour}) {
        auto v = kernel_finite(4, p, 0.5, -1.2, r);
        CHECK(v.even == Approx(a.even).epsilon(1e-9));
        CHECK(v.odd == Approx(a.odd).epsilon(1e-9));
    }
    for (auto [x, y] : std::vector<std::pair<double, double>>{{-0.3, 0.7}, {1.1, 0.4}, {-0.8, -0.6}, {0.2, 1.5}}) {
        double s = kernel_finite(4, p, x, y, KernelRoute::sum).total;
        CHECK(kernel_finite(4, p, x, y, KernelRoute::double_contour).total == Approx(s).epsilon(1e-6));
        CHECK(kernel_finite(4, p, x, y, KernelRoute::abc_oracle).total == Approx(s).epsilon(1e-6));
    }
}

TEST_CASE("even and odd parts of neighbouring kernels") {
    auto p = make_params(1, 6, {0});
    BiorthogonalSystem sys(p, 7);
    double x = 0.6, y = -1.3;
    CHECK(sys.kernel(4, x, y).even == Approx(sys.kernel(3, x, y).even).epsilon(1e-13));
    CHECK(sys.kernel(4, x, y).odd == Approx(sys.kernel(5, x, y).odd).epsilon(1e-13));
    CHECK(sys.kernel(6, x, y).total == Approx(kernel_finite(6, p, x, y, KernelRoute::sum).total).epsilon(1e-12));
}

TEST_CASE("kernel trace") {
    CHECK(kernel_trace(4, make_params(1, 4, {0})).value == Approx(4.0).epsilon(1e-6));
    CHECK(kernel_trace(2, make_params(0, 2)).value == Approx(2.0).epsilon(1e-8));
}

TEST_CASE("M=0 kernel is the GUE kernel") {
    auto p = make_params(0, 4);
    for (int n : {2, 4, 6})
        for (auto [x, y] : std::vector<std::pair<double, double>>{{0.5, -1.2}, {-0.3, 0.7}, {1.1, 1.1}})
            CHECK(std::abs(kernel_finite(n, p, x, y, KernelRoute::sum).total - gue_kernel(n, x, y)) < 1e-10);
}

TEST_CASE("odd n is rejected") {
    CHECK_THROWS_AS(kernel_finite(3, make_params(0, 3), 0.1, 0.2, KernelRoute::sum), DomainError);
}
