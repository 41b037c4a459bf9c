#pragma once

#include <memory>
#include <vector>

#include "hermprod/ensemble_density.hpp"
#include "hermprod/exact.hpp"
#include "hermprod/types.hpp"

namespace hermprod {

double h_norm_value(int n, const EnsembleParams& params);

// Monic bi-orthogonal polynomial p_n.
double p_poly(int n, const EnsembleParams& params, double x);

enum class PhiBackend { weight_sum, contour };

// phi_n as a combination of weights, or through its single vertical-line integral.
EvalResult phi_func(int n, const EnsembleParams& params, double x,
                    PhiBackend backend = PhiBackend::weight_sum);

// p_0..p_{n-1} and phi_0..phi_{n-1} with cached weights, for integrals over many points.
class BiorthogonalSystem {
public:
    BiorthogonalSystem(const EnsembleParams& params, int size);
    int size() const { return size_; }
    double p(int k, double x) const;
    double phi(int k, double x) const;
    double h(int k) const { return h_[k]; }
    // weights g_0..g_{size-1} at x
    std::vector<double> weights(double x) const;
    std::vector<double> phis(double x) const;
    std::vector<double> ps(double x) const;
    // sum_{k<n} p_k(x) phi_k(y) / h_k split by parity
    KernelValue kernel(int n, double x, double y) const;

private:
    EnsembleParams params_;
    int size_;
    std::vector<std::vector<double>> pc_;
    std::vector<std::vector<double>> phic_;
    std::vector<double> h_;
    std::vector<WeightEvaluator> g_;
};

enum class KernelRoute { sum, double_contour, abc_oracle };

// K_n(x, y) for even n.
KernelValue kernel_finite(int n, const EnsembleParams& params, double x, double y,
                          KernelRoute route);

struct IntegralMatrix {
    std::vector<std::vector<double>> value;
    double error = 0.0;  // largest change under one panel refinement
};

// [int p_k phi_l dx]_{k,l <= kmax}
IntegralMatrix biorthogonality_matrix(const EnsembleParams& params, int kmax);

// Gauss-Legendre nodes on dyadic panels of (0, inf) covering the weights' support.
std::vector<std::pair<double, double>> half_line_nodes(const EnsembleParams& params, int kmax,
                                                       int split = 1);

// int K_n(x, x) dx
EvalResult kernel_trace(int n, const EnsembleParams& params);

}  // namespace hermprod

namespace hermprod {

// Classical GUE kernel for the weight e^{-x^2}, from the three-term Hermite recursion.
double gue_kernel(int n, double x, double y);

}  // namespace hermprod
