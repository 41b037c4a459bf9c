#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hermprod/types.hpp"

namespace hermprod {

using CMatrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Counter-based child seed: the same (master, index) always gives the same stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Entries with independent N(0, 1/2) real and imaginary parts.
CMatrix sample_ginibre(int rows, int cols, std::uint64_t seed);
// Density proportional to exp(-Tr H^2).
CMatrix sample_gue(int dim, std::uint64_t seed);

struct ProductDraw {
    CMatrix H;
    CMatrix W;
};
ProductDraw draw_product(const EnsembleParams& params, std::uint64_t seed);
CMatrix build_hermitised_product(const EnsembleParams& params, std::uint64_t seed);

// Eigenvalues of a Hermitian matrix with |lambda| < zero_tol * radius counted as zeros.
SpectrumSample hermitian_spectrum(const CMatrix& W, double zero_tol = 1e-10);

// Nonzero spectrum of W_M; a numerical collision of eigenvalues triggers a resample.
SpectrumSample sample_product_spectrum(const EnsembleParams& params, std::uint64_t seed);

// Spectrum of G^dagger A G with G of size n x big_N.
SpectrumSample map_polynomial_ensemble(const SignedDiagonal& a, int big_N, std::uint64_t seed);

// Roots of 1 = a_p (q0 / lambda + sum_j q_j / (lambda - prev_j)), ascending.
std::vector<double> secular_roots(const std::vector<double>& prev, double a_p,
                                  const std::vector<double>& q_weights, double q0);

// Strict interlacing of `next` with {0} U prev, starting left when a_p < 0.
bool strictly_interlaced(const std::vector<double>& prev, const std::vector<double>& next,
                         double a_p);

// X^(1), ..., X^(n) built from secular roots and gamma draws only.
std::vector<SpectrumSample> rank_one_chain(const SignedDiagonal& a, int big_N,
                                           std::uint64_t seed);

// Density of the step-p eigenvalues given the step-(p-1) ones; zero off the interlacing domain.
double conditional_step_pdf(const std::vector<double>& next, const std::vector<double>& prev,
                            double a_p, int big_N);

}  // namespace hermprod
