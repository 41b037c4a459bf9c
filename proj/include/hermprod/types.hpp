#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hermprod {

// Depth M, base dimension n and rectangularity indices nu_1..nu_M (nu_0 = 0).
struct EnsembleParams {
    int M = 0;
    int n = 1;
    std::vector<int> nu;

    void validate() const;
    // {0, nu_1, ..., nu_M}
    std::vector<int> nu_full() const;
    int dim(int m) const { return (m == 0 ? 0 : nu[m - 1]) + n; }
};

EnsembleParams make_params(int M, int n, std::vector<int> nu = {});

struct EvalResult {
    double value = 0.0;
    double error = 0.0;
};

struct KernelValue {
    double x = 0.0;
    double y = 0.0;
    double even = 0.0;
    double odd = 0.0;
    double total = 0.0;
};

struct SpectrumSample {
    std::vector<double> eigenvalues;  // ascending, exact zeros removed
    int zero_multiplicity = 0;
    std::uint64_t seed = 0;
    std::string sampler_id;
};

// a_1 < ... < a_n0 < 0 < a_{n0+1} < ... < a_n
struct SignedDiagonal {
    std::vector<double> entries;
    int n0 = 0;

    static SignedDiagonal from(std::vector<double> a);
    int size() const { return static_cast<int>(entries.size()); }
};

struct DensityCurve {
    std::vector<double> x;
    std::vector<double> analytic;
    std::vector<double> empirical;
    std::vector<double> stderr_;
    std::string kind;
    bool scaled = false;
};

}  // namespace hermprod
