#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "hermprod/special_functions.hpp"
#include "hermprod/types.hpp"

namespace hermprod {

// Joint density of the nonzero eigenvalues of G^dagger A G (points ascending).
// Zero when the sign pattern of the points does not match a.n0.
double theorem1_pdf(const std::vector<double>& points, const SignedDiagonal& a, int big_N);

enum class WeightBackend { recursive_quadrature, mellin_barnes, meijer_g };

struct WeightSpec {
    int degree = 0;
    EnsembleParams params;
    WeightBackend backend = WeightBackend::mellin_barnes;
};

// g_j^{(M)}(x)
EvalResult weight_g(const WeightSpec& spec, double x);

// Repeated evaluation of one weight.  Gamma values are cached on a ladder of vertical
// lines; each x uses the line nearest its saddle point.  Safe to share across threads.
class WeightEvaluator {
public:
    WeightEvaluator(int degree, const EnsembleParams& params);
    double operator()(double x) const;

private:
    struct Line {
        double c = 0.0;
        double log_scale = 0.0;
        std::vector<double> t;
        std::vector<double> w;
        std::vector<cplx> gamma_part;
    };
    struct Cache {
        std::mutex mutex;
        std::map<int, std::unique_ptr<Line>> lines;
    };
    const Line& line(int index) const;
    double saddle_log(double c) const;

    int j_;
    EnsembleParams params_;
    std::shared_ptr<Cache> cache_;
};

// log of 2^{-n(n-1)/2} pi^{n/2} prod_{m=0}^M prod_{j=1}^n Gamma(nu_m + j)
double log_normalisation(const EnsembleParams& params);

// Density of the nonzero eigenvalues of W_M, normalised over the ordered domain.
double product_jpdf(const EnsembleParams& params, const std::vector<double>& points,
                    WeightBackend backend = WeightBackend::mellin_barnes);

// prod_{i<j} (y_j - y_i)(y_j^theta - y_i^theta) prod |y_k|^alpha e^{-y_k^2}, theta = 2M+1
double mb_density_unnormalized(double alpha, int M, const std::vector<double>& points);

// alpha = sum_{m=1}^M (2 nu_m + 1)
double mb_alpha(const EnsembleParams& params);

// Leading large-x form of G^{q,0}_{0,q}(x | b).
double meijer_asymptotic_leading(const std::vector<double>& b, double x);

// x' = 2^M (y / sqrt(2M+1))^{2M+1} and dx'/dy
struct VariableMap {
    double x;
    double jacobian;
};
VariableMap mb_change_of_variables(int M, double y);

}  // namespace hermprod
