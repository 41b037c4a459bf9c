#include "hermprod/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hermprod/error.hpp"

namespace hermprod {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

CMatrix sample_ginibre(int rows, int cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw DomainError("Ginibre dimensions must be positive");
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    CMatrix G(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            double re = gauss(rng);
            double im = gauss(rng);
            G(i, j) = {re, im};
        }
    return G;
}

CMatrix sample_gue(int dim, std::uint64_t seed) {
    if (dim < 1) throw DomainError("GUE dimension must be positive");
    Rng rng(seed);
    std::normal_distribution<double> diag(0.0, std::sqrt(0.5));
    std::normal_distribution<double> off(0.0, 0.5);
    CMatrix H(dim, dim);
    for (int i = 0; i < dim; ++i) {
        H(i, i) = diag(rng);
        for (int j = i + 1; j < dim; ++j) {
            double re = off(rng);
            double im = off(rng);
            H(i, j) = {re, im};
            H(j, i) = {re, -im};
        }
    }
    return H;
}

ProductDraw draw_product(const EnsembleParams& params, std::uint64_t seed) {
    params.validate();
    ProductDraw d;
    d.H = sample_gue(params.n, derive_seed(seed, 0));
    d.W = d.H;
    for (int m = 1; m <= params.M; ++m) {
        CMatrix G = sample_ginibre(params.dim(m - 1), params.dim(m), derive_seed(seed, m));
        CMatrix next = G.adjoint() * d.W * G;
        d.W = 0.5 * (next + next.adjoint());
    }
    return d;
}

CMatrix build_hermitised_product(const EnsembleParams& params, std::uint64_t seed) {
    return draw_product(params, seed).W;
}

SpectrumSample hermitian_spectrum(const CMatrix& W, double zero_tol) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(W, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    double radius = ev.cwiseAbs().maxCoeff();
    SpectrumSample s;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i]) < zero_tol * radius)
            ++s.zero_multiplicity;
        else
            s.eigenvalues.push_back(ev[i]);
    }
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

namespace {

bool has_collision(const std::vector<double>& ev) {
    for (std::size_t i = 1; i < ev.size(); ++i) {
        double scale = std::max(std::abs(ev[i]), std::abs(ev[i - 1]));
        if (ev[i] - ev[i - 1] <= 1e-12 * scale) return true;
    }
    return false;
}

}  // namespace

SpectrumSample sample_product_spectrum(const EnsembleParams& params, std::uint64_t seed) {
    std::uint64_t s = seed;
    for (int attempt = 0; attempt < 64; ++attempt) {
        SpectrumSample out = hermitian_spectrum(build_hermitised_product(params, s));
        if (!has_collision(out.eigenvalues)) {
            out.seed = s;
            out.sampler_id = "hermitised-product";
            return out;
        }
        s = derive_seed(seed, 0x10000 + attempt);
    }
    throw ConvergenceError("repeated eigenvalue collisions while sampling");
}

SpectrumSample map_polynomial_ensemble(const SignedDiagonal& a, int big_N, std::uint64_t seed) {
    const int n = a.size();
    if (n > big_N) throw DomainError("polynomial-ensemble map requires n <= N");
    std::uint64_t s = seed;
    for (int attempt = 0; attempt < 64; ++attempt) {
        CMatrix G = sample_ginibre(n, big_N, s);
        Eigen::VectorXcd diag(n);
        for (int i = 0; i < n; ++i) diag[i] = a.entries[i];
        CMatrix X = G.adjoint() * diag.asDiagonal() * G;
        X = 0.5 * (X + X.adjoint()).eval();
        SpectrumSample out = hermitian_spectrum(X);
        if (!has_collision(out.eigenvalues) && static_cast<int>(out.eigenvalues.size()) == n) {
            out.seed = s;
            out.sampler_id = "polynomial-map";
            return out;
        }
        s = derive_seed(seed, 0x10000 + attempt);
    }
    throw ConvergenceError("repeated eigenvalue collisions while sampling");
}

std::vector<double> secular_roots(const std::vector<double>& prev, double a_p,
                                  const std::vector<double>& q_weights, double q0) {
    if (a_p == 0.0) throw DomainError("rank-one coefficient must be nonzero");
    if (q_weights.size() != prev.size()) throw DomainError("one weight per previous eigenvalue");
    if (!(q0 > 0.0)) throw DomainError("zero-mode weight must be positive");
    std::vector<double> poles{0.0};
    double Q = q0;
    for (std::size_t j = 0; j < prev.size(); ++j) {
        if (!(q_weights[j] > 0.0)) throw DomainError("secular weights must be positive");
        if (prev[j] == 0.0) throw DomainError("previous eigenvalues must be nonzero");
        if (j > 0 && !(prev[j - 1] < prev[j]))
            throw DomainError("previous eigenvalues must be strictly ascending");
        poles.push_back(prev[j]);
        Q += q_weights[j];
    }
    std::sort(poles.begin(), poles.end());
    auto F = [&](double lam) {
        double r = q0 / lam;
        for (std::size_t j = 0; j < prev.size(); ++j) r += q_weights[j] / (lam - prev[j]);
        return a_p * r - 1.0;
    };
    auto dF = [&](double lam) {
        double r = q0 / (lam * lam);
        for (std::size_t j = 0; j < prev.size(); ++j) {
            double d = lam - prev[j];
            r += q_weights[j] / (d * d);
        }
        return -a_p * r;
    };
    // F is decreasing on every bracket when a_p > 0 and increasing when a_p < 0.
    auto solve = [&](double lo, double hi) {
        double L = lo, R = hi;
        for (int it = 0; it < 2000; ++it) {
            double mid = 0.5 * (L + R);
            if (mid <= L || mid >= R) break;
            double v = F(mid);
            if (v == 0.0) return mid;
            bool root_right = (a_p > 0.0) == (v > 0.0);
            (root_right ? L : R) = mid;
        }
        double x = 0.5 * (L + R);
        for (int it = 0; it < 3; ++it) {
            double step = F(x) / dF(x);
            double y = x - step;
            if (!(y > L && y < R) || std::abs(F(y)) >= std::abs(F(x))) break;
            x = y;
        }
        return x;
    };
    std::vector<double> roots;
    if (a_p < 0.0) roots.push_back(solve(poles.front() + a_p * Q, poles.front()));
    for (std::size_t i = 0; i + 1 < poles.size(); ++i) roots.push_back(solve(poles[i], poles[i + 1]));
    if (a_p > 0.0) roots.push_back(solve(poles.back(), poles.back() + a_p * Q));
    return roots;
}

bool strictly_interlaced(const std::vector<double>& prev, const std::vector<double>& next,
                         double a_p) {
    std::vector<double> poles{0.0};
    poles.insert(poles.end(), prev.begin(), prev.end());
    std::sort(poles.begin(), poles.end());
    if (next.size() != poles.size()) return false;
    std::vector<double> seq;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (a_p < 0.0) {
            seq.push_back(next[i]);
            seq.push_back(poles[i]);
        } else {
            seq.push_back(poles[i]);
            seq.push_back(next[i]);
        }
    }
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (!(seq[i - 1] < seq[i])) return false;
    return true;
}

std::vector<SpectrumSample> rank_one_chain(const SignedDiagonal& a, int big_N,
                                           std::uint64_t seed) {
    const int n = a.size();
    if (n > big_N) throw DomainError("rank-one chain requires n <= N");
    Rng rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<SpectrumSample> chain;
    std::vector<double> prev;
    for (int p = 1; p <= n; ++p) {
        std::gamma_distribution<double> gam(big_N - p + 1, 1.0);
        double q0 = gam(rng);
        std::vector<double> q(prev.size());
        for (auto& v : q) v = expo(rng);
        std::vector<double> next = secular_roots(prev, a.entries[p - 1], q, q0);
        SpectrumSample s;
        s.eigenvalues = next;
        s.zero_multiplicity = big_N - p;
        s.seed = seed;
        s.sampler_id = "rank-one-chain";
        chain.push_back(std::move(s));
        prev = std::move(next);
    }
    return chain;
}

double conditional_step_pdf(const std::vector<double>& next, const std::vector<double>& prev,
                            double a_p, int big_N) {
    const int p = static_cast<int>(next.size());
    if (static_cast<int>(prev.size()) != p - 1) throw DomainError("step sizes do not match");
    if (p > big_N) throw DomainError("step index exceeds N");
    if (!strictly_interlaced(prev, next, a_p)) return 0.0;
    double lg = -big_N * std::log(std::abs(a_p)) - std::lgamma(big_N - p + 1.0);
    for (double l : next) lg += (big_N - p) * std::log(std::abs(l)) - l / a_p;
    for (double l : prev) lg -= (big_N - p + 1) * std::log(std::abs(l)) - l / a_p;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) lg += std::log(next[j] - next[i]);
    for (int k = 0; k + 1 < p; ++k)
        for (int l = k + 1; l + 1 < p; ++l) lg -= std::log(prev[l] - prev[k]);
    return std::exp(lg);
}

}  // namespace hermprod
