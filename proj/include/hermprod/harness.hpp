#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hermprod/error.hpp"
#include "hermprod/types.hpp"

namespace hermprod {

struct ConfigError : Error {
    using Error::Error;
};

enum class Command { sample, density, kernel, moments, verify };
enum class OutputFormat { csv, json };

struct Grid {
    double min = -3.0;
    double max = 3.0;
    int points = 61;

    std::vector<double> values() const;
};

struct RunConfig {
    Command command = Command::verify;
    EnsembleParams params;
    std::optional<std::uint64_t> seed;
    int repeats = 1;
    std::optional<Grid> grid;
    std::string output_path;  // empty: standard output
    OutputFormat output_format = OutputFormat::csv;
    std::string suite;        // verify
    std::string route;        // kernel
    std::string kind = "global";  // density
    int fc = 3;               // moments
    int k = 4;
    int threads = 0;          // 0: hardware concurrency

    void validate() const;
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

Command parse_command(const std::string& s);
OutputFormat parse_format(const std::string& s);
std::vector<int> parse_nu(const std::string& s);

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double wall_time = 0.0;

    bool pass() const;
    // measured <= tolerance
    void add(std::string name, double measured, double tolerance);
    // measured >= tolerance
    void add_at_least(std::string name, double measured, double tolerance);
};

int resolve_threads(int requested);

// f(0..count-1) on a pool of workers pulling indices from a shared counter; the result
// vector is in index order, so the output does not depend on the worker count.
template <class T>
std::vector<T> parallel_map(int count, const std::function<T(int)>& f, int threads = 0) {
    std::vector<std::optional<T>> slots(count);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    const int nt = std::max(1, std::min(resolve_threads(threads), count));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

// sup |F_n - F| for sorted samples
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Product-ensemble spectra; sample i uses the child seed derive_seed(seed, i).
std::vector<SpectrumSample> sample_spectra(const EnsembleParams& params, std::uint64_t seed,
                                           int repeats, int threads = 0);

// Monte Carlo against the exact two-point law of G^dagger A G, n = 2.
struct HistogramCheck {
    int draws = 0;
    int cells = 0;
    int failures = 0;         // cells outside 3 standard errors
    double max_z = 0.0;
    double sign_fraction = 0.0;  // draws with the sign pattern of a
    double normalisation = 0.0;
    double covered_mass = 0.0;
};
HistogramCheck theorem1_histogram(const SignedDiagonal& a, int big_N, int draws,
                                  std::uint64_t seed, int bins = 20, int threads = 0);

// integral of the G^dagger A G density over the ordered domain, n <= 2
EvalResult theorem1_normalisation(const SignedDiagonal& a, int big_N);

// Largest per-coordinate two-sample KS distance between chain and direct spectra.
double sampler_ks(const SignedDiagonal& a, int big_N, int draws, std::uint64_t seed,
                  int threads = 0);

struct InterlacingCount {
    long steps = 0;
    long interlaced = 0;
};
InterlacingCount interlacing_count(const SignedDiagonal& a, int big_N, int draws,
                                   std::uint64_t seed, int threads = 0);

// KS distance of pooled, scaled product spectra from the global law.
double global_ks(const EnsembleParams& params, int repeats, std::uint64_t seed, int threads = 0);

// Empirical density on the grid (bins centred at grid points) with binomial standard errors.
DensityCurve global_density_curve(const EnsembleParams& params, const std::vector<double>& x,
                                  std::optional<std::uint64_t> seed, int repeats, int threads = 0);

// verify {biortho | kernels | hard-edge | global | theorem1 | weights}
SuiteReport run_suite(const RunConfig& config);

void write_report(const SuiteReport& r, OutputFormat f, std::ostream& out);
void write_spectra(const std::vector<SpectrumSample>& s, OutputFormat f, std::ostream& out);
void write_curve(const DensityCurve& c, OutputFormat f, std::ostream& out);

// Executes the command and writes its output; returns the process exit code
// (0 success, 1 failed checks, 2 configuration error, 3 numerical failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hermprod
