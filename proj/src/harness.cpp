#include "hermprod/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "hermprod/biortho_kernel.hpp"
#include "hermprod/ensemble_density.hpp"
#include "hermprod/exact.hpp"
#include "hermprod/global_density.hpp"
#include "hermprod/hard_edge.hpp"
#include "hermprod/quadrature.hpp"
#include "hermprod/sampling.hpp"
#include "hermprod/special_functions.hpp"

namespace hermprod {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(double a, double b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

}  // namespace

std::vector<double> Grid::values() const {
    if (points < 1) throw ConfigError("grid needs at least one point");
    if (points == 1) return {min};
    if (!(max > min)) throw ConfigError("grid max must exceed min");
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) v[i] = min + (max - min) * i / (points - 1);
    return v;
}

Command parse_command(const std::string& s) {
    if (s == "sample") return Command::sample;
    if (s == "density") return Command::density;
    if (s == "kernel") return Command::kernel;
    if (s == "moments") return Command::moments;
    if (s == "verify") return Command::verify;
    throw ConfigError("unknown command '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + s + "'");
}

std::vector<int> parse_nu(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad nu entry '" + item + "'");
        }
        if (used != item.size()) throw ConfigError("bad nu entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

namespace {

const char* command_name(Command c) {
    switch (c) {
        case Command::sample: return "sample";
        case Command::density: return "density";
        case Command::kernel: return "kernel";
        case Command::moments: return "moments";
        case Command::verify: return "verify";
    }
    return "?";
}

bool stochastic(const RunConfig& c) {
    if (c.command == Command::sample) return true;
    if (c.command == Command::verify && c.suite == "theorem1") return true;
    return false;
}

}  // namespace

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (repeats < 1) throw ConfigError("repeats must be positive");
    if (stochastic(*this) && !seed) throw ConfigError("a seed is required for this command");
    if (grid) grid->values();
    if (command == Command::verify) {
        static const std::vector<std::string> suites{"biortho", "kernels",  "hard-edge",
                                                     "global",  "theorem1", "weights"};
        if (std::find(suites.begin(), suites.end(), suite) == suites.end())
            throw ConfigError("unknown verify suite '" + suite + "'");
    }
    if (command == Command::moments && (fc < 1 || k < 0))
        throw ConfigError("moments need fc >= 1 and k >= 0");
    if (threads < 0) throw ConfigError("threads must be non-negative");
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    try {
        if (j.contains("command")) c.command = parse_command(j.at("command").get<std::string>());
        if (j.contains("params")) {
            const auto& p = j.at("params");
            c.params.M = p.value("M", 0);
            c.params.n = p.value("n", 1);
            c.params.nu = p.value("nu", std::vector<int>{});
            if (c.params.nu.empty()) c.params.nu.assign(c.params.M, 0);
        }
        if (j.contains("seed") && !j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
        c.repeats = j.value("repeats", c.repeats);
        if (j.contains("grid") && !j.at("grid").is_null()) {
            const auto& g = j.at("grid");
            c.grid = Grid{g.value("min", -3.0), g.value("max", 3.0), g.value("points", 61)};
        }
        c.output_path = j.value("output_path", c.output_path);
        if (j.contains("output_format"))
            c.output_format = parse_format(j.at("output_format").get<std::string>());
        c.suite = j.value("suite", c.suite);
        c.route = j.value("route", c.route);
        c.kind = j.value("kind", c.kind);
        c.fc = j.value("fc", c.fc);
        c.k = j.value("k", c.k);
        c.threads = j.value("threads", c.threads);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

json RunConfig::to_json() const {
    json j;
    j["command"] = command_name(command);
    j["params"] = {{"M", params.M}, {"n", params.n}, {"nu", params.nu}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["repeats"] = repeats;
    if (grid)
        j["grid"] = {{"min", grid->min}, {"max", grid->max}, {"points", grid->points}};
    j["output_path"] = output_path;
    j["output_format"] = output_format == OutputFormat::csv ? "csv" : "json";
    j["suite"] = suite;
    j["route"] = route;
    j["kind"] = kind;
    j["fc"] = fc;
    j["k"] = k;
    return j;
}

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void SuiteReport::add(std::string name, double measured, double tolerance) {
    checks.push_back({std::move(name), measured, tolerance, measured <= tolerance});
}

void SuiteReport::add_at_least(std::string name, double measured, double tolerance) {
    checks.push_back({std::move(name), measured, tolerance, measured >= tolerance});
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
    if (sorted.empty()) throw DomainError("KS distance needs samples");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = cdf(sorted[i]);
        // left limit, so that atoms of the reference law are handled
        double f_left = cdf(std::nextafter(sorted[i], -std::numeric_limits<double>::infinity()));
        d = std::max({d, std::abs((i + 1) / n - f), std::abs(f_left - i / n)});
    }
    return std::min(d, 1.0);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("KS distance needs samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

std::vector<SpectrumSample> sample_spectra(const EnsembleParams& params, std::uint64_t seed,
                                           int repeats, int threads) {
    params.validate();
    std::function<SpectrumSample(int)> f = [&](int i) {
        return sample_product_spectrum(params, derive_seed(seed, i));
    };
    return parallel_map(repeats, f, threads);
}

EvalResult theorem1_normalisation(const SignedDiagonal& a, int big_N) {
    const int n = a.size();
    if (n == 1) {
        auto f = [&](double t) {
            double x = a.n0 == 1 ? -t : t;
            return theorem1_pdf({x}, a, big_N);
        };
        return integrate_half_line(f, std::abs(a.entries[0]));
    }
    if (n != 2) throw DomainError("normalisation check implemented for n <= 2");
    const double s1 = std::abs(a.entries[0]);
    const double s2 = std::abs(a.entries[1]);
    if (a.n0 == 1) {
        auto outer = [&](double t) {
            auto inner = [&](double u) { return theorem1_pdf({-t, u}, a, big_N); };
            return integrate_half_line(inner, s2, 1e-14, 1e-11).value;
        };
        return integrate_half_line(outer, s1, 1e-14, 1e-10);
    }
    // same-sign pairs: integrate over 0 < t1 < t2 in absolute values
    const double sgn = a.n0 == 0 ? 1.0 : -1.0;
    auto outer = [&](double t2) {
        auto inner = [&](double t1) {
            double x1 = sgn * t1, x2 = sgn * t2;
            if (sgn < 0.0) std::swap(x1, x2);
            return theorem1_pdf({x1, x2}, a, big_N);
        };
        return integrate(inner, 0.0, t2, 1e-11).value;
    };
    return integrate_half_line(outer, std::max(s1, s2), 1e-14, 1e-10);
}

HistogramCheck theorem1_histogram(const SignedDiagonal& a, int big_N, int draws,
                                  std::uint64_t seed, int bins, int threads) {
    if (a.size() != 2 || a.n0 != 1) throw DomainError("histogram check needs n = 2 with mixed signs");
    const double lo1 = 3.0 * a.entries[0];
    const double hi2 = 3.0 * a.entries[1];
    const double w1 = -lo1 / bins;
    const double w2 = hi2 / bins;
    std::function<SpectrumSample(int)> f = [&](int i) {
        return map_polynomial_ensemble(a, big_N, derive_seed(seed, i));
    };
    auto samples = parallel_map(draws, f, threads);
    std::vector<long> counts(bins * bins, 0);
    long signs = 0;
    for (const auto& s : samples) {
        const auto& e = s.eigenvalues;
        if (e.size() != 2 || !(e[0] < 0.0) || !(e[1] > 0.0)) continue;
        ++signs;
        int i = static_cast<int>(std::floor((e[0] - lo1) / w1));
        int j = static_cast<int>(std::floor(e[1] / w2));
        if (i >= 0 && i < bins && j >= 0 && j < bins) ++counts[i * bins + j];
    }
    using GL = boost::math::quadrature::gauss<double, 10>;
    const auto& ab = GL::abscissa();
    const auto& wt = GL::weights();
    std::vector<std::pair<double, double>> rule;
    for (std::size_t k = 0; k < ab.size(); ++k) {
        rule.emplace_back(ab[k], wt[k]);
        if (ab[k] != 0.0) rule.emplace_back(-ab[k], wt[k]);
    }
    HistogramCheck out;
    out.draws = draws;
    out.cells = bins * bins;
    out.sign_fraction = double(signs) / draws;
    for (int i = 0; i < bins; ++i) {
        for (int j = 0; j < bins; ++j) {
            double c1 = lo1 + (i + 0.5) * w1;
            double c2 = (j + 0.5) * w2;
            double p = 0.0;
            for (auto [u, wu] : rule)
                for (auto [v, wv] : rule)
                    p += wu * wv * theorem1_pdf({c1 + 0.5 * w1 * u, c2 + 0.5 * w2 * v}, a, big_N);
            p *= 0.25 * w1 * w2;
            out.covered_mass += p;
            double expected = draws * p;
            double se = std::sqrt(draws * p * (1.0 - p));
            double z = se > 0.0 ? std::abs(counts[i * bins + j] - expected) / se
                                : (counts[i * bins + j] > 0 ? std::numeric_limits<double>::infinity() : 0.0);
            out.max_z = std::max(out.max_z, z);
            if (z > 3.0) ++out.failures;
        }
    }
    out.normalisation = theorem1_normalisation(a, big_N).value;
    return out;
}

double sampler_ks(const SignedDiagonal& a, int big_N, int draws, std::uint64_t seed, int threads) {
    const std::uint64_t chain_seed = derive_seed(seed, 1);
    const std::uint64_t direct_seed = derive_seed(seed, 2);
    std::function<std::vector<double>(int)> chain = [&](int i) {
        return rank_one_chain(a, big_N, derive_seed(chain_seed, i)).back().eigenvalues;
    };
    std::function<std::vector<double>(int)> direct = [&](int i) {
        return map_polynomial_ensemble(a, big_N, derive_seed(direct_seed, i)).eigenvalues;
    };
    auto c = parallel_map(draws, chain, threads);
    auto d = parallel_map(draws, direct, threads);
    double worst = 0.0;
    for (int r = 0; r < a.size(); ++r) {
        std::vector<double> cr, dr;
        for (const auto& v : c)
            if (static_cast<int>(v.size()) == a.size()) cr.push_back(v[r]);
        for (const auto& v : d)
            if (static_cast<int>(v.size()) == a.size()) dr.push_back(v[r]);
        worst = std::max(worst, ks_two_sample(cr, dr));
    }
    return worst;
}

InterlacingCount interlacing_count(const SignedDiagonal& a, int big_N, int draws,
                                   std::uint64_t seed, int threads) {
    std::function<InterlacingCount(int)> f = [&](int i) {
        auto chain = rank_one_chain(a, big_N, derive_seed(seed, i));
        InterlacingCount c;
        std::vector<double> prev;
        for (int p = 0; p < a.size(); ++p) {
            ++c.steps;
            if (strictly_interlaced(prev, chain[p].eigenvalues, a.entries[p])) ++c.interlaced;
            prev = chain[p].eigenvalues;
        }
        return c;
    };
    InterlacingCount total;
    for (const auto& c : parallel_map(draws, f, threads)) {
        total.steps += c.steps;
        total.interlaced += c.interlaced;
    }
    return total;
}

double global_ks(const EnsembleParams& params, int repeats, std::uint64_t seed, int threads) {
    auto spectra = sample_spectra(params, seed, repeats, threads);
    std::vector<double> pooled;
    for (const auto& s : spectra) {
        auto v = global_scaling_map(params, s.eigenvalues);
        pooled.insert(pooled.end(), v.begin(), v.end());
    }
    std::sort(pooled.begin(), pooled.end());
    GlobalCdf F(params.M);
    return ks_distance(pooled, [&](double x) { return F(x); });
}

DensityCurve global_density_curve(const EnsembleParams& params, const std::vector<double>& x,
                                  std::optional<std::uint64_t> seed, int repeats, int threads) {
    DensityCurve c;
    c.kind = "global";
    c.scaled = true;
    c.x = x;
    for (double v : x)
        c.analytic.push_back(v == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                      : global_density_parametric(params.M, v));
    if (!seed) return c;
    auto spectra = sample_spectra(params, *seed, repeats, threads);
    std::vector<double> pooled;
    for (const auto& s : spectra) {
        auto v = global_scaling_map(params, s.eigenvalues);
        pooled.insert(pooled.end(), v.begin(), v.end());
    }
    const double w = x.size() > 1 ? x[1] - x[0] : 1.0;
    const double total = static_cast<double>(pooled.size());
    for (double v : x) {
        double lo = v - 0.5 * w, hi = v + 0.5 * w;
        double k = static_cast<double>(
            std::count_if(pooled.begin(), pooled.end(), [&](double p) { return p >= lo && p < hi; }));
        double p = k / total;
        c.empirical.push_back(p / w);
        c.stderr_.push_back(std::sqrt(p * (1.0 - p) / total) / w);
    }
    return c;
}

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::pair<double, double>> kMixedPoints{
    {0.5, -1.2}, {-0.3, 0.7}, {1.1, 0.4}, {-0.8, -0.6}, {0.2, 1.5}};

void suite_biortho(const RunConfig& c, SuiteReport& r) {
    const auto& p = c.params;
    auto I = biorthogonality_matrix(p, 5);
    double worst = 0.0;
    for (int k = 0; k <= 5; ++k) {
        double hk = h_norm_value(k, p);
        for (int l = 0; l <= 5; ++l)
            worst = std::max(worst, std::abs(I.value[k][l] - (k == l ? hk : 0.0)) / hk);
    }
    r.add("biorthogonality k,l<=5 (relative to h_k)", worst, 1e-7);
    int mismatches = 0;
    for (int n = 1; n <= 6; ++n) {
        auto num = bimoment_determinant(n, p);
        auto den = bimoment_determinant(n - 1, p);
        SqrtPiValue ratio{num.coef / den.coef, num.half_pi_power - den.half_pi_power};
        if (!(ratio == h_norm(n, p))) ++mismatches;
        if (!(num == bimoment_determinant_closed(n, p))) ++mismatches;
    }
    r.add("h_n = D_n/D_{n-1} and closed-form D_n, n<=6 (mismatches)", mismatches, 0.0);
    int ode_fail = 0;
    for (int N = 1; N <= 4; ++N) ode_fail += ode_check(N, p) ? 0 : 1;
    r.add("characteristic ODE for p_2N, N<=4 (failures)", ode_fail, 0.0);
}

void suite_kernels(const RunConfig& c, SuiteReport& r) {
    const auto& p = c.params;
    const int n = std::max(2, p.n % 2 == 0 ? p.n : p.n + 1);
    double worst_dc = 0.0, worst_abc = 0.0;
    for (auto [x, y] : kMixedPoints) {
        auto s = kernel_finite(n, p, x, y, KernelRoute::sum);
        auto d = kernel_finite(n, p, x, y, KernelRoute::double_contour);
        auto a = kernel_finite(n, p, x, y, KernelRoute::abc_oracle);
        worst_dc = std::max(worst_dc, rel_diff(s.total, d.total));
        worst_abc = std::max(worst_abc, rel_diff(s.total, a.total));
    }
    r.add("sum vs double contour, n=" + std::to_string(n), worst_dc, 1e-6);
    r.add("sum vs ABC oracle, n=" + std::to_string(n), worst_abc, 1e-6);
    r.add("|trace - n|", std::abs(kernel_trace(n, p).value - n), 1e-5);
    if (p.M == 0) {
        double worst = 0.0;
        for (auto [x, y] : kMixedPoints)
            worst = std::max(worst, std::abs(kernel_finite(n, p, x, y, KernelRoute::sum).total -
                                             gue_kernel(n, x, y)));
        r.add("M=0 kernel vs classical GUE kernel", worst, 1e-10);
    }
}

void suite_hard_edge(const RunConfig& c, SuiteReport& r) {
    const auto& p = c.params;
    double worst = 0.0;
    for (double x : {0.4, -0.9, 1.3}) {
        for (double y : {0.6, -1.1, 0.8}) {
            auto a = hard_kernel(x, y, p, HardRepresentation::double_contour);
            auto b = hard_kernel(x, y, p, HardRepresentation::g_product);
            auto u = hard_kernel(x, y, p, HardRepresentation::unified);
            worst = std::max({worst, rel_diff(a.total, b.total), rel_diff(a.total, u.total),
                              rel_diff(b.total, u.total)});
        }
    }
    r.add("representations pairwise, 3x3 grid", worst, 1e-6);
    if (p.M == 0) {
        double sw = 0.0;
        for (auto [x, y] : std::vector<std::pair<double, double>>{{0.3, -0.4}, {1.0, 0.5}, {-0.7, 1.3}})
            sw = std::max(sw, std::abs(hard_kernel(x, y, p, HardRepresentation::double_contour).total -
                                       sine_kernel(x, y)));
        r.add("M=0 sine kernel", sw, 1e-8);
        double dw = 0.0;
        for (double x : {0.1, 1.0, 3.0})
            dw = std::max(dw, std::abs(hard_kernel(x, x, p, HardRepresentation::double_contour).total -
                                       2.0 / kPi));
        r.add("M=0 diagonal 2/pi", dw, 1e-8);
    }
}

void suite_global(const RunConfig& c, SuiteReport& r) {
    const int M = c.params.M;
    double worst = 0.0;
    const double edge = support_edge(M);
    for (double f : {-0.9, -0.6, -0.3, -0.1, 0.1, 0.3, 0.6, 0.9}) {
        double x = f * edge;
        worst = std::max(worst, std::abs(global_density_parametric(M, x) - stieltjes_density(M, x)));
    }
    r.add("parametric vs Stieltjes", worst, 1e-6);
    r.add("|normalisation - 1|", std::abs(global_moment(M, 0).value - 1.0), 1e-6);
    double mw = 0.0;
    for (int k = 1; k <= 3; ++k)
        mw = std::max(mw, std::abs(global_moment(M, 2 * k).value -
                                   fuss_catalan_moment(2 * M + 1, k).get_d()));
    r.add("even moments vs Fuss-Catalan, k<=3", mw, 1e-6);
    if (M > 0) {
        double ratio = global_density_parametric(M, 1e-4) / origin_law(M, 1e-4);
        r.add("origin blow-up law at 1e-4 (relative)", std::abs(ratio - 1.0), 0.01);
    }
    r.add("outside support", stieltjes_density(M, 1.05 * edge), 1e-8);
    if (c.seed) {
        const int repeats = c.repeats > 1 ? c.repeats : 200;
        r.add("Monte Carlo KS, n=" + std::to_string(c.params.n),
              global_ks(c.params, repeats, *c.seed, c.threads), M == 0 ? 0.03 : 0.05);
    }
}

void suite_theorem1(const RunConfig& c, SuiteReport& r) {
    auto a = SignedDiagonal::from({-1.0, 2.0});
    const int draws = c.repeats > 1 ? c.repeats : 100000;
    auto h = theorem1_histogram(a, 2, draws, *c.seed, 20, c.threads);
    r.add("cells outside 3 standard errors (of " + std::to_string(h.cells) + ")", h.failures, 0.0);
    r.add_at_least("sign pattern preserved (fraction)", h.sign_fraction, 1.0);
    r.add("|normalisation - 1|", std::abs(h.normalisation - 1.0), 1e-4);
}

void suite_weights(const RunConfig& c, SuiteReport& r) {
    const auto& p = c.params;
    double worst = 0.0;
    for (int j = 0; j <= 3; ++j) {
        for (double x : {-5.0, -1.0, -0.1, 0.1, 1.0, 5.0}) {
            double mb = weight_g({j, p, WeightBackend::mellin_barnes}, x).value;
            double rq = weight_g({j, p, WeightBackend::recursive_quadrature}, x).value;
            double mg = weight_g({j, p, WeightBackend::meijer_g}, x).value;
            worst = std::max({worst, rel_diff(mb, rq), rel_diff(mb, mg), rel_diff(rq, mg)});
        }
    }
    r.add("backends pairwise, j<=3, x in {+-0.1, +-1, +-5}", worst, 1e-7);
    double aw = 0.0;
    for (int q = 2; q <= 4; ++q) {
        std::vector<double> b;
        for (int k = 0; k < q; ++k) b.push_back(double(k) / q);
        for (double x : {0.5, 2.0, 10.0}) {
            double exact = std::pow(2.0 * kPi, 0.5 * (q - 1)) / std::sqrt(double(q)) *
                           std::exp(-q * std::pow(x, 1.0 / q));
            aw = std::max(aw, rel_diff(meijer_g_m0(q, b, x).value, exact));
        }
    }
    r.add("G^{q,0}_{0,q}(x|0,1/q,..) closed form, q=2..4", aw, 1e-8);
}

}  // namespace

SuiteReport run_suite(const RunConfig& config) {
    config.validate();
    SuiteReport r;
    r.suite = config.suite;
    auto t0 = Clock::now();
    if (config.suite == "biortho") suite_biortho(config, r);
    else if (config.suite == "kernels") suite_kernels(config, r);
    else if (config.suite == "hard-edge") suite_hard_edge(config, r);
    else if (config.suite == "global") suite_global(config, r);
    else if (config.suite == "theorem1") suite_theorem1(config, r);
    else if (config.suite == "weights") suite_weights(config, r);
    r.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

void write_report(const SuiteReport& r, OutputFormat f, std::ostream& out) {
    if (f == OutputFormat::json) {
        json j;
        j["suite"] = r.suite;
        j["pass"] = r.pass();
        j["wall_time"] = r.wall_time;
        j["checks"] = json::array();
        for (const auto& c : r.checks)
            j["checks"].push_back(
                {{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"pass", c.pass}});
        out << j.dump(2) << "\n";
        return;
    }
    out << "check,measured,tolerance,pass\n";
    for (const auto& c : r.checks)
        out << '"' << c.name << "\"," << fmt(c.measured) << ',' << fmt(c.tolerance) << ','
            << (c.pass ? "true" : "false") << "\n";
}

void write_spectra(const std::vector<SpectrumSample>& s, OutputFormat f, std::ostream& out) {
    if (f == OutputFormat::json) {
        json j = json::array();
        for (std::size_t i = 0; i < s.size(); ++i)
            j.push_back({{"sample_index", i},
                         {"seed", s[i].seed},
                         {"sampler_id", s[i].sampler_id},
                         {"zero_multiplicity", s[i].zero_multiplicity},
                         {"eigenvalues", s[i].eigenvalues}});
        out << j.dump() << "\n";
        return;
    }
    out << "sample_index,eigenvalue_rank,value\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t r = 0; r < s[i].eigenvalues.size(); ++r)
            out << i << ',' << r << ',' << fmt(s[i].eigenvalues[r]) << "\n";
}

void write_curve(const DensityCurve& c, OutputFormat f, std::ostream& out) {
    auto at = [](const std::vector<double>& v, std::size_t i) {
        return i < v.size() ? v[i] : std::numeric_limits<double>::quiet_NaN();
    };
    if (f == OutputFormat::json) {
        json j;
        j["kind"] = c.kind;
        j["scaled"] = c.scaled;
        j["x"] = c.x;
        j["density_analytic"] = c.analytic;
        j["density_empirical"] = c.empirical;
        j["stderr"] = c.stderr_;
        out << j.dump() << "\n";
        return;
    }
    out << "x,density_analytic,density_empirical,stderr\n";
    for (std::size_t i = 0; i < c.x.size(); ++i)
        out << fmt(c.x[i]) << ',' << fmt(at(c.analytic, i)) << ',' << fmt(at(c.empirical, i)) << ','
            << fmt(at(c.stderr_, i)) << "\n";
}

namespace {

DensityCurve density_command(const RunConfig& c) {
    const auto& p = c.params;
    const double edge = support_edge(p.M);
    if (c.kind == "global") {
        Grid g = c.grid.value_or(Grid{-1.05 * edge, 1.05 * edge, 84});
        return global_density_curve(p, g.values(), c.seed, c.repeats, c.threads);
    }
    DensityCurve out;
    out.kind = c.kind;
    if (c.kind == "stieltjes") {
        out.scaled = true;
        out.x = c.grid.value_or(Grid{-1.05 * edge, 1.05 * edge, 84}).values();
        for (double x : out.x)
            out.analytic.push_back(x == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                            : stieltjes_density(p.M, x));
    } else if (c.kind == "fc") {
        const double e = std::pow(c.fc + 1.0, c.fc + 1.0) / std::pow(double(c.fc), c.fc);
        out.x = c.grid.value_or(Grid{e / 200.0, 1.05 * e, 100}).values();
        for (double x : out.x)
            out.analytic.push_back(x <= 0.0 ? 0.0 : fuss_catalan_density(c.fc, x));
    } else if (c.kind == "mb") {
        out.x = c.grid.value_or(Grid{-3.0, 3.0, 61}).values();
        const double alpha = mb_alpha(p);
        for (double x : out.x) out.analytic.push_back(mb_density_unnormalized(alpha, p.M, {x}));
    } else {
        throw ConfigError("unknown density kind '" + c.kind + "'");
    }
    return out;
}

void kernel_command(const RunConfig& c, std::ostream& out) {
    const auto& p = c.params;
    const std::string route = c.route.empty() ? "sum" : c.route;
    auto xs = c.grid.value_or(Grid{-1.0, 1.0, 9}).values();
    std::function<KernelValue(double, double)> eval;
    if (route == "sum" || route == "double-contour" || route == "abc-oracle") {
        if (p.n < 2 || p.n % 2 != 0) throw ConfigError("finite kernel needs even n >= 2");
        KernelRoute kr = route == "sum" ? KernelRoute::sum
                         : route == "double-contour" ? KernelRoute::double_contour
                                                     : KernelRoute::abc_oracle;
        eval = [&, kr](double x, double y) { return kernel_finite(p.n, p, x, y, kr); };
    } else if (route == "hard-g-product" || route == "hard-double-contour" || route == "hard-unified") {
        HardRepresentation hr = route == "hard-g-product" ? HardRepresentation::g_product
                                : route == "hard-double-contour" ? HardRepresentation::double_contour
                                                                 : HardRepresentation::unified;
        eval = [&, hr](double x, double y) { return hard_kernel(x, y, p, hr); };
    } else {
        throw ConfigError("unknown kernel route '" + route + "'");
    }
    std::vector<std::pair<double, double>> pts;
    for (double x : xs)
        for (double y : xs)
            if (!(route.rfind("hard", 0) == 0 && (x == 0.0 || y == 0.0))) pts.emplace_back(x, y);
    std::function<KernelValue(int)> f = [&](int i) { return eval(pts[i].first, pts[i].second); };
    auto vals = parallel_map(static_cast<int>(pts.size()), f, c.threads);
    if (c.output_format == OutputFormat::json) {
        json j = json::array();
        for (const auto& v : vals)
            j.push_back({{"x", v.x}, {"y", v.y}, {"even", v.even}, {"odd", v.odd}, {"total", v.total}});
        out << j.dump() << "\n";
        return;
    }
    out << "x,y,even,odd,total\n";
    for (const auto& v : vals)
        out << fmt(v.x) << ',' << fmt(v.y) << ',' << fmt(v.even) << ',' << fmt(v.odd) << ','
            << fmt(v.total) << "\n";
}

void moments_command(const RunConfig& c, std::ostream& out) {
    if (c.output_format == OutputFormat::json) {
        json j;
        j["fc"] = c.fc;
        j["moments"] = json::array();
        for (int k = 0; k <= c.k; ++k) j["moments"].push_back(fuss_catalan_moment(c.fc, k).get_str());
        out << j.dump() << "\n";
        return;
    }
    out << "k,value\n";
    for (int k = 0; k <= c.k; ++k) out << k << ',' << fuss_catalan_moment(c.fc, k).get_str() << "\n";
}

int dispatch(const RunConfig& c, std::ostream& out) {
    switch (c.command) {
        case Command::sample:
            write_spectra(sample_spectra(c.params, *c.seed, c.repeats, c.threads), c.output_format, out);
            return 0;
        case Command::density:
            write_curve(density_command(c), c.output_format, out);
            return 0;
        case Command::kernel:
            kernel_command(c, out);
            return 0;
        case Command::moments:
            moments_command(c, out);
            return 0;
        case Command::verify: {
            auto r = run_suite(c);
            write_report(r, c.output_format, out);
            return r.pass() ? 0 : 1;
        }
    }
    return 2;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        if (config.output_path.empty()) return dispatch(config, out);
        std::ofstream file(config.output_path);
        if (!file) throw ConfigError("cannot open " + config.output_path);
        return dispatch(config, file);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace hermprod
