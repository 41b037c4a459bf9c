#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hermprod/harness.hpp"

using namespace hermprod;

int main(int argc, char** argv) {
    CLI::App app{"Hermitised product ensembles: sampling, densities, kernels"};
    app.require_subcommand(1);

    std::string config_path, nu, route, kind, format, out, suite;
    int M = 0, n = 1, repeats = 1, points = 61, fc = 3, k = 4, threads = 0;
    std::uint64_t seed = 0;
    double gmin = -3.0, gmax = 3.0;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        s->add_option("--M", M, "number of Ginibre factors");
        s->add_option("--n", n, "base dimension");
        s->add_option("--nu", nu, "comma separated nu_1..nu_M");
        s->add_option("--seed", seed, "master seed");
        s->add_option("--repeats", repeats, "number of draws");
        s->add_option("--grid-min", gmin);
        s->add_option("--grid-max", gmax);
        s->add_option("--grid-points", points);
        s->add_option("--route", route, "kernel route");
        s->add_option("--kind", kind, "density kind: global, stieltjes, fc, mb");
        s->add_option("--format", format, "csv or json");
        s->add_option("--out", out, "output file (default stdout)");
        s->add_option("--fc", fc, "Fuss-Catalan parameter");
        s->add_option("--k", k, "largest moment index");
        s->add_option("--threads", threads, "worker threads (0: all cores)");
    };
    auto* sample = app.add_subcommand("sample", "eigenvalues of sampled products");
    auto* density = app.add_subcommand("density", "density curve on a grid");
    auto* kernel = app.add_subcommand("kernel", "correlation kernel on a grid");
    auto* moments = app.add_subcommand("moments", "Fuss-Catalan moments");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "biortho | kernels | hard-edge | global | theorem1 | weights")
        ->required();
    for (auto* s : {sample, density, kernel, moments, verify}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto* sub = app.get_subcommands().front();
    auto given = [&](const char* name) { return sub->count(name) > 0; };

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
            cfg = RunConfig::from_json(j);
        }
        cfg.command = parse_command(sub->get_name());
        if (given("--M")) cfg.params.M = M;
        if (given("--n")) cfg.params.n = n;
        if (given("--nu")) cfg.params.nu = parse_nu(nu);
        else if (given("--M")) cfg.params.nu.assign(cfg.params.M, 0);
        if (given("--seed")) cfg.seed = seed;
        if (given("--repeats")) cfg.repeats = repeats;
        if (given("--grid-min") || given("--grid-max") || given("--grid-points")) {
            Grid g = cfg.grid.value_or(Grid{});
            if (given("--grid-min")) g.min = gmin;
            if (given("--grid-max")) g.max = gmax;
            if (given("--grid-points")) g.points = points;
            cfg.grid = g;
        }
        if (given("--route")) cfg.route = route;
        if (given("--kind")) cfg.kind = kind;
        if (given("--format")) cfg.output_format = parse_format(format);
        if (given("--out")) cfg.output_path = out;
        if (given("--fc")) cfg.fc = fc;
        if (given("--k")) cfg.k = k;
        if (given("--threads")) cfg.threads = threads;
        if (cfg.command == Command::verify) cfg.suite = suite;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return run(cfg, std::cout, std::cerr);
}
