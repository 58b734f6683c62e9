#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nri/bounds.hpp"
#include "nri/suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void emit_report(const nri::SuiteReport& report, const std::string& path,
                 const std::string& format) {
    const std::string body =
        format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << body;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void print_summary(const nri::SuiteReport& report) {
    std::cerr << "assertions: " << report.total_assertions
              << "  violations: " << report.violations
              << "  max violation: " << report.max_violation
              << "  runtime: " << report.runtime_seconds << "s\n";
}

int run_suite_cmd(nri::SuiteConfig cfg) {
    const nri::SuiteReport report = nri::run_suite(cfg);
    emit_report(report, cfg.output_path, cfg.format);
    print_summary(report);
    return report.violations == 0 ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical radius bound verifier"};
    app.require_subcommand(1);

    // suite
    auto* suite = app.add_subcommand("suite", "evaluate bound chains over random ensembles");
    std::string config_path;
    std::vector<std::string> ensemble_kinds, chains;
    std::vector<std::size_t> dims;
    int count = -1;
    std::uint64_t seed = 0;
    bool seed_set = false, count_set = false;
    double tol = -1.0;
    int nodes = -1;
    std::vector<double> r_values, t_values, p_values;
    std::string out_path, format;
    suite->add_option("--config", config_path, "JSON config file (flags override)");
    suite->add_option("--ensemble", ensemble_kinds, "ensemble kinds");
    suite->add_option("--dim", dims, "matrix dimensions");
    suite->add_option("--count", count, "matrices per (ensemble, dim)")
        ->each([&](const std::string&) { count_set = true; });
    suite->add_option("--seed", seed, "base seed")
        ->each([&](const std::string&) { seed_set = true; });
    suite->add_option("--chains", chains, "chain ids (default: all)");
    suite->add_option("--tol", tol, "relative assertion tolerance");
    suite->add_option("--nodes", nodes, "Gauss-Legendre nodes");
    suite->add_option("--r", r_values, "power exponents in [1,2]");
    suite->add_option("--t", t_values, "weights in [0,1]");
    suite->add_option("--p", p_values, "powers in [2,4]");
    suite->add_option("--out", out_path, "output file (default: stdout)");
    suite->add_option("--format", format, "json|csv");

    // radius
    auto* radius = app.add_subcommand("radius", "numerical radius of a matrix JSON file");
    std::string matrix_path;
    radius->add_option("file", matrix_path, "matrix JSON file")->required();

    // sharpness
    auto* sharp = app.add_subcommand("sharpness", "1/32-constant sharpness on normal matrices");
    int sharp_count = 100;
    std::size_t sharp_dim = 4;
    std::uint64_t sharp_seed = 0;
    sharp->add_option("--count", sharp_count, "number of normal matrices");
    sharp->add_option("--dim", sharp_dim, "matrix dimension");
    sharp->add_option("--seed", sharp_seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (suite->parsed()) {
            nri::SuiteConfig cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot open config: " + config_path);
                nlohmann::json j;
                try {
                    in >> j;
                } catch (const nlohmann::json::exception& e) {
                    throw std::invalid_argument("config parse error: " + std::string(e.what()));
                }
                cfg = nri::SuiteConfig::from_json(j);
            }
            if (cfg.ensembles.empty() && ensemble_kinds.empty())
                ensemble_kinds = nri::kEnsembleKinds;
            if (!ensemble_kinds.empty()) {
                if (dims.empty()) dims = {2, 3, 5, 8};
                cfg.ensembles.clear();
                for (const auto& kind : ensemble_kinds)
                    for (std::size_t d : dims)
                        cfg.ensembles.push_back({kind, d, count_set ? count : 50,
                                                 seed_set ? seed : 0});
            } else if (count_set || seed_set || !dims.empty()) {
                for (auto& e : cfg.ensembles) {
                    if (count_set) e.count = count;
                    if (seed_set) e.seed = seed;
                }
            }
            if (!chains.empty()) cfg.chains = chains;
            if (tol > 0.0) cfg.tol = tol;
            if (nodes > 0) cfg.nodes = nodes;
            if (!r_values.empty()) cfg.r_values = r_values;
            if (!t_values.empty()) cfg.t_values = t_values;
            if (!p_values.empty()) cfg.p_values = p_values;
            if (!out_path.empty()) cfg.output_path = out_path;
            if (!format.empty()) cfg.format = format;
            return run_suite_cmd(std::move(cfg));
        }
        if (radius->parsed()) {
            const nri::ComplexMatrix a = nri::read_matrix_file(matrix_path);
            nri::OperatorCache cache(a);
            const auto& res = cache.radius();
            std::cout.precision(17);
            std::cout << "w(A)        = " << res.value << "\n"
                      << "norm(A)     = " << cache.norm() << "\n"
                      << "argmax theta= " << res.argmax_theta << "\n";
            return kExitOk;
        }
        if (sharp->parsed()) {
            const nri::SuiteReport report =
                nri::sharpness_experiment(sharp_count, sharp_dim, sharp_seed);
            emit_report(report, "", "json");
            print_summary(report);
            return report.violations == 0 ? kExitOk : kExitViolations;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
