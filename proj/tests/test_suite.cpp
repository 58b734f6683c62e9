#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "nri/eig.hpp"
#include "nri/rng.hpp"
#include "nri/suite.hpp"
#include "test_util.hpp"

using namespace nri;
using namespace nri::testutil;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NRI_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gen_matrix ensembles have the advertised structure") {
    SUBCASE("nilpotent shift") {
        const ComplexMatrix a = gen_matrix({"nilpotent_shift", 3, 1, 7}, 0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(a(i, j) == (j == i + 1 ? cdouble{1.0} : cdouble{}));
    }
    SUBCASE("hermitian") {
        const ComplexMatrix a = gen_matrix({"hermitian", 4, 1, 7}, 0);
        CHECK(a.exactly_hermitian());
    }
    SUBCASE("normal commutes with its adjoint") {
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            const ComplexMatrix a = gen_matrix({"normal", 5, 1, seed}, 0);
            const ComplexMatrix comm = a * a.adjoint() - a.adjoint() * a;
            double m = 0.0;
            for (const auto& z : comm.data()) m = std::max(m, std::abs(z));
            CHECK(m <= 1e-12 * (1.0 + a.frobenius_norm() * a.frobenius_norm()));
        }
    }
    SUBCASE("rank one") {
        const ComplexMatrix a = gen_matrix({"rank_one", 4, 1, 7}, 0);
        const auto eigs = hermitian_eigenvalues(HermitianMatrix::closest(a.adjoint() * a));
        CHECK(eigs.back() == doctest::Approx(1.0).epsilon(1e-10));
        for (std::size_t k = 0; k + 1 < eigs.size(); ++k) CHECK(std::abs(eigs[k]) <= 1e-12);
    }
    SUBCASE("deterministic and order independent") {
        const Ensemble e{"ginibre", 3, 5, 42};
        const ComplexMatrix first = gen_matrix(e, 3);
        gen_matrix(e, 0);
        const ComplexMatrix again = gen_matrix(e, 3);
        CHECK(max_abs_diff(first, again) == 0.0);
        // Different index, seed, or kind changes the draw.
        CHECK(max_abs_diff(first, gen_matrix(e, 4)) > 1e-3);
        CHECK(max_abs_diff(first, gen_matrix({"ginibre", 3, 5, 43}, 3)) > 1e-3);
    }
    SUBCASE("index bounds") {
        CHECK_THROWS_AS(gen_matrix({"ginibre", 2, 2, 0}, 2), std::out_of_range);
        CHECK_THROWS_AS(gen_matrix({"ginibre", 2, 2, 0}, -1), std::out_of_range);
        CHECK_THROWS_AS(gen_matrix({"wat", 2, 2, 0}, 0), std::invalid_argument);
    }
}

TEST_CASE("config validation") {
    SuiteConfig cfg;
    cfg.ensembles = {{"ginibre", 2, 1, 0}};
    cfg.validate();

    auto expect_reject = [](SuiteConfig c) { CHECK_THROWS_AS(c.validate(), std::invalid_argument); };
    {
        SuiteConfig c = cfg;
        c.tol = 0.0;
        expect_reject(c);
    }
    {
        SuiteConfig c = cfg;
        c.nodes = 1;
        expect_reject(c);
    }
    {
        SuiteConfig c = cfg;
        c.format = "xml";
        expect_reject(c);
    }
    {
        SuiteConfig c = cfg;
        c.chains = {"bogus"};
        expect_reject(c);
    }
    {
        SuiteConfig c = cfg;
        c.r_values = {2.5};
        expect_reject(c);
    }
    {
        SuiteConfig c = cfg;
        c.t_values = {-0.1};
        expect_reject(c);
    }
    {
        SuiteConfig c = cfg;
        c.p_values = {5.0};
        expect_reject(c);
    }
    {
        SuiteConfig c = cfg;
        c.ensembles = {{"ginibre", 2, -1, 0}};
        expect_reject(c);
    }
}

TEST_CASE("config JSON round trip") {
    SuiteConfig cfg;
    cfg.ensembles = {{"normal", 3, 7, 11}, {"ginibre", 2, 4, 5}};
    cfg.chains = {"kittaneh", "bourin"};
    cfg.tol = 1e-7;
    cfg.nodes = 24;
    cfg.r_values = {1.0, 2.0};
    cfg.sup_restarts = 3;
    const SuiteConfig back = SuiteConfig::from_json(cfg.to_json());
    CHECK(back.ensembles.size() == 2);
    CHECK(back.ensembles[0].kind == "normal");
    CHECK(back.ensembles[0].dim == 3);
    CHECK(back.ensembles[0].count == 7);
    CHECK(back.ensembles[0].seed == 11);
    CHECK(back.chains == cfg.chains);
    CHECK(back.tol == cfg.tol);
    CHECK(back.nodes == cfg.nodes);
    CHECK(back.r_values == cfg.r_values);
    CHECK(back.sup_restarts == cfg.sup_restarts);
}

TEST_CASE("run_suite on an empty ensemble list") {
    SuiteConfig cfg;
    const SuiteReport report = run_suite(cfg);
    CHECK(report.total_assertions == 0);
    CHECK(report.violations == 0);
    CHECK(report.matrices.empty());
}

TEST_CASE("run_suite passes on small ensembles") {
    SuiteConfig cfg;
    cfg.ensembles = {{"ginibre", 3, 3, 1}, {"nilpotent_shift", 4, 1, 1}, {"normal", 2, 3, 1},
                     {"rank_one", 3, 2, 1}, {"hermitian", 3, 2, 1}};
    const SuiteReport report = run_suite(cfg);
    CHECK(report.violations == 0);
    CHECK(report.total_assertions > 0);
    CHECK(report.matrices.size() == 11);
    // Every chain family contributed assertions.
    for (const auto& id : kChainIds) {
        REQUIRE(report.per_chain.count(id) == 1);
        CHECK(report.per_chain.at(id).assertions > 0);
    }
}

TEST_CASE("run_suite honors a chain subset and keep_reports") {
    SuiteConfig cfg;
    cfg.ensembles = {{"ginibre", 2, 2, 9}};
    cfg.chains = {"kittaneh"};
    cfg.keep_reports = false;
    const SuiteReport report = run_suite(cfg);
    CHECK(report.matrices.empty());
    CHECK(report.per_chain.size() == 1);
    // kittaneh: 2 assertions per matrix.
    CHECK(report.total_assertions == 4);
}

TEST_CASE("suite JSON output is byte-identical across runs") {
    SuiteConfig cfg;
    cfg.ensembles = {{"ginibre", 3, 2, 5}, {"normal", 2, 2, 5}};
    const std::string first = run_suite(cfg).to_json().dump(2);
    const std::string second = run_suite(cfg).to_json().dump(2);
    CHECK(first == second);
    CHECK(first.find("runtime") == std::string::npos);
}

TEST_CASE("suite CSV has one row per assertion") {
    SuiteConfig cfg;
    cfg.ensembles = {{"ginibre", 2, 1, 3}};
    cfg.chains = {"kittaneh", "abs_sum"};
    const SuiteReport report = run_suite(cfg);
    const std::string csv = report.to_csv();
    const long rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == report.total_assertions + 1);  // header
    CHECK(csv.rfind("ensemble,dim,index,chain_id,params,", 0) == 0);
}

TEST_CASE("sharpness experiment finds equality on normal matrices") {
    const SuiteReport report = sharpness_experiment(5, 3, 1);
    CHECK(report.violations == 0);
    CHECK(report.total_assertions == 10);
    CHECK_THROWS_AS(sharpness_experiment(0, 3, 1), std::invalid_argument);
}

TEST_CASE("matrix file round trip is bit exact") {
    Rng rng(303);
    const ComplexMatrix a = random_ginibre(rng, 4);
    const std::string path = "roundtrip_matrix.json";
    write_matrix_file(path, a);
    const ComplexMatrix back = read_matrix_file(path);
    REQUIRE(back.dim() == a.dim());
    for (std::size_t k = 0; k < a.data().size(); ++k) CHECK(back.data()[k] == a.data()[k]);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_matrix_file("does_not_exist.json"), std::runtime_error);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("suite --ensemble nilpotent_shift --dim 3 --count 1 --chains kittaneh") == 0);
    CHECK(run_cli("suite --ensemble bogus --dim 2 --count 1") == 2);
    CHECK(run_cli("suite --config does_not_exist.json") == 3);
    CHECK(run_cli("radius does_not_exist.json") == 3);
    CHECK(run_cli("nonsense") == 2);
    CHECK(run_cli("") == 2);
}

TEST_CASE("cli writes the requested output file") {
    const std::string out = "cli_suite_out.json";
    CHECK(run_cli("suite --ensemble nilpotent_shift --dim 2 --count 1 --chains kittaneh --out " +
                  out) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("\"chain_id\": \"kittaneh\"") != std::string::npos);
    std::remove(out.c_str());

    const std::string csv_out = "cli_suite_out.csv";
    CHECK(run_cli("suite --ensemble nilpotent_shift --dim 2 --count 1 --chains kittaneh "
                  "--format csv --out " +
                  csv_out) == 0);
    CHECK(slurp(csv_out).rfind("ensemble,", 0) == 0);
    std::remove(csv_out.c_str());
}
