#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "nri/bounds.hpp"
#include "nri/matrix.hpp"

namespace nri {

/// Random matrix ensemble descriptor.  Generation is deterministic per
/// (seed, kind, dim, index), so matrices can be produced in any order.
struct Ensemble {
    std::string kind;  // ginibre | normal | hermitian | nilpotent_shift | rank_one
    std::size_t dim = 2;
    int count = 1;
    std::uint64_t seed = 0;
};

extern const std::vector<std::string> kEnsembleKinds;
extern const std::vector<std::string> kChainIds;

ComplexMatrix gen_matrix(const Ensemble& e, int index);

struct SuiteConfig {
    std::vector<Ensemble> ensembles;
    std::vector<std::string> chains;  // subset of kChainIds; empty means all
    double tol = 1e-8;
    int nodes = 32;
    std::vector<double> r_values{1.0, 1.5, 2.0};
    std::vector<double> t_values{0.0, 0.25, 0.5, 1.0};
    std::vector<double> p_values{2.0, 3.0, 4.0};
    int sup_restarts = 2;
    std::string output_path;    // empty: no file emission
    std::string format = "json";  // json | csv
    bool keep_reports = true;

    void validate() const;  // throws std::invalid_argument on bad config
    static SuiteConfig from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

struct MatrixReports {
    std::string kind;
    std::size_t dim = 0;
    int index = 0;
    std::vector<ChainReport> reports;
};

struct ChainSummary {
    long assertions = 0;
    long violations = 0;
    double max_violation = 0.0;  // magnitude of the worst negative gap beyond slack
    double min_gap = std::numeric_limits<double>::infinity();
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<MatrixReports> matrices;  // empty when keep_reports is off
    long total_assertions = 0;
    long violations = 0;
    double max_violation = 0.0;
    std::map<std::string, ChainSummary> per_chain;
    double runtime_seconds = 0.0;  // informational; never serialized

    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;
};

SuiteReport run_suite(const SuiteConfig& cfg);

/// Normal matrices make every term of the squared refinement chain collapse
/// to ||A||^2; this pins the 1/32 constant as unimprovable.
SuiteReport sharpness_experiment(int count, std::size_t dim, std::uint64_t seed);

}  // namespace nri
