#include "nri/suite.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "nri/rng.hpp"

namespace nri {

const std::vector<std::string> kEnsembleKinds = {"ginibre", "normal", "hermitian",
                                                 "nilpotent_shift", "rank_one"};

const std::vector<std::string> kChainIds = {
    "kittaneh",        "abs_sum",        "prop_mean",           "power_mean",
    "convex_sup",      "bourin",         "cartesian_lower",     "cartesian_power",
    "upper_fourpoint", "fourpoint_vs_integral", "squared_refinement",
    "additive_refinement", "weighted_refined"};

namespace {

int kind_id(const std::string& kind) {
    const auto it = std::find(kEnsembleKinds.begin(), kEnsembleKinds.end(), kind);
    if (it == kEnsembleKinds.end())
        throw std::invalid_argument("unknown ensemble kind: " + kind);
    return static_cast<int>(it - kEnsembleKinds.begin());
}

std::uint64_t matrix_seed(const Ensemble& e, int index) {
    std::uint64_t s = Rng::mix(e.seed, 0x656E73ULL);
    s = Rng::mix(s, static_cast<std::uint64_t>(kind_id(e.kind)));
    s = Rng::mix(s, static_cast<std::uint64_t>(e.dim));
    return Rng::mix(s, static_cast<std::uint64_t>(index));
}

ComplexMatrix ginibre(Rng& rng, std::size_t n) {
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_complex_gaussian();
    return g;
}

// Haar unitary: modified Gram-Schmidt QR of a Ginibre matrix.  MGS yields R
// with positive diagonal, which is exactly the normalization Haar needs.
ComplexMatrix haar_unitary(Rng& rng, std::size_t n) {
    ComplexMatrix g = ginibre(rng, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cdouble proj{};
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(g(i, j));
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < n; ++i) g(i, j) *= inv;
    }
    return g;
}

}  // namespace

ComplexMatrix gen_matrix(const Ensemble& e, int index) {
    if (index < 0 || index >= e.count)
        throw std::out_of_range("gen_matrix: index outside ensemble count");
    const std::size_t n = e.dim;
    Rng rng(matrix_seed(e, index));
    const int kid = kind_id(e.kind);
    if (e.kind == "ginibre") return ginibre(rng, n);
    if (e.kind == "normal") {
        std::vector<cdouble> eigs(n);
        for (auto& z : eigs) z = rng.next_complex_gaussian();
        const ComplexMatrix u = haar_unitary(rng, n);
        ComplexMatrix a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cdouble acc{};
                for (std::size_t k = 0; k < n; ++k)
                    acc += u(i, k) * eigs[k] * std::conj(u(j, k));
                a(i, j) = acc;
            }
        return a;
    }
    if (e.kind == "hermitian") return HermitianMatrix::closest(ginibre(rng, n)).matrix();
    if (e.kind == "nilpotent_shift") {
        ComplexMatrix a(n);
        for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
        return a;
    }
    if (e.kind == "rank_one") {
        const auto x = rng.unit_vector(n);
        const auto y = rng.unit_vector(n);
        ComplexMatrix a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = x[i] * std::conj(y[j]);
        return a;
    }
    (void)kid;
    throw std::invalid_argument("unknown ensemble kind: " + e.kind);
}

void SuiteConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
    if (nodes < 2) throw std::invalid_argument("config: nodes must be >= 2");
    if (sup_restarts < 1) throw std::invalid_argument("config: sup_restarts must be >= 1");
    if (format != "json" && format != "csv")
        throw std::invalid_argument("config: format must be json or csv");
    for (const auto& e : ensembles) {
        kind_id(e.kind);
        if (e.dim < 1) throw std::invalid_argument("config: ensemble dim must be >= 1");
        if (e.count < 0) throw std::invalid_argument("config: ensemble count must be >= 0");
    }
    for (const auto& c : chains)
        if (std::find(kChainIds.begin(), kChainIds.end(), c) == kChainIds.end())
            throw std::invalid_argument("config: unknown chain id: " + c);
    for (double r : r_values)
        if (!(r >= 1.0 && r <= 2.0))
            throw std::invalid_argument("config: r values must lie in [1, 2]");
    for (double t : t_values)
        if (!(t >= 0.0 && t <= 1.0))
            throw std::invalid_argument("config: t values must lie in [0, 1]");
    for (double p : p_values)
        if (!(p >= 2.0 && p <= 4.0))
            throw std::invalid_argument("config: p values must lie in [2, 4]");
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
    SuiteConfig cfg;
    if (j.contains("ensembles")) {
        for (const auto& je : j.at("ensembles")) {
            Ensemble e;
            e.kind = je.at("kind").get<std::string>();
            e.dim = je.at("dim").get<std::size_t>();
            e.count = je.at("count").get<int>();
            e.seed = je.value("seed", std::uint64_t{0});
            cfg.ensembles.push_back(e);
        }
    }
    if (j.contains("chains")) cfg.chains = j.at("chains").get<std::vector<std::string>>();
    cfg.tol = j.value("tol", cfg.tol);
    cfg.nodes = j.value("nodes", cfg.nodes);
    if (j.contains("r_values")) cfg.r_values = j.at("r_values").get<std::vector<double>>();
    if (j.contains("t_values")) cfg.t_values = j.at("t_values").get<std::vector<double>>();
    if (j.contains("p_values")) cfg.p_values = j.at("p_values").get<std::vector<double>>();
    cfg.sup_restarts = j.value("sup_restarts", cfg.sup_restarts);
    cfg.output_path = j.value("output", cfg.output_path);
    cfg.format = j.value("format", cfg.format);
    cfg.keep_reports = j.value("keep_reports", cfg.keep_reports);
    return cfg;
}

nlohmann::ordered_json SuiteConfig::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json ens = nlohmann::ordered_json::array();
    for (const auto& e : ensembles)
        ens.push_back({{"kind", e.kind}, {"dim", e.dim}, {"count", e.count}, {"seed", e.seed}});
    j["ensembles"] = ens;
    j["chains"] = chains.empty() ? kChainIds : chains;
    j["tol"] = tol;
    j["nodes"] = nodes;
    j["r_values"] = r_values;
    j["t_values"] = t_values;
    j["p_values"] = p_values;
    j["sup_restarts"] = sup_restarts;
    j["format"] = format;
    return j;
}

namespace {

std::vector<ChainReport> evaluate_chains(const SuiteConfig& cfg, const Ensemble& e, int index) {
    ChainOptions opts;
    opts.tol = cfg.tol;
    opts.nodes = cfg.nodes;
    opts.sup_restarts = cfg.sup_restarts;
    opts.seed = matrix_seed(e, index);

    OperatorCache ca(gen_matrix(e, index), opts);
    // Two-operand chains draw an independent companion from the same ensemble.
    std::optional<OperatorCache> cb;
    auto companion = [&]() -> OperatorCache& {
        if (!cb) {
            Ensemble salted = e;
            salted.seed = Rng::mix(e.seed, 0xC0FFEEULL);
            cb.emplace(gen_matrix(salted, index), opts);
        }
        return *cb;
    };

    const std::vector<std::string>& chains = cfg.chains.empty() ? kChainIds : cfg.chains;
    std::vector<ChainReport> out;
    for (const auto& id : chains) {
        if (id == "kittaneh") {
            out.push_back(kittaneh_chain(ca));
        } else if (id == "abs_sum") {
            out.push_back(abs_sum_chain(ca));
        } else if (id == "squared_refinement") {
            out.push_back(squared_refinement_chain(ca));
        } else if (id == "additive_refinement") {
            out.push_back(additive_refinement_chain(ca));
        } else if (id == "power_mean") {
            for (double r : cfg.r_values) out.push_back(power_mean_chain(ca, r));
        } else if (id == "cartesian_power") {
            for (double r : cfg.r_values) out.push_back(cartesian_power_chain(ca, r));
        } else if (id == "cartesian_lower") {
            for (double r : cfg.r_values)
                out.push_back(cartesian_lower_chain(ca, ScalarFn::power(r)));
        } else if (id == "upper_fourpoint") {
            for (double r : cfg.r_values)
                out.push_back(upper_fourpoint(ca, ScalarFn::power(r)));
        } else if (id == "fourpoint_vs_integral") {
            for (double r : cfg.r_values)
                out.push_back(fourpoint_vs_integral(ca, ScalarFn::power(r)));
        } else if (id == "prop_mean") {
            for (double r : cfg.r_values)
                out.push_back(prop_mean_chain(ca, companion(), ScalarFn::power(r)));
        } else if (id == "bourin") {
            for (double r : cfg.r_values)
                out.push_back(bourin_norm_check(ca, companion(), ScalarFn::power(r)));
        } else if (id == "convex_sup") {
            for (double r : cfg.r_values)
                out.push_back(
                    convex_sup_chain(ca, companion(), ScalarFn::power(r), cfg.sup_restarts));
        } else if (id == "weighted_refined") {
            for (double t : cfg.t_values)
                for (double p : cfg.p_values)
                    out.push_back(weighted_refined_chain(ca, t, ScalarFn::power(p / 2.0)));
        } else {
            throw std::invalid_argument("unknown chain id: " + id);
        }
    }
    return out;
}

void accumulate(SuiteReport& report, const ChainReport& chain) {
    auto& summary = report.per_chain[chain.chain_id];
    for (const auto& a : chain.assertions) {
        ++report.total_assertions;
        ++summary.assertions;
        summary.min_gap = std::min(summary.min_gap, a.gap);
        if (!a.satisfied) {
            ++report.violations;
            ++summary.violations;
            const double magnitude = std::max(0.0, -a.gap);
            report.max_violation = std::max(report.max_violation, magnitude);
            summary.max_violation = std::max(summary.max_violation, magnitude);
        }
    }
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();
    SuiteReport report;
    report.config = cfg;
    for (const auto& e : cfg.ensembles) {
        for (int index = 0; index < e.count; ++index) {
            MatrixReports mr;
            mr.kind = e.kind;
            mr.dim = e.dim;
            mr.index = index;
            mr.reports = evaluate_chains(cfg, e, index);
            for (const auto& chain : mr.reports) accumulate(report, chain);
            if (cfg.keep_reports) report.matrices.push_back(std::move(mr));
        }
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

nlohmann::ordered_json SuiteReport::to_json() const {
    nlohmann::ordered_json j;
    j["config"] = config.to_json();
    nlohmann::ordered_json per = nlohmann::ordered_json::object();
    for (const auto& [id, s] : per_chain)
        per[id] = {{"assertions", s.assertions},
                   {"violations", s.violations},
                   {"max_violation", s.max_violation},
                   {"min_gap", std::isfinite(s.min_gap) ? s.min_gap : 0.0}};
    j["summary"] = {{"total_assertions", total_assertions},
                    {"violations", violations},
                    {"max_violation", max_violation},
                    {"per_chain", per}};
    nlohmann::ordered_json ms = nlohmann::ordered_json::array();
    for (const auto& m : matrices) {
        nlohmann::ordered_json reports = nlohmann::ordered_json::array();
        for (const auto& chain : m.reports) reports.push_back(nri::to_json(chain));
        ms.push_back({{"ensemble", m.kind}, {"dim", m.dim}, {"index", m.index},
                      {"reports", reports}});
    }
    j["matrices"] = ms;
    return j;
}

std::string SuiteReport::to_csv() const {
    std::ostringstream out;
    out << "ensemble,dim,index,chain_id,params,left_label,right_label,left_value,"
           "right_value,gap,satisfied\n";
    out.precision(17);
    for (const auto& m : matrices) {
        for (const auto& chain : m.reports) {
            std::string params;
            for (const auto& [name, value] : chain.params) {
                if (!params.empty()) params += ';';
                std::ostringstream p;
                p.precision(17);
                p << name << '=' << value;
                params += p.str();
            }
            if (!chain.fn_label.empty())
                params += (params.empty() ? "f=" : ";f=") + chain.fn_label;
            for (const auto& a : chain.assertions) {
                out << m.kind << ',' << m.dim << ',' << m.index << ',' << chain.chain_id << ','
                    << '"' << params << '"' << ',' << chain.terms[a.left_index].first << ','
                    << chain.terms[a.right_index].first << ','
                    << chain.terms[a.left_index].second << ','
                    << chain.terms[a.right_index].second << ',' << a.gap << ','
                    << (a.satisfied ? "true" : "false") << '\n';
            }
        }
    }
    return out.str();
}

SuiteReport sharpness_experiment(int count, std::size_t dim, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sharpness_experiment: count must be >= 1");
    SuiteConfig cfg;
    cfg.ensembles = {{"normal", dim, count, seed}};
    cfg.chains = {"squared_refinement"};
    const auto started = std::chrono::steady_clock::now();
    SuiteReport report;
    report.config = cfg;
    const Ensemble& e = cfg.ensembles.front();
    for (int index = 0; index < count; ++index) {
        ChainOptions opts;
        opts.tol = cfg.tol;
        OperatorCache ca(gen_matrix(e, index), opts);
        const ChainReport inner = squared_refinement_chain(ca);

        // Equality check w^2 = ||(3|A|+|A*|)^2+(|A|+3|A*|)^2||/32, asserted in
        // both directions at relative 1e-8.
        ChainReport eq;
        eq.chain_id = "sharpness";
        eq.terms = {inner.terms[0], inner.terms[1]};
        const double vl = eq.terms[0].second;
        const double vr = eq.terms[1].second;
        const double slack = 1e-8 * std::max({1.0, std::abs(vl), std::abs(vr)});
        eq.assertions = {{0, 1, vr - vl >= -slack, vr - vl},
                         {1, 0, vl - vr >= -slack, vl - vr}};

        MatrixReports mr;
        mr.kind = e.kind;
        mr.dim = e.dim;
        mr.index = index;
        mr.reports = {eq};
        accumulate(report, eq);
        report.matrices.push_back(std::move(mr));
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace nri
