#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nri/eig.hpp"
#include "nri/hh.hpp"
#include "nri/matrix.hpp"
#include "nri/numradius.hpp"
#include "nri/scalar_fn.hpp"

namespace nri {

struct ChainAssertion {
    int left_index = 0;
    int right_index = 0;
    bool satisfied = false;
    double gap = 0.0;  // value(right) - value(left)
};

/// Ordered list of named scalar bound values plus the pass/fail state of
/// each adjacent inequality and its tightness gap.
struct ChainReport {
    std::string chain_id;
    std::vector<std::pair<std::string, double>> terms;
    std::vector<ChainAssertion> assertions;
    std::vector<std::pair<std::string, double>> params;
    std::string fn_label;  // empty when the chain takes no scalar function
    bool sup_is_estimate = false;

    bool all_satisfied() const {
        for (const auto& a : assertions)
            if (!a.satisfied) return false;
        return true;
    }
    double min_gap() const {
        double g = std::numeric_limits<double>::infinity();
        for (const auto& a : assertions) g = std::min(g, a.gap);
        return g;
    }
};

/// Stable field order: chain_id, params, terms, assertions, sup_is_estimate.
nlohmann::ordered_json to_json(const ChainReport& report);

struct ChainOptions {
    double tol = 1e-8;        // relative slack on inequality assertions
    int nodes = 32;           // Gauss-Legendre nodes for operator integrals
    int radius_grid = 512;
    double radius_tol = 1e-12;
    int sup_restarts = 16;
    double sup_tol = 1e-6;    // one-sided slack for sup-estimate assertions
    std::uint64_t seed = 0;
};

/// Per-operator cache: each quantity (|A|, |A*|, w(A), ...) is computed at
/// most once per report evaluation and shared across chains.
class OperatorCache {
public:
    explicit OperatorCache(ComplexMatrix a, ChainOptions opts = {});

    const ComplexMatrix& a() const { return a_; }
    const ChainOptions& options() const { return opts_; }
    std::size_t dim() const { return a_.dim(); }

    const HermitianMatrix& abs();       // |A|
    const HermitianMatrix& abs_star();  // |A*|
    const HermitianMatrix& gram_sum();  // A*A + AA*
    const CartesianParts& cartesian();  // A = B + iC
    double norm();                      // ||A||
    const RadiusResult& radius();       // w(A)

private:
    ComplexMatrix a_;
    ChainOptions opts_;
    std::optional<HermitianMatrix> abs_, abs_star_, gram_sum_;
    std::optional<CartesianParts> cartesian_;
    std::optional<double> norm_;
    std::optional<RadiusResult> radius_;
};

// Inequality chains of the bound families under test.  Each returns the
// ordered scalar terms with every adjacent assertion evaluated.

/// [ ||A*A+AA*||/4, w^2(A), ||A*A+AA*||/2 ]
ChainReport kittaneh_chain(OperatorCache& a);

/// [ |||A|+|A*|||/4, ||A||/2, w(A), |||A|+|A*|||/2 ]
ChainReport abs_sum_chain(OperatorCache& a);

/// [ ||f((|A|+|B|)/4)||, ||int f(((1-t)|A|+t|B|)/2) dt||, (f(||A||/2)+f(||B||/2))/2 ]
ChainReport prop_mean_chain(OperatorCache& a, OperatorCache& b, const ScalarFn& f);

/// prop_mean_chain specialized to f = t^r, B = A*.
ChainReport power_mean_chain(OperatorCache& a, double r);

/// Sup-estimate chain for merely (scalar) convex f.
ChainReport convex_sup_chain(OperatorCache& a, OperatorCache& b, const ScalarFn& f,
                             int restarts);

/// [ ||f((|A|+|B|)/2)||, ||f(|A|)+f(|B|)||/2 ]
ChainReport bourin_norm_check(OperatorCache& a, OperatorCache& b, const ScalarFn& f);

/// [ ||f((A*A+AA*)/4)||, ||int f((1-t)B^2+tC^2) dt||, ||f(B^2)+f(C^2)||/2, f(w^2(A)) ]
ChainReport cartesian_lower_chain(OperatorCache& a, const ScalarFn& f);

/// cartesian_lower_chain specialized to f = t^r without the middle norm term.
ChainReport cartesian_power_chain(OperatorCache& a, double r);

/// [ f(w(A)), ||f((3|A|+|A*|)/4)+f((|A|+3|A*|)/4)||/2 ]
ChainReport upper_fourpoint(OperatorCache& a, const ScalarFn& f);

/// [ ||f((3|A|+|A*|)/4)+f((|A|+3|A*|)/4)||/2, ||int f(t|A|+(1-t)|A*|) dt|| ]
ChainReport fourpoint_vs_integral(OperatorCache& a, const ScalarFn& f);

/// [ w^2, ||(3|A|+|A*|)^2+(|A|+3|A*|)^2||/32, ||int (t|A|+(1-t)|A*|)^2 dt||, ||A*A+AA*||/2 ]
ChainReport squared_refinement_chain(OperatorCache& a);

/// [ ||A*A+AA*||/4, ||(A*A+AA*)^2+|A^2+(A*)^2|^2||^{1/2}/4, w^2(A) ]
ChainReport additive_refinement_chain(OperatorCache& a);

/// Weighted upper bound with the r = min{t, 1-t} refinement term.
ChainReport weighted_refined_chain(OperatorCache& a, double t, const ScalarFn& f);

}  // namespace nri
