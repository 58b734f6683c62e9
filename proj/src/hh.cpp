#include "nri/hh.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace nri {

QuadratureRule gauss_legendre_01(int n) {
    if (n < 2) throw std::invalid_argument("gauss_legendre_01: need at least 2 nodes");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Root of P_n on [-1, 1], Chebyshev-style initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n and P_n' by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-15) break;
        }
        rule.nodes[n - 1 - i] = 0.5 * (x + 1.0);
        rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

namespace {

const QuadratureRule& cached_rule(int n) {
    static std::mutex mu;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre_01(n)).first;
    return it->second;
}

}  // namespace

HermitianMatrix hh_integral(const HermitianMatrix& x, const HermitianMatrix& y,
                            const ScalarFn& f, int nodes) {
    if (x.dim() != y.dim()) throw std::invalid_argument("hh_integral: dimension mismatch");
    const auto& rule = cached_rule(nodes);
    const std::size_t n = x.dim();
    ComplexMatrix acc(n);
    for (int k = 0; k < nodes; ++k) {
        const double t = rule.nodes[k];
        const HermitianMatrix combo =
            HermitianMatrix::closest((1.0 - t) * x.matrix() + t * y.matrix());
        acc = acc + rule.weights[k] * matrix_function(combo, f).matrix();
    }
    return HermitianMatrix::closest(acc);
}

HHChain hh_chain(const HermitianMatrix& x, const HermitianMatrix& y, const ScalarFn& f,
                 int nodes, double tol) {
    if (x.dim() != y.dim()) throw std::invalid_argument("hh_chain: dimension mismatch");
    if (!f.operator_convex)
        throw std::invalid_argument(
            "hh_chain: the Loewner-order chain requires an operator convex f (" + f.label + ")");
    (void)tol;

    const auto mid = HermitianMatrix::closest(0.5 * (x.matrix() + y.matrix()));
    const auto q1 = HermitianMatrix::closest(0.25 * (3.0 * x.matrix() + y.matrix()));
    const auto q3 = HermitianMatrix::closest(0.25 * (x.matrix() + 3.0 * y.matrix()));
    const auto fx = matrix_function(x, f);
    const auto fy = matrix_function(y, f);
    const auto fmid = matrix_function(mid, f);
    const auto favg = HermitianMatrix::closest(0.5 * (fx.matrix() + fy.matrix()));

    HHChain chain;
    chain.terms[0] = fmid;
    chain.terms[1] =
        HermitianMatrix::closest(0.5 * (matrix_function(q1, f).matrix() + matrix_function(q3, f).matrix()));
    chain.terms[2] = hh_integral(x, y, f, nodes);
    chain.terms[3] = HermitianMatrix::closest(0.5 * (fmid.matrix() + favg.matrix()));
    chain.terms[4] = favg;
    for (int k = 0; k < 4; ++k)
        chain.gap_min[k] = lambda_min(chain.terms[k + 1] - chain.terms[k]);
    return chain;
}

}  // namespace nri
