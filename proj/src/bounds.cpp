#include "nri/bounds.hpp"

#include <cmath>

#include "nri/rng.hpp"

namespace nri {

nlohmann::ordered_json to_json(const ChainReport& report) {
    nlohmann::ordered_json j;
    j["chain_id"] = report.chain_id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [name, value] : report.params) params[name] = value;
    if (!report.fn_label.empty()) params["f"] = report.fn_label;
    j["params"] = params;
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [label, value] : report.terms)
        terms.push_back({{"label", label}, {"value", value}});
    j["terms"] = terms;
    nlohmann::ordered_json assertions = nlohmann::ordered_json::array();
    for (const auto& a : report.assertions)
        assertions.push_back({{"left", a.left_index},
                              {"right", a.right_index},
                              {"satisfied", a.satisfied},
                              {"gap", a.gap}});
    j["assertions"] = assertions;
    j["sup_is_estimate"] = report.sup_is_estimate;
    return j;
}

OperatorCache::OperatorCache(ComplexMatrix a, ChainOptions opts)
    : a_(std::move(a)), opts_(opts) {
    if (!a_.all_finite()) throw std::invalid_argument("OperatorCache: non-finite entries");
}

const HermitianMatrix& OperatorCache::abs() {
    if (!abs_) abs_ = operator_abs(a_);
    return *abs_;
}

const HermitianMatrix& OperatorCache::abs_star() {
    if (!abs_star_) abs_star_ = operator_abs(a_.adjoint());
    return *abs_star_;
}

const HermitianMatrix& OperatorCache::gram_sum() {
    if (!gram_sum_) {
        const ComplexMatrix astar = a_.adjoint();
        gram_sum_ = HermitianMatrix::closest(astar * a_ + a_ * astar);
    }
    return *gram_sum_;
}

const CartesianParts& OperatorCache::cartesian() {
    if (!cartesian_) cartesian_ = cartesian_decompose(a_);
    return *cartesian_;
}

double OperatorCache::norm() {
    if (!norm_) norm_ = operator_norm(a_);
    return *norm_;
}

const RadiusResult& OperatorCache::radius() {
    if (!radius_) radius_ = numerical_radius(a_, opts_.radius_grid, opts_.radius_tol);
    return *radius_;
}

namespace {

// satisfied iff gap >= -(tol * scale + extra_abs), scale from the adjacent
// term magnitudes (floored at 1 so tiny chains get an absolute slack).
void assert_adjacent(ChainReport& rep, double tol, double extra_abs = 0.0) {
    rep.assertions.clear();
    for (std::size_t k = 0; k + 1 < rep.terms.size(); ++k) {
        ChainAssertion a;
        a.left_index = static_cast<int>(k);
        a.right_index = static_cast<int>(k + 1);
        const double vl = rep.terms[k].second;
        const double vr = rep.terms[k + 1].second;
        a.gap = vr - vl;
        const double scale = std::max({1.0, std::abs(vl), std::abs(vr)});
        a.satisfied = a.gap >= -(tol * scale + extra_abs);
        rep.assertions.push_back(a);
    }
}

void require_flags(const ScalarFn& f, bool increasing, bool op_convex, bool convex,
                   bool nonnegative, const std::string& chain) {
    if (increasing && !f.increasing)
        throw std::invalid_argument(chain + ": requires an increasing f, got " + f.label);
    if (op_convex && !f.operator_convex)
        throw std::invalid_argument(chain + ": requires an operator convex f, got " + f.label);
    if (convex && !f.convex)
        throw std::invalid_argument(chain + ": requires a convex f, got " + f.label);
    if (nonnegative && !f.nonnegative)
        throw std::invalid_argument(chain + ": requires a nonnegative f, got " + f.label);
}

HermitianMatrix mean(const HermitianMatrix& x, const HermitianMatrix& y, double wx, double wy) {
    return HermitianMatrix::closest(wx * x.matrix() + wy * y.matrix());
}

}  // namespace

ChainReport kittaneh_chain(OperatorCache& a) {
    ChainReport rep;
    rep.chain_id = "kittaneh";
    const double gram = spectral_norm(a.gram_sum());
    const double w = a.radius().value;
    rep.terms = {{"quarter_gram_sum", 0.25 * gram},
                 {"radius_squared", w * w},
                 {"half_gram_sum", 0.5 * gram}};
    assert_adjacent(rep, a.options().tol, a.radius().refinement_residual);
    return rep;
}

ChainReport abs_sum_chain(OperatorCache& a) {
    ChainReport rep;
    rep.chain_id = "abs_sum";
    const double abs_sum = spectral_norm(a.abs() + a.abs_star());
    rep.terms = {{"quarter_abs_sum", 0.25 * abs_sum},
                 {"half_norm", 0.5 * a.norm()},
                 {"radius", a.radius().value},
                 {"half_abs_sum", 0.5 * abs_sum}};
    assert_adjacent(rep, a.options().tol, a.radius().refinement_residual);
    return rep;
}

ChainReport prop_mean_chain(OperatorCache& a, OperatorCache& b, const ScalarFn& f) {
    require_flags(f, true, true, false, true, "prop_mean_chain");
    ChainReport rep;
    rep.chain_id = "prop_mean";
    rep.fn_label = f.label;
    const int nodes = a.options().nodes;
    const double t1 = spectral_norm(matrix_function(mean(a.abs(), b.abs(), 0.25, 0.25), f));
    // ((1-t)|A| + t|B|)/2 is the segment from |A|/2 to |B|/2.
    const double t2 = spectral_norm(
        hh_integral(mean(a.abs(), b.abs(), 0.5, 0.0), mean(a.abs(), b.abs(), 0.0, 0.5), f, nodes));
    const double t3 = 0.5 * f(0.5 * a.norm()) + 0.5 * f(0.5 * b.norm());
    rep.terms = {{"quarter_mean_fn", t1}, {"integral_norm", t2}, {"scalar_mean", t3}};
    assert_adjacent(rep, a.options().tol);
    return rep;
}

ChainReport power_mean_chain(OperatorCache& a, double r) {
    if (!(r >= 1.0 && r <= 2.0))
        throw std::invalid_argument("power_mean_chain: r must lie in [1, 2]");
    ChainReport rep;
    rep.chain_id = "power_mean";
    rep.params = {{"r", r}};
    const ScalarFn f = ScalarFn::power(r);
    rep.fn_label = f.label;
    const double abs_sum = spectral_norm(a.abs() + a.abs_star());
    const double t1 = std::pow(0.25 * abs_sum, r);
    const double t2 = spectral_norm(hh_integral(mean(a.abs(), a.abs_star(), 0.5, 0.0),
                                                mean(a.abs(), a.abs_star(), 0.0, 0.5), f,
                                                a.options().nodes));
    const double t3 = std::pow(0.5 * a.norm(), r);
    rep.terms = {{"quarter_abs_sum_pow", t1}, {"integral_norm", t2}, {"half_norm_pow", t3}};
    assert_adjacent(rep, a.options().tol);
    return rep;
}

ChainReport convex_sup_chain(OperatorCache& a, OperatorCache& b, const ScalarFn& f,
                             int restarts) {
    require_flags(f, false, false, true, true, "convex_sup_chain");
    ChainReport rep;
    rep.chain_id = "convex_sup";
    rep.fn_label = f.label;
    rep.params = {{"restarts", static_cast<double>(restarts)}};
    rep.sup_is_estimate = true;

    const HermitianMatrix abs_mean = mean(a.abs(), b.abs(), 0.5, 0.5);
    const double t1 = f.increasing ? spectral_norm(matrix_function(abs_mean, f))
                                   : f(spectral_norm(abs_mean));

    // ||((1-t)|A|+t|B|)^{1/2} x||^2 = <((1-t)|A|+t|B|) x, x>, which is affine
    // in t; two quadratic forms suffice per objective evaluation.
    const auto& rule = gauss_legendre_01(a.options().nodes);
    const std::size_t n = a.dim();
    const auto& abs_a = a.abs();
    const auto& abs_b = b.abs();
    auto quad_form = [n](const HermitianMatrix& h, std::span<const cdouble> x) {
        cdouble acc{};
        for (std::size_t i = 0; i < n; ++i) {
            cdouble row{};
            for (std::size_t j = 0; j < n; ++j) row += h(i, j) * x[j];
            acc += std::conj(x[i]) * row;
        }
        return acc.real();
    };
    auto objective = [&](std::span<const cdouble> x) {
        const double qa = quad_form(abs_a, x);
        const double qb = quad_form(abs_b, x);
        double acc = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double t = rule.nodes[k];
            acc += rule.weights[k] * f(std::max(0.0, (1.0 - t) * qa + t * qb));
        }
        return acc;
    };

    // The top eigenvector of (|A|+|B|)/2 attains the left term up to
    // quadrature error; seeding it keeps the lower estimate above term1.
    const auto mean_eig = hermitian_eig(abs_mean);
    std::vector<std::vector<cdouble>> warm(1);
    warm[0].resize(n);
    for (std::size_t i = 0; i < n; ++i) warm[0][i] = mean_eig.unitary(i, n - 1);

    const SupResult sup = sup_unit_sphere(objective, n, restarts, 1e-9,
                                          Rng::mix(a.options().seed, 0x63737570ULL), warm);
    const double t3 = 0.5 * spectral_norm(matrix_function(a.abs(), f) + matrix_function(b.abs(), f));
    rep.terms = {{"mean_fn", t1}, {"sup_estimate", sup.value}, {"half_fn_sum", t3}};

    // Left assertion: term1 <= sup + tol_sup (one-sided optimizer error);
    // the right one is exact since any estimate underestimates the sup.
    assert_adjacent(rep, a.options().tol);
    rep.assertions[0].satisfied =
        rep.assertions[0].gap >=
        -(a.options().tol * std::max({1.0, t1, sup.value}) + a.options().sup_tol);
    return rep;
}

ChainReport bourin_norm_check(OperatorCache& a, OperatorCache& b, const ScalarFn& f) {
    require_flags(f, true, false, true, true, "bourin_norm_check");
    ChainReport rep;
    rep.chain_id = "bourin";
    rep.fn_label = f.label;
    const double t1 = spectral_norm(matrix_function(mean(a.abs(), b.abs(), 0.5, 0.5), f));
    const double t2 = 0.5 * spectral_norm(matrix_function(a.abs(), f) + matrix_function(b.abs(), f));
    rep.terms = {{"mean_fn", t1}, {"half_fn_sum", t2}};
    assert_adjacent(rep, a.options().tol);
    return rep;
}

ChainReport cartesian_lower_chain(OperatorCache& a, const ScalarFn& f) {
    require_flags(f, true, true, false, true, "cartesian_lower_chain");
    ChainReport rep;
    rep.chain_id = "cartesian_lower";
    rep.fn_label = f.label;
    const auto& cart = a.cartesian();
    const HermitianMatrix b2 =
        HermitianMatrix::closest(cart.real_part.matrix() * cart.real_part.matrix());
    const HermitianMatrix c2 =
        HermitianMatrix::closest(cart.imag_part.matrix() * cart.imag_part.matrix());
    const double w = a.radius().value;
    const double t1 =
        spectral_norm(matrix_function(HermitianMatrix::closest(0.25 * a.gram_sum().matrix()), f));
    const double t2 = spectral_norm(hh_integral(b2, c2, f, a.options().nodes));
    const double t3 = 0.5 * spectral_norm(matrix_function(b2, f) + matrix_function(c2, f));
    const double t4 = f(w * w);
    rep.terms = {{"quarter_gram_fn", t1},
                 {"integral_norm", t2},
                 {"half_fn_sum", t3},
                 {"fn_radius_squared", t4}};
    assert_adjacent(rep, a.options().tol, a.radius().refinement_residual);
    return rep;
}

ChainReport cartesian_power_chain(OperatorCache& a, double r) {
    if (!(r >= 1.0 && r <= 2.0))
        throw std::invalid_argument("cartesian_power_chain: r must lie in [1, 2]");
    ChainReport rep;
    rep.chain_id = "cartesian_power";
    rep.params = {{"r", r}};
    const ScalarFn f = ScalarFn::power(r);
    rep.fn_label = f.label;
    const auto& cart = a.cartesian();
    const HermitianMatrix b2 =
        HermitianMatrix::closest(cart.real_part.matrix() * cart.real_part.matrix());
    const HermitianMatrix c2 =
        HermitianMatrix::closest(cart.imag_part.matrix() * cart.imag_part.matrix());
    const double w = a.radius().value;
    const double t1 = std::pow(0.25 * spectral_norm(a.gram_sum()), r);
    const double t2 = spectral_norm(hh_integral(b2, c2, f, a.options().nodes));
    const double t3 = std::pow(w, 2.0 * r);
    rep.terms = {{"quarter_gram_pow", t1}, {"integral_norm", t2}, {"radius_pow", t3}};
    assert_adjacent(rep, a.options().tol, a.radius().refinement_residual);
    return rep;
}

ChainReport upper_fourpoint(OperatorCache& a, const ScalarFn& f) {
    require_flags(f, true, false, true, true, "upper_fourpoint");
    ChainReport rep;
    rep.chain_id = "upper_fourpoint";
    rep.fn_label = f.label;
    const double t1 = f(a.radius().value);
    const HermitianMatrix q1 = mean(a.abs(), a.abs_star(), 0.75, 0.25);
    const HermitianMatrix q3 = mean(a.abs(), a.abs_star(), 0.25, 0.75);
    const double t2 =
        0.5 * spectral_norm(matrix_function(q1, f) + matrix_function(q3, f));
    rep.terms = {{"fn_radius", t1}, {"half_fourpoint", t2}};
    assert_adjacent(rep, a.options().tol, a.radius().refinement_residual);
    return rep;
}

ChainReport fourpoint_vs_integral(OperatorCache& a, const ScalarFn& f) {
    require_flags(f, false, true, false, true, "fourpoint_vs_integral");
    ChainReport rep;
    rep.chain_id = "fourpoint_vs_integral";
    rep.fn_label = f.label;
    const HermitianMatrix q1 = mean(a.abs(), a.abs_star(), 0.75, 0.25);
    const HermitianMatrix q3 = mean(a.abs(), a.abs_star(), 0.25, 0.75);
    const double t1 =
        0.5 * spectral_norm(matrix_function(q1, f) + matrix_function(q3, f));
    // int f(t|A| + (1-t)|A*|) dt runs from |A*| to |A|.
    const double t2 = spectral_norm(hh_integral(a.abs_star(), a.abs(), f, a.options().nodes));
    rep.terms = {{"half_fourpoint", t1}, {"integral_norm", t2}};
    assert_adjacent(rep, a.options().tol);
    return rep;
}

ChainReport squared_refinement_chain(OperatorCache& a) {
    ChainReport rep;
    rep.chain_id = "squared_refinement";
    const double w = a.radius().value;
    const HermitianMatrix q1 = mean(a.abs(), a.abs_star(), 3.0, 1.0);
    const HermitianMatrix q3 = mean(a.abs(), a.abs_star(), 1.0, 3.0);
    const double t2 = (1.0 / 32.0) * spectral_norm(HermitianMatrix::closest(
                          q1.matrix() * q1.matrix() + q3.matrix() * q3.matrix()));
    const double t3 = spectral_norm(
        hh_integral(a.abs_star(), a.abs(), ScalarFn::square(), a.options().nodes));
    const double t4 = 0.5 * spectral_norm(a.gram_sum());
    rep.terms = {{"radius_squared", w * w},
                 {"fourpoint_over_32", t2},
                 {"integral_norm", t3},
                 {"half_gram_sum", t4}};
    assert_adjacent(rep, a.options().tol, a.radius().refinement_residual);
    return rep;
}

ChainReport additive_refinement_chain(OperatorCache& a) {
    ChainReport rep;
    rep.chain_id = "additive_refinement";
    const double gram = spectral_norm(a.gram_sum());
    const ComplexMatrix a2 = a.a() * a.a();
    const ComplexMatrix astar2 = a.a().adjoint() * a.a().adjoint();
    // A^2 + (A*)^2 is self-adjoint, so |A^2+(A*)^2|^2 is just its square.
    const HermitianMatrix sym = HermitianMatrix::closest(a2 + astar2);
    const HermitianMatrix inner = HermitianMatrix::closest(
        a.gram_sum().matrix() * a.gram_sum().matrix() + sym.matrix() * sym.matrix());
    const double w = a.radius().value;
    rep.terms = {{"quarter_gram_sum", 0.25 * gram},
                 {"quarter_sqrt_combined", 0.25 * std::sqrt(std::max(0.0, spectral_norm(inner)))},
                 {"radius_squared", w * w}};
    assert_adjacent(rep, a.options().tol, a.radius().refinement_residual);
    return rep;
}

ChainReport weighted_refined_chain(OperatorCache& a, double t, const ScalarFn& f) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("weighted_refined_chain: t must lie in [0, 1]");
    require_flags(f, true, true, false, true, "weighted_refined_chain");
    ChainReport rep;
    rep.chain_id = "weighted_refined";
    rep.params = {{"t", t}};
    rep.fn_label = f.label;
    const double r = std::min(t, 1.0 - t);

    // |A|^2 = A*A and |A*|^2 = AA* directly; squaring |A| would double the
    // eigensolver rounding for no gain.
    const ComplexMatrix astar = a.a().adjoint();
    const HermitianMatrix x = HermitianMatrix::closest(astar * a.a());
    const HermitianMatrix y = HermitianMatrix::closest(a.a() * astar);
    const HermitianMatrix fx = matrix_function(x, f);
    const HermitianMatrix fy = matrix_function(y, f);
    const HermitianMatrix fmid = matrix_function(mean(x, y, 0.5, 0.5), f);

    const ComplexMatrix convex_combo = (1.0 - t) * fx.matrix() + t * fy.matrix();
    const ComplexMatrix bracket =
        0.5 * (fx.matrix() + fy.matrix()) - fmid.matrix();
    const double w = a.radius().value;
    const double t1 = f(w * w);
    const double t2 =
        spectral_norm(HermitianMatrix::closest(convex_combo - (2.0 * r) * bracket));
    const double t3 = spectral_norm(HermitianMatrix::closest(convex_combo));
    rep.terms = {{"fn_radius_squared", t1}, {"refined_bound", t2}, {"weighted_fn_sum", t3}};
    assert_adjacent(rep, a.options().tol, a.radius().refinement_residual);
    return rep;
}

}  // namespace nri
