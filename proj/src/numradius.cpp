#include "nri/numradius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nri/eig.hpp"
#include "nri/rng.hpp"

namespace nri {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fills w with (e^{i theta} A + e^{-i theta} A*)/2.
void fill_rotated_real_part(const ComplexMatrix& a, double theta, cdouble* w) {
    const std::size_t n = a.dim();
    const cdouble phase = std::polar(1.0, theta);
    for (std::size_t i = 0; i < n; ++i) {
        w[i * n + i] = (phase * a(i, i)).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cdouble v = 0.5 * (phase * a(i, j) + std::conj(phase * a(j, i)));
            w[i * n + j] = v;
            w[j * n + i] = std::conj(v);
        }
    }
}

double eval_theta(const ComplexMatrix& a, double theta, std::vector<cdouble>& scratch) {
    fill_rotated_real_part(a, theta, scratch.data());
    return detail::lambda_max_inplace(scratch.data(), a.dim());
}

// Golden-section maximization on [lo, hi]; returns (theta, value).
std::pair<double, double> golden_refine(const ComplexMatrix& a, double lo, double hi,
                                        double tol, std::vector<cdouble>& scratch) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = eval_theta(a, x1, scratch);
    double f2 = eval_theta(a, x2, scratch);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval_theta(a, x2, scratch);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval_theta(a, x1, scratch);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

RadiusResult numerical_radius(const ComplexMatrix& a, int grid, double tol) {
    if (grid < 64) throw std::invalid_argument("numerical_radius: grid must be >= 64");
    if (!(tol > 0.0)) throw std::invalid_argument("numerical_radius: tol must be positive");
    if (!a.all_finite()) throw std::invalid_argument("numerical_radius: non-finite entries");

    const std::size_t n = a.dim();
    std::vector<cdouble> scratch(n * n);
    std::vector<double> values(grid);
    const double step = kTwoPi / grid;
    for (int k = 0; k < grid; ++k) values[k] = eval_theta(a, k * step, scratch);

    const int grid_argmax =
        static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
    // Lipschitz constant of lambda_max(H(theta)) is <= ||A||; cells whose grid
    // value is further below the grid max than two cells of drift cannot win.
    const double cutoff = values[grid_argmax] - 2.0 * a.frobenius_norm() * step;
    std::vector<int> candidates;
    for (int k = 0; k < grid; ++k) {
        const double prev = values[(k + grid - 1) % grid];
        const double next = values[(k + 1) % grid];
        const bool strict_local_max =
            values[k] >= prev && values[k] >= next && (values[k] > prev || values[k] > next);
        if (k == grid_argmax || (strict_local_max && values[k] >= cutoff))
            candidates.push_back(k);
    }
    // Refine only the best-valued brackets.  An n x n pencil has O(n) branch
    // maxima, so anything beyond the cap is rounding noise on a plateau (all
    // tied with the argmax, whose bracket is always refined first).
    constexpr std::size_t kMaxRefinements = 16;
    std::sort(candidates.begin(), candidates.end(),
              [&](int p, int q) { return values[p] > values[q]; });
    if (candidates.size() > kMaxRefinements) candidates.resize(kMaxRefinements);

    double best_theta = 0.0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int k : candidates) {
        auto [theta, value] =
            golden_refine(a, (k - 1) * step, (k + 1) * step, tol, scratch);
        if (value > best_value) {
            best_value = value;
            best_theta = theta;
        }
    }

    RadiusResult r;
    r.value = best_value;
    r.argmax_theta = std::fmod(std::fmod(best_theta, kTwoPi) + kTwoPi, kTwoPi);
    r.grid_size = grid;
    // lambda_max(H(theta)) is Lipschitz in theta with constant <= ||A||; the
    // Frobenius norm over-estimates it, so this bounds the bracketing error.
    r.refinement_residual = tol * a.frobenius_norm() + 1e-14 * (1.0 + a.frobenius_norm());

    // Witness: top eigenvector at the argmax rotation.  Ties in the top
    // eigenvalue resolve to the lowest column index after the ascending sort.
    fill_rotated_real_part(a, r.argmax_theta, scratch.data());
    HermitianMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) h.set(i, j, scratch[i * n + j]);
    const auto d = hermitian_eig(h);
    r.witness.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.witness[i] = d.unitary(i, n - 1);
    return r;
}

cdouble numerical_range_sample(const ComplexMatrix& a, std::span<const cdouble> x) {
    const std::size_t n = a.dim();
    if (x.size() != n) throw std::invalid_argument("numerical_range_sample: dimension mismatch");
    double norm2 = 0.0;
    for (const auto& z : x) norm2 += std::norm(z);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::invalid_argument("numerical_range_sample: x is not a unit vector");
    cdouble acc{};
    for (std::size_t i = 0; i < n; ++i) {
        cdouble row{};
        for (std::size_t j = 0; j < n; ++j) row += a(i, j) * x[j];
        acc += std::conj(x[i]) * row;
    }
    return acc;
}

namespace {

void renormalize(std::vector<cdouble>& x) {
    double norm2 = 0.0;
    for (const auto& z : x) norm2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : x) z *= inv;
}

double checked_eval(const UnitSphereObjective& objective, std::span<const cdouble> x) {
    const double v = objective(x);
    if (!std::isfinite(v)) throw std::runtime_error("sup_unit_sphere: objective returned a non-finite value");
    return v;
}

// Single projected-gradient ascent run; mutates x, returns the value reached.
double ascend(const UnitSphereObjective& objective, std::vector<cdouble>& x, double tol) {
    constexpr double kFdStep = 1e-6;
    constexpr int kMaxIters = 200;
    const std::size_t n = x.size();
    double fx = checked_eval(objective, x);
    double eta = 0.1;
    std::vector<cdouble> grad(n), trial(n);
    // Every evaluation happens on the sphere: perturbed points are
    // renormalized first, which also turns the finite differences into the
    // intrinsic (projected) gradient.
    auto eval_normalized = [&](std::vector<cdouble>& p) {
        renormalize(p);
        return checked_eval(objective, p);
    };
    for (int iter = 0; iter < kMaxIters; ++iter) {
        // Central differences on the real and imaginary part of each entry.
        double gnorm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trial = x;
            trial[i] = x[i] + kFdStep;
            const double fpr = eval_normalized(trial);
            trial = x;
            trial[i] = x[i] - kFdStep;
            const double fmr = eval_normalized(trial);
            trial = x;
            trial[i] = x[i] + cdouble{0.0, kFdStep};
            const double fpi = eval_normalized(trial);
            trial = x;
            trial[i] = x[i] - cdouble{0.0, kFdStep};
            const double fmi = eval_normalized(trial);
            grad[i] = cdouble{(fpr - fmr) / (2.0 * kFdStep), (fpi - fmi) / (2.0 * kFdStep)};
            gnorm2 += std::norm(grad[i]);
        }
        if (gnorm2 == 0.0) break;
        bool improved = false;
        while (eta > 1e-14) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + eta * grad[i];
            renormalize(trial);
            const double ft = checked_eval(objective, trial);
            if (ft > fx) {
                improved = ft - fx > tol * (1.0 + std::abs(fx));
                x = trial;
                fx = ft;
                eta *= 1.5;
                break;
            }
            eta *= 0.5;
        }
        if (!improved) break;
    }
    return fx;
}

}  // namespace

SupResult sup_unit_sphere(const UnitSphereObjective& objective, std::size_t dim, int restarts,
                          double tol, std::uint64_t seed,
                          std::span<const std::vector<cdouble>> warm_starts) {
    if (dim < 1) throw std::invalid_argument("sup_unit_sphere: dim must be >= 1");
    if (restarts < 1) throw std::invalid_argument("sup_unit_sphere: restarts must be >= 1");
    Rng rng(Rng::mix(seed, 0x73757053ULL));
    SupResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < restarts; ++k) {
        std::vector<cdouble> x;
        if (static_cast<std::size_t>(k) < warm_starts.size()) {
            x = warm_starts[k];
            renormalize(x);
        } else {
            x = rng.unit_vector(dim);
        }
        const double v = ascend(objective, x, tol);
        if (v > best.value) {
            best.value = v;
            best.witness = x;
        }
    }
    return best;
}

}  // namespace nri
