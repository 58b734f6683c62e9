#pragma once

#include <cmath>
#include <vector>

#include "nri/matrix.hpp"
#include "nri/rng.hpp"

namespace nri::testutil {

inline ComplexMatrix random_ginibre(Rng& rng, std::size_t n) {
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_complex_gaussian();
    return g;
}

inline HermitianMatrix random_hermitian(Rng& rng, std::size_t n) {
    return HermitianMatrix::closest(random_ginibre(rng, n));
}

/// PSD matrix G G* (eigenvalues can approach 0).
inline HermitianMatrix random_psd(Rng& rng, std::size_t n) {
    const ComplexMatrix g = random_ginibre(rng, n);
    return HermitianMatrix::closest(g * g.adjoint());
}

/// PSD matrix with prescribed eigenvalue range via Haar conjugation of a
/// diagonal, keeping every convex combination well inside (0, inf).
inline HermitianMatrix random_psd_spectrum(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<std::vector<cdouble>> cols;
    // Orthonormal columns by Gram-Schmidt on random vectors.
    ComplexMatrix g = random_ginibre(rng, n);
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
    std::vector<double> eigs(n);
    for (auto& v : eigs) v = lo + (hi - lo) * rng.next_double();
    HermitianMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cdouble acc{};
            for (std::size_t k = 0; k < n; ++k) acc += eigs[k] * g(i, k) * std::conj(g(j, k));
            h.set(i, j, acc);
        }
    return h;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

inline double range_modulus(const ComplexMatrix& a, const std::vector<cdouble>& x) {
    const std::size_t n = a.dim();
    cdouble acc{};
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cdouble row{};
        for (std::size_t j = 0; j < n; ++j) row += a(i, j) * x[j];
        acc += std::conj(x[i]) * row;
        norm2 += std::norm(x[i]);
    }
    return std::abs(acc) / norm2;
}

/// Independent numerical-radius oracle: maximize |<Ax,x>| over Haar-random
/// unit vectors, then polish the best sample by coordinate pattern search
/// with a shrinking step.  Shares nothing with the rotation-grid method.
inline double brute_force_radius(const ComplexMatrix& a, long samples, Rng& rng,
                                 int polish_rounds = 60) {
    const std::size_t n = a.dim();
    std::vector<cdouble> best = rng.unit_vector(n);
    double best_val = range_modulus(a, best);
    std::vector<cdouble> x(n);
    for (long s = 1; s < samples; ++s) {
        x = rng.unit_vector(n);
        const double v = range_modulus(a, x);
        if (v > best_val) {
            best_val = v;
            best = x;
        }
    }
    double step = 0.01;
    for (int round = 0; round < polish_rounds; ++round) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (const cdouble dir : {cdouble{step, 0.0}, cdouble{-step, 0.0},
                                      cdouble{0.0, step}, cdouble{0.0, -step}}) {
                x = best;
                x[i] += dir;
                const double v = range_modulus(a, x);
                if (v > best_val) {
                    best_val = v;
                    best = x;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
        if (step < 1e-10) break;
    }
    return best_val;
}

}  // namespace nri::testutil
