#include "nri/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nri {

namespace {

constexpr int kMaxSweeps = 100;

double offdiag_fro(const cdouble* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += std::norm(w[i * n + j]);
    return std::sqrt(2.0 * s);
}

// Cyclic Jacobi sweeps on the row-major Hermitian buffer w.  When v is
// non-null the rotations are accumulated into it (v starts as identity).
// Returns the final off-diagonal Frobenius norm.
double jacobi_sweeps(cdouble* w, cdouble* v, std::size_t n, double scale) {
    if (n == 1) return 0.0;
    const double skip_thresh = 1e-18 * scale;
    const double done_thresh = 1e-15 * scale;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = offdiag_fro(w, n);
        if (off <= done_thresh) return off;
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = w[p * n + q];
                const double b = std::abs(apq);
                if (b <= skip_thresh) continue;
                rotated = true;
                const cdouble phase = apq / b;
                const double alpha = w[p * n + p].real();
                const double gamma = w[q * n + q].real();
                const double tau = (alpha - gamma) / (2.0 * b);
                double t;
                if (std::abs(tau) > 1e150) {
                    t = 0.5 / tau;
                } else {
                    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary R: R(p,p)=R(q,q)=c, R(p,q)=-s*phase, R(q,p)=s*conj(phase);
                // w <- R* w R zeroes w(p,q).
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const cdouble wip = w[i * n + p];
                    const cdouble wiq = w[i * n + q];
                    const cdouble nip = c * wip + s * std::conj(phase) * wiq;
                    const cdouble niq = c * wiq - s * phase * wip;
                    w[i * n + p] = nip;
                    w[p * n + i] = std::conj(nip);
                    w[i * n + q] = niq;
                    w[q * n + i] = std::conj(niq);
                }
                w[p * n + p] = alpha * c * c + 2.0 * b * s * c + gamma * s * s;
                w[q * n + q] = alpha * s * s - 2.0 * b * s * c + gamma * c * c;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
                if (v != nullptr) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const cdouble vip = v[i * n + p];
                        const cdouble viq = v[i * n + q];
                        v[i * n + p] = c * vip + s * std::conj(phase) * viq;
                        v[i * n + q] = c * viq - s * phase * vip;
                    }
                }
            }
        }
        if (!rotated) return offdiag_fro(w, n);
    }
    const double residual = offdiag_fro(w, n);
    if (residual > 1e-10 * (1.0 + scale))
        throw std::runtime_error("hermitian_eig: no convergence after " +
                                 std::to_string(kMaxSweeps) +
                                 " sweeps, off-diagonal residual " + std::to_string(residual));
    return residual;
}

std::vector<std::size_t> ascending_order(const cdouble* w, std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return w[a * n + a].real() < w[b * n + b].real();
    });
    return idx;
}

}  // namespace

EigenDecomposition hermitian_eig(const HermitianMatrix& h, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("hermitian_eig: tol must be positive");
    const std::size_t n = h.dim();
    std::vector<cdouble> w(h.matrix().data().begin(), h.matrix().data().end());
    std::vector<cdouble> v(n * n, cdouble{});
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    jacobi_sweeps(w.data(), v.data(), n, std::max(1.0, h.matrix().frobenius_norm()));
    const auto idx = ascending_order(w.data(), n);
    EigenDecomposition d;
    d.eigenvalues.resize(n);
    d.unitary = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        d.eigenvalues[k] = w[idx[k] * n + idx[k]].real();
        for (std::size_t i = 0; i < n; ++i) d.unitary(i, k) = v[i * n + idx[k]];
    }
    return d;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
    const std::size_t n = h.dim();
    std::vector<cdouble> w(h.matrix().data().begin(), h.matrix().data().end());
    jacobi_sweeps(w.data(), nullptr, n, std::max(1.0, h.matrix().frobenius_norm()));
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = w[i * n + i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

double lambda_max(const HermitianMatrix& h) { return hermitian_eigenvalues(h).back(); }

double lambda_min(const HermitianMatrix& h) { return hermitian_eigenvalues(h).front(); }

double spectral_norm(const HermitianMatrix& h) {
    const auto ev = hermitian_eigenvalues(h);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

HermitianMatrix matrix_function(const HermitianMatrix& h, const ScalarFn& f) {
    const std::size_t n = h.dim();
    // Polynomial shortcuts keep quadrature-heavy callers cheap and exact.
    if (f.kind == ScalarFn::Kind::Identity) return h;
    if (f.kind == ScalarFn::Kind::PowerR && f.r == 1.0) return h;
    if (f.kind == ScalarFn::Kind::Square || (f.kind == ScalarFn::Kind::PowerR && f.r == 2.0))
        return HermitianMatrix::closest(h.matrix() * h.matrix());

    auto d = hermitian_eig(h);
    const double norm_h =
        std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
    const double eps_clamp = 1e-10 * (1.0 + norm_h);
    std::vector<double> fv(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lam = d.eigenvalues[k];
        if (f.requires_nonneg_domain && lam < 0.0) {
            if (lam < -eps_clamp)
                throw std::domain_error("matrix_function: eigenvalue " + std::to_string(lam) +
                                        " below the domain of " + f.label);
            lam = 0.0;
        }
        fv[k] = f(lam);
    }
    // U f(Lambda) U*
    HermitianMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cdouble acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += fv[k] * d.unitary(i, k) * std::conj(d.unitary(j, k));
            r.set(i, j, acc);
        }
    }
    return r;
}

HermitianMatrix operator_abs(const ComplexMatrix& a) {
    const auto gram = HermitianMatrix::closest(a.adjoint() * a);
    auto d = hermitian_eig(gram);
    const std::size_t n = a.dim();
    HermitianMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cdouble acc{};
            for (std::size_t k = 0; k < n; ++k) {
                // A*A is PSD in exact arithmetic; negative rounding is clamped.
                const double lam = std::max(0.0, d.eigenvalues[k]);
                acc += std::sqrt(lam) * d.unitary(i, k) * std::conj(d.unitary(j, k));
            }
            r.set(i, j, acc);
        }
    }
    return r;
}

double operator_norm(const ComplexMatrix& a) {
    const auto gram = HermitianMatrix::closest(a.adjoint() * a);
    return std::sqrt(std::max(0.0, lambda_max(gram)));
}

bool loewner_leq(const HermitianMatrix& p, const HermitianMatrix& q, double tol) {
    if (p.dim() != q.dim()) throw std::invalid_argument("loewner_leq: dimension mismatch");
    const double slack = tol * (1.0 + spectral_norm(p) + spectral_norm(q));
    return lambda_min(q - p) >= -slack;
}

namespace detail {

double lambda_max_inplace(cdouble* w, std::size_t n) {
    if (n == 1) return w[0].real();
    if (n == 2) {
        const double a = w[0].real();
        const double d = w[3].real();
        return 0.5 * (a + d) + std::hypot(0.5 * (a - d), std::abs(w[1]));
    }
    double fro = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) fro += std::norm(w[k]);
    jacobi_sweeps(w, nullptr, n, std::max(1.0, std::sqrt(fro)));
    double best = w[0].real();
    for (std::size_t i = 1; i < n; ++i) best = std::max(best, w[i * n + i].real());
    return best;
}

}  // namespace detail

}  // namespace nri
