#pragma once

#include <vector>

#include "nri/matrix.hpp"
#include "nri/scalar_fn.hpp"

namespace nri {

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix unitary;            // columns are eigenvectors
};

/// Cyclic complex Jacobi diagonalization.  Converges until the off-diagonal
/// mass is at rounding level; throws on non-convergence after 100 sweeps.
EigenDecomposition hermitian_eig(const HermitianMatrix& h, double tol = 1e-10);

/// Eigenvalues only (ascending); skips eigenvector accumulation.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h);

double lambda_max(const HermitianMatrix& h);
double lambda_min(const HermitianMatrix& h);

/// Spectral norm of a Hermitian matrix: max |lambda|.
double spectral_norm(const HermitianMatrix& h);

/// f(H) = U f(Lambda) U*.  Eigenvalues in [-eps_clamp, 0) are clamped to 0
/// before applying an f whose domain is [0, inf); smaller eigenvalues raise
/// std::domain_error for such f.
HermitianMatrix matrix_function(const HermitianMatrix& h, const ScalarFn& f);

/// |A| = (A*A)^{1/2}.
HermitianMatrix operator_abs(const ComplexMatrix& a);

/// Largest singular value, sqrt(lambda_max(A*A)).
double operator_norm(const ComplexMatrix& a);

/// Loewner order test: P <= Q iff lambda_min(Q - P) >= -tol*(1 + |P| + |Q|).
bool loewner_leq(const HermitianMatrix& p, const HermitianMatrix& q, double tol = 1e-10);

namespace detail {
/// lambda_max for a Hermitian matrix given by its raw row-major buffer.
/// Closed form at n = 2, eigenvalue-only Jacobi otherwise.  The buffer is
/// clobbered.  Used on the hot path of the numerical-radius grid scan.
double lambda_max_inplace(cdouble* w, std::size_t n);
}  // namespace detail

}  // namespace nri
