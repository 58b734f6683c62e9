#pragma once

#include <array>

#include "nri/eig.hpp"
#include "nri/matrix.hpp"
#include "nri/scalar_fn.hpp"

namespace nri {

/// Gauss-Legendre rule on (0, 1): exact for polynomials up to degree
/// 2*#nodes - 1, weights summing to 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights by Newton iteration on the Legendre polynomial,
/// converged to 1e-15; no table dependency.
QuadratureRule gauss_legendre_01(int n);

/// Gauss-Legendre approximation of the operator integral
/// int_0^1 f((1-t)X + tY) dt.  Summation order is fixed (ascending node).
HermitianMatrix hh_integral(const HermitianMatrix& x, const HermitianMatrix& y,
                            const ScalarFn& f, int nodes = 32);

/// The five Loewner-ordered terms of the operator Hermite-Hadamard chain:
///   f((X+Y)/2)
///   <= [f((3X+Y)/4) + f((X+3Y)/4)] / 2
///   <= int_0^1 f((1-t)X + tY) dt
///   <= [f((X+Y)/2) + (f(X)+f(Y))/2] / 2
///   <= (f(X) + f(Y))/2
/// for operator convex f, plus the PSD-gap minima of the four adjacent pairs.
struct HHChain {
    std::array<HermitianMatrix, 5> terms;
    std::array<double, 4> gap_min;  // lambda_min(terms[k+1] - terms[k])
};

HHChain hh_chain(const HermitianMatrix& x, const HermitianMatrix& y, const ScalarFn& f,
                 int nodes = 32, double tol = 1e-8);

}  // namespace nri
