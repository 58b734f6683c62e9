#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nri/matrix.hpp"

namespace nri {

struct RadiusResult {
    double value = 0.0;          // w(A)
    double argmax_theta = 0.0;   // in [0, 2*pi)
    std::vector<cdouble> witness;
    int grid_size = 0;
    double refinement_residual = 0.0;  // conservative bound on the value error
};

/// w(A) = max over theta of lambda_max((e^{i theta} A + e^{-i theta} A*)/2),
/// scanned on a uniform grid and refined by golden-section search around
/// every grid-local maximum until the bracket is narrower than tol.
RadiusResult numerical_radius(const ComplexMatrix& a, int grid = 512, double tol = 1e-12);

/// <Ax, x> for a unit vector x (norm within 1e-12 of 1).
cdouble numerical_range_sample(const ComplexMatrix& a, std::span<const cdouble> x);

struct SupResult {
    double value = 0.0;  // lower estimate of the true sup
    std::vector<cdouble> witness;
};

using UnitSphereObjective = std::function<double(std::span<const cdouble>)>;

/// Best objective value over projected-gradient ascent restarts from random
/// unit starts (central finite differences on the real and imaginary parts,
/// renormalizing each step).  The result is a certified lower estimate of
/// the true sup.  warm_starts, when given, are tried before random starts
/// and count toward the restart budget.
SupResult sup_unit_sphere(const UnitSphereObjective& objective, std::size_t dim,
                          int restarts = 16, double tol = 1e-9, std::uint64_t seed = 0,
                          std::span<const std::vector<cdouble>> warm_starts = {});

}  // namespace nri
