#pragma once

#include <array>
#include <cstdint>

namespace hypercox {

struct VolumeInterval {
    double lo = 0, hi = 0;
    double mid() const { return (lo + hi) / 2; }
    double radius() const { return (hi - lo) / 2; }
};

struct SphericalVolumeOptions {
    double tolerance = 2e-3;      // requested interval radius
    long max_cells = 40'000'000;  // subdivision budget before the fallback
    std::uint64_t seed = 1;       // Monte-Carlo fallback seed
    long mc_samples = 10'000'000;
    bool* used_monte_carlo = nullptr;
};

/// Volume of the spherical tetrahedron S^3 ∩ cone(t_1..t_4), specified by the
/// (positive definite) Gram matrix of the four extreme directions.
///
/// Deterministic evaluation: the cone section E on a transversal hyperplane is
/// a Euclidean tetrahedron, and the solid angle is the integral of
/// |y|^-4 / |w| over E. That integral is computed by recursive simplex
/// bisection with a midpoint rule and a rigorous second-order remainder bound,
/// so the returned interval encloses the true value up to floating-point slop
/// (inflated into the bounds). Falls back to seeded Monte-Carlo sampling (the
/// interval then covers +-4 standard errors) if the budget is exhausted.
VolumeInterval spherical_tetrahedron_volume(const std::array<std::array<double, 4>, 4>& gram,
                                            const SphericalVolumeOptions& opt = {});

} // namespace hypercox
