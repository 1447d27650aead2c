#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace nhosc {

using cplx = std::complex<double>;

/// Uniform spatial grid. Nodes are real; when imag_shift != 0 the grid
/// represents samples along the line Im x = imag_shift, which is how the
/// contour-shifted energy functional is evaluated.
struct SpatialGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_points = 0;
    double imag_shift = 0.0;

    double spacing() const { return (x_max - x_min) / double(n_points - 1); }
    double node(int i) const { return x_min + spacing() * i; }
    cplx point(int i) const { return {node(i), imag_shift}; }

    bool operator==(const SpatialGrid&) const = default;
};

SpatialGrid build_grid(double center, double half_width, int n_points,
                       double imag_shift = 0.0);

/// Complex amplitudes on a grid at one time stamp.
struct WavefunctionGrid {
    SpatialGrid grid;
    std::vector<cplx> values;
    double t = 0.0;

    double max_abs() const;
    /// max boundary magnitude relative to the peak; the BoundaryLeak guard
    /// compares this against 1e-10
    double boundary_fraction() const;
};

void check_boundary(const WavefunctionGrid& psi, double threshold = 1e-10);

/// Pointwise sampling of f on the grid nodes (with the imaginary shift
/// applied); throws BoundaryLeak if the tails do not vanish.
WavefunctionGrid sample_state(const std::function<cplx(cplx)>& f,
                              const SpatialGrid& grid, double t = 0.0);

/// Composite Simpson weights on a uniform grid; falls back to a 3/8 block at
/// the end when the interval count is odd.
std::vector<double> simpson_weights(int n_points, double spacing);

cplx integrate(const std::vector<cplx>& f, const SpatialGrid& grid);

}  // namespace nhosc
