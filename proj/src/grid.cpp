#include "nhosc/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nhosc/errors.hpp"

namespace nhosc {

SpatialGrid build_grid(double center, double half_width, int n_points,
                       double imag_shift) {
    if (!(half_width > 0.0)) throw BadGridSpec("half_width must be positive");
    if (n_points < 64) throw BadGridSpec("need at least 64 grid points");
    return {center - half_width, center + half_width, n_points, imag_shift};
}

double WavefunctionGrid::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

double WavefunctionGrid::boundary_fraction() const {
    const double peak = max_abs();
    if (peak == 0.0) return 0.0;
    return std::max(std::abs(values.front()), std::abs(values.back())) / peak;
}

void check_boundary(const WavefunctionGrid& psi, double threshold) {
    if (psi.boundary_fraction() >= threshold)
        throw BoundaryLeak("wavefunction does not vanish at the grid boundary");
}

WavefunctionGrid sample_state(const std::function<cplx(cplx)>& f,
                              const SpatialGrid& grid, double t) {
    WavefunctionGrid out;
    out.grid = grid;
    out.t = t;
    out.values.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const cplx v = f(grid.point(i));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw BadGridSpec("sampled state is not finite on the grid");
        out.values[i] = v;
    }
    check_boundary(out);
    return out;
}

std::vector<double> simpson_weights(int n_points, double spacing) {
    std::vector<double> w(n_points, 0.0);
    if (n_points < 4) throw BadGridSpec("quadrature needs >= 4 nodes");
    const int intervals = n_points - 1;
    int simpson_end = n_points - 1;  // exclusive end of the 1/3-rule block
    const bool odd = (intervals % 2) != 0;
    if (odd) simpson_end = n_points - 4;  // leave 3 intervals for the 3/8 rule

    for (int i = 0; i < simpson_end; i += 2) {
        w[i] += spacing / 3.0;
        w[i + 1] += 4.0 * spacing / 3.0;
        w[i + 2] += spacing / 3.0;
    }
    if (odd) {
        const int j = n_points - 4;
        w[j] += 3.0 * spacing / 8.0;
        w[j + 1] += 9.0 * spacing / 8.0;
        w[j + 2] += 9.0 * spacing / 8.0;
        w[j + 3] += 3.0 * spacing / 8.0;
    }
    return w;
}

cplx integrate(const std::vector<cplx>& f, const SpatialGrid& grid) {
    if (int(f.size()) != grid.n_points)
        throw GridMismatch("integrand length does not match grid");
    const auto w = simpson_weights(grid.n_points, grid.spacing());
    cplx acc = 0.0;
    for (int i = 0; i < grid.n_points; ++i) acc += w[i] * f[i];
    return acc;
}

}  // namespace nhosc
