#include "nhosc/evolve.hpp"

#include <cmath>
#include <vector>

#include "nhosc/errors.hpp"

namespace nhosc {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Thomas algorithm for a complex tridiagonal system with constant
/// off-diagonal `off` and per-row diagonal `diag`.
void solve_tridiagonal(const std::vector<cplx>& diag, cplx off,
                       std::vector<cplx>& rhs) {
    const std::size_t n = diag.size();
    std::vector<cplx> c_prime(n);
    cplx pivot = diag[0];
    if (std::abs(pivot) < 1e-300) throw LinearSolveFailure("zero pivot");
    c_prime[0] = off / pivot;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - off * c_prime[i - 1];
        if (std::abs(pivot) < 1e-300) throw LinearSolveFailure("zero pivot");
        c_prime[i] = off / pivot;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c_prime[i] * rhs[i + 1];
}

}  // namespace

WavefunctionGrid evolve(const WavefunctionGrid& psi_in, const ParameterSet& params,
                        double t_final, double dt, EvolveOptions opts) {
    if (!(dt > 0.0)) throw InvalidParameters("dt must be positive");
    check_boundary(psi_in);

    const double t0 = psi_in.t;
    if (t_final == t0) return psi_in;
    const double span = t_final - t0;
    if (span < 0.0) throw InvalidParameters("evolve only runs forward in time");

    if (opts.enforce_dt_cap) {
        const double w_max = params.max_omega({std::min(t0, t_final),
                                               std::max(t0, t_final) + 1e-12});
        if (w_max > 0.0 && dt > 1e-3 * (2.0 * kPi / w_max))
            throw InvalidParameters("dt exceeds 1e-3 * (2 pi / omega_max)");
    }

    const SpatialGrid& grid = psi_in.grid;
    const int n = grid.n_points;
    const double h = grid.spacing();
    const double hbar = params.hbar();

    const long nsteps = std::lround(std::ceil(span / dt - 1e-12));
    const double step = span / double(nsteps);

    std::vector<cplx> psi = psi_in.values;
    std::vector<cplx> rhs(n - 2), diag(n - 2);

    double t = t0;
    for (long k = 0; k < nsteps; ++k) {
        const double th = t + 0.5 * step;  // half-step coefficients
        const double m = params.mass(th);
        const double w2 = params.omega_sq(th);
        const double lam = params.lambda(th);

        const cplx r = cplx(0.0, 1.0) * step / (2.0 * hbar);
        const cplx kin_diag = hbar * hbar / (m * h * h);
        const cplx off = r * (-hbar * hbar / (2.0 * m * h * h));

        for (int i = 1; i + 1 < n; ++i) {
            const cplx x = grid.point(i);
            const cplx v = 0.5 * m * w2 * x * x + opts.linear_coupling * lam * x;
            const cplx a = r * (kin_diag + v);
            diag[i - 1] = 1.0 + a;
            rhs[i - 1] = (1.0 - a) * psi[i] - off * (psi[i - 1] + psi[i + 1]);
        }
        solve_tridiagonal(diag, off, rhs);
        for (int i = 1; i + 1 < n; ++i) psi[i] = rhs[i - 1];
        psi[0] = 0.0;
        psi[n - 1] = 0.0;
        t += step;
    }

    WavefunctionGrid out{grid, std::move(psi), t_final};
    check_boundary(out);
    return out;
}

WavefunctionGrid apply_hamiltonian(const WavefunctionGrid& psi,
                                   const ParameterSet& params, double t,
                                   EvolveOptions opts) {
    const SpatialGrid& grid = psi.grid;
    const int n = grid.n_points;
    const double h = grid.spacing();
    const double hbar = params.hbar();
    const double m = params.mass(t);
    const double w2 = params.omega_sq(t);
    const double lam = params.lambda(t);
    const auto& f = psi.values;

    WavefunctionGrid out{grid, std::vector<cplx>(n), t};
    const double inv12h2 = 1.0 / (12.0 * h * h);
    for (int i = 0; i < n; ++i) {
        cplx d2;
        if (i >= 2 && i + 2 < n) {
            d2 = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] -
                  f[i - 2]) * inv12h2;
        } else if (i >= 1 && i + 1 < n) {
            d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
        } else {
            d2 = 0.0;
        }
        const cplx x = grid.point(i);
        const cplx v = 0.5 * m * w2 * x * x + opts.linear_coupling * lam * x;
        out.values[i] = -hbar * hbar / (2.0 * m) * d2 + v * f[i];
    }
    return out;
}

}  // namespace nhosc
