#pragma once

#include <complex>
#include <optional>

#include "nhosc/auxiliary.hpp"
#include "nhosc/grid.hpp"
#include "nhosc/profiles.hpp"

namespace nhosc {

/// Transformed coordinate y = (x - i eta(t)) / s(t) and the rescaled clock.
struct TransformedPoint {
    cplx y;
    double tau;

    static TransformedPoint from_physical(double x, double t,
                                          const AuxiliarySolution& aux);
    /// Reconstructs the physical coordinate s*y + i*eta; for points built
    /// from real x the imaginary residue stays below 1e-12.
    cplx reconstruct(double t, const AuxiliarySolution& aux) const;
};

/// Stationary eigenmode of the transformed constant oscillator, evaluated in
/// log space so complex y with large |Im y| cannot overflow:
///   sigma_n(y, tau) = N_n H_n(alpha y) exp(-alpha^2 y^2 / 2 - i(n+1/2) w0 tau)
/// with alpha = sqrt(m0 w0 / hbar).
cplx sigma_n(int n, cplx y, double tau, double m0, double omega0, double hbar);

/// Transformation data frozen at one time stamp; evaluates modes and their
/// kernel duals without re-reading the solution splines per grid node.
class ModeState {
public:
    ModeState(const AuxiliarySolution& aux, const ParameterSet& params, double t);

    cplx psi(int n, cplx x) const;
    cplx dual(int n, cplx x) const;

    double t() const { return t_; }
    cplx y_of(cplx x) const { return (x - cplx(0.0, eta_)) / s_; }

private:
    double t_, s_, eta_, tau_, m0_, omega0_, hbar_;
    cplx quad_coeff_;   // i * (m s s_dot / 2) / hbar
    cplx lin_coeff_;    // i * i m s eta_dot / hbar = -(m s eta_dot)/hbar
    cplx const_term_;   // i * integral / hbar  (log part applied as 1/sqrt(s))
    friend struct PropagatorKernel;
};

/// Physical wavefunction psi_n(x, t) = e^{i f(y,tau)} sigma_n(y, tau); the
/// s^{-1/2} amplitude is applied exactly through the log part of f_tau.
/// x may be complex (contour-shifted evaluation).
cplx psi_n(int n, cplx x, double t, const AuxiliarySolution& aux,
           const ParameterSet& params);

/// Initial-time dual mode: the companion factor of psi_n in the spectral
/// form of the kernel, (1/s0) e^{-i f(y0,tau0)} phi_n(y0) e^{+i(n+1/2) w0 tau0}.
/// For lambda = 0 this reduces to the complex conjugate of psi_n.
cplx dual_psi_n(int n, cplx x0, double t0, const AuxiliarySolution& aux,
                const ParameterSet& params);

/// d psi_n / dt at fixed x for the constant-parameter case (eta_ddot = 0,
/// s == 1); used by the AnalyticDerivative energy path.
cplx psi_n_time_derivative(int n, cplx x, double t, const AuxiliarySolution& aux,
                           const ParameterSet& params);

/// Exact propagator  K(x,t;x0,t0) = e^{i f(y,tau)} K0(y,tau;y0,tau0)
/// e^{-i f(y0,tau0)} / s0  with K0 the constant-oscillator kernel in the
/// transformed variables. `damping` adds a negative imaginary part to
/// w0 (tau - tau0); the spectral sum converges geometrically there and the
/// closed form is its analytic continuation (physical kernel at damping 0).
struct PropagatorKernel {
    const AuxiliarySolution* aux = nullptr;
    const ParameterSet* params = nullptr;
    double damping = 0.0;

    /// Endpoint times fixed, all x-dependence reduced to one complex exp.
    struct Prepared {
        double s, s0, eta, eta0;
        cplx c_yy, c_y0y0, c_cross, c_y, c_y0, c_const;
        cplx pref;

        cplx eval(double x, double x0) const {
            const cplx y{x / s, -eta / s};
            const cplx y0{x0 / s0, -eta0 / s0};
            return pref * std::exp(c_yy * y * y + c_y0y0 * y0 * y0 +
                                   c_cross * y * y0 + c_y * y + c_y0 * y0 +
                                   c_const);
        }
    };

    Prepared prepare(double t, double t0) const;
    cplx evaluate(double x, double t, double x0, double t0) const;
    cplx mehler_partial_sum(int n_terms, double x, double t, double x0,
                            double t0) const;
};

cplx propagator(const PropagatorKernel& kernel, double x, double t, double x0,
                double t0);
cplx mehler_partial_sum(const PropagatorKernel& kernel, int n_terms, double x,
                        double t, double x0, double t0);

/// psi(x,t) = int K(x,t;x0,t0) psi0(x0) dx0 by composite Simpson over the
/// input grid, evaluated at each node of `out_grid` (defaults to the input
/// grid). Throws BoundaryLeak when psi0 tails exceed 1e-12 of the peak.
WavefunctionGrid kernel_apply(const PropagatorKernel& kernel,
                              const WavefunctionGrid& psi0, double t,
                              std::optional<SpatialGrid> out_grid = std::nullopt);

}  // namespace nhosc
