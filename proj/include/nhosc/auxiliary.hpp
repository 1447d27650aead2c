#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nhosc/profiles.hpp"
#include "nhosc/spline.hpp"

namespace nhosc {

using cplx = std::complex<double>;

struct TimeSpan {
    double t_start = 0.0;
    double t_end = 1.0;
};

/// tau(t) = int mu dt and its integrand on the solution mesh. tau is strictly
/// increasing because mu = m0/(m s^2) stays positive while the solve runs.
struct TimeReparametrization {
    std::vector<double> t_mesh;
    std::vector<double> tau_values;
    std::vector<double> mu_values;
};

struct AuxInitialConditions {
    double s0 = 1.0;
    double s_dot0 = 0.0;
    double eta0 = 0.0;
    double eta_dot0 = 0.0;
};

/// Transformation data on a uniform t mesh: scale factor s, imaginary shift
/// eta, reparametrized clock tau, the factorization constants m0, omega0 and
/// the accumulated phase integral. The log part of f_tau, i*ln(sqrt(s)), is
/// kept separate so downstream code can apply the s^{-1/2} amplitude exactly.
struct AuxiliarySolution {
    TimeReparametrization reparam;
    std::vector<double> s_values, s_dot_values;
    std::vector<double> eta_values, eta_dot_values;
    std::vector<double> f_tau_integral_values;
    std::vector<double> Omega_sq_values;
    double m0 = 1.0;
    double omega0 = 1.0;
    AuxInitialConditions init;
    double rtol = 1e-10, atol = 1e-12;

    double s(double t) const;
    double s_dot(double t) const;
    double eta(double t) const;
    double eta_dot(double t) const;
    double tau(double t) const;
    double mu(double t) const;
    double f_tau_integral(double t) const;

    double t_start() const { return reparam.t_mesh.front(); }
    double t_end() const { return reparam.t_mesh.back(); }

    /// True when the solution is the exact identity transformation
    /// (s == 1, eta == 0); lets callers short-circuit to the textbook case.
    bool is_identity() const {
        for (double v : s_values)
            if (v != 1.0) return false;
        for (double v : eta_values)
            if (v != 0.0) return false;
        return true;
    }

    void build_interpolants();

    CubicSpline s_spline, s_dot_spline, eta_spline, eta_dot_spline, tau_spline,
        integral_spline;
    std::function<double(double)> params_mass_;
    double mass_at(double t) const;
};

struct AuxResiduals {
    double c1 = 0.0;  // |m s^2 mu - m0| / m0
    double c2 = 0.0;  // |(m s^2/mu)(w^2 + Omega^2) - m0 w0^2| / (m0 w0^2)
    double c3 = 0.0;  // |d/dt(m s eta_dot) + s(m w^2 eta + lambda)|
};

/// Non-oscillating initial conditions for the particular case, identity
/// defaults otherwise.
AuxInitialConditions default_initial_conditions(const ParameterSet& params,
                                                double t_start);

/// Integrates the coupled scale-factor/shift system in original time with an
/// adaptive RK5(4) stepper and samples it onto a uniform mesh.
/// Throws SingularSolution if s(t) collapses below 1e-8*s0 and
/// ToleranceFailure if the factorization constraints fail on the result.
AuxiliarySolution solve_auxiliary(const ParameterSet& params,
                                  const AuxInitialConditions& init, TimeSpan span,
                                  double omega0, double m0, int mesh_size,
                                  double rtol = 1e-10, double atol = 1e-12);

/// Closed-form transformation data for constant m, omega and lambda = a*t:
/// s = 1, mu = 1, tau = t, eta = -a t/(m w^2).
AuxiliarySolution constant_case_solution(double m, double omega, double a,
                                         TimeSpan span, double hbar = 1.0,
                                         int mesh_size = 1001);

/// Constraint residuals rebuilt from spline derivatives of the stored mesh
/// data, independent of the algebra used in the solver.
AuxResiduals residuals(const AuxiliarySolution& aux, const ParameterSet& params,
                       double t);

/// Phase function f(y, tau(t)) with hbar reinstated: the quadratic/linear
/// parts and the running integral carry 1/hbar, the i*ln(sqrt(s)) part does
/// not.
cplx phase_f(const AuxiliarySolution& aux, const ParameterSet& params, cplx y,
             double t);

}  // namespace nhosc
