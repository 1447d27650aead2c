#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "nhosc/errors.hpp"

namespace nhosc {

/// Adaptive embedded Runge-Kutta 5(4), Dormand-Prince coefficients.
/// integrate_to() advances the state exactly to the requested time by
/// shortening the last step, so callers can sample a uniform mesh without a
/// dense-output interpolant.
class Dopri5 {
public:
    using Rhs = std::function<void(double t, const std::vector<double>& y,
                                   std::vector<double>& dydt)>;

    Dopri5(Rhs rhs, std::vector<double> y0, double t0, double rtol = 1e-10,
           double atol = 1e-12);

    void integrate_to(double t_end);

    double t() const { return t_; }
    const std::vector<double>& y() const { return y_; }

    /// Optional per-step watchdog (e.g. singularity guards); throwing from it
    /// aborts the integration.
    std::function<void(double, const std::vector<double>&)> on_step;

private:
    Rhs rhs_;
    std::vector<double> y_;
    double t_;
    double rtol_, atol_;
    double h_ = 0.0;  // current step proposal
    std::vector<double> k_[7], y_try_, y_err_;

    double attempt_step(double h);  // returns error norm, fills y_try_
};

}  // namespace nhosc
