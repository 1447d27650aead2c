#pragma once

#include <functional>
#include <vector>

#include "nhosc/analytic.hpp"
#include "nhosc/auxiliary.hpp"
#include "nhosc/grid.hpp"
#include "nhosc/profiles.hpp"

namespace nhosc {

/// Composite-Simpson quadrature of conj(a) * b. Both states must live on the
/// same spatial grid.
cplx inner_product(const WavefunctionGrid& a, const WavefunctionGrid& b);

enum class EnergyMethod { AnalyticDerivative, FiniteDifference };

/// <E>(t) = <psi| i hbar d/dt psi> / <psi|psi> with the time derivative taken
/// by 4th-order central differences of the supplied states. The returned
/// value is the full complex ratio; the imaginary part is the reality
/// diagnostic and is never discarded. The sampling contour of the supplied
/// grids decides which functional this is: real-line grids give the naive
/// expectation, grids shifted to Im x = eta(t) give the contour functional
/// under which the energies come out real.
cplx energy_expectation(const std::function<WavefunctionGrid(double)>& state_at,
                        double t, double dt_fd, double hbar = 1.0);

/// Same functional with an analytic d psi/dt instead of finite differences.
cplx energy_expectation_analytic(const WavefunctionGrid& psi,
                                 const WavefunctionGrid& dpsi_dt, double hbar);

/// gamma_dot(t): time derivative of the accumulated phase integral divided by
/// hbar, evaluated from the stored transformation data (not from the printed
/// closed form).
double gamma_dot_derived(const AuxiliarySolution& aux, const ParameterSet& params,
                         double t);

/// Resolved closed-form energy for the constant-parameter linear-lambda case:
///   <n|E|n> = (n + 1/2) hbar w0 - hbar * gamma_dot_derived(t).
/// Valid for n in {0, 1} (the displays the validation targets), enforced.
double closed_form_energy(int n, double t, const ParameterSet& params,
                          const AuxiliarySolution& aux);

/// The two displays exactly as printed in the source material (including its
/// gamma), evaluated for the validation report.
double closed_form_energy_paper(int n, double t, const ParameterSet& params,
                                const AuxiliarySolution& aux);

struct EnergySample {
    int n = 0;
    double t = 0.0;
    cplx E{};
    double E_closed_derived = 0.0;
    double E_closed_paper = 0.0;  // NaN when no display exists for this n
};

struct EnergyReport {
    std::vector<EnergySample> samples;
    double max_imag_rel = 0.0;  // max |Im E| / (|Re E| + hbar w0)
    std::vector<double> gamma_dot;
    EnergyMethod method = EnergyMethod::FiniteDifference;
    bool pass = false;  // max_imag_rel < 1e-7
};

struct RealityScanOptions {
    double dt_fd = 2.5e-3;
    int grid_points = 8193;
    /// Evaluate along Im x = eta(t). This realizes the conjugation
    /// convention under which the reference computation is real; switching it
    /// off evaluates the naive real-line functional instead.
    bool shift_contour = true;
};

/// Runs energy_expectation on psi_n for n = 0..n_max over t_grid and fills an
/// EnergyReport. PASS iff max_imag_rel < 1e-7.
EnergyReport reality_scan(int n_max, const std::vector<double>& t_grid,
                          const ParameterSet& params, const AuxiliarySolution& aux,
                          RealityScanOptions opts = {});

/// Builder for the grid used by energy scans: half width
/// 8 sqrt(hbar/(m0 w0)) + 2|eta| plus mode spread, centered on the
/// instantaneous centroid.
SpatialGrid energy_scan_grid(int n_max, double t, const ParameterSet& params,
                             const AuxiliarySolution& aux, int n_points,
                             bool shift_contour);

}  // namespace nhosc
