#pragma once

#include <complex>

#include "nhosc/grid.hpp"
#include "nhosc/profiles.hpp"

namespace nhosc {

/// Options for the Crank-Nicolson propagator. linear_coupling multiplies
/// lambda(t)*x in the potential; the physical system uses +i, the negative
/// controls use 1 (real drive) and 1+i (mixed coefficient).
struct EvolveOptions {
    cplx linear_coupling{0.0, 1.0};
    bool enforce_dt_cap = true;
};

/// Crank-Nicolson step of the non-unitary Schrodinger equation with the
/// 3-point Laplacian and coefficients frozen at the half step. Dirichlet
/// boundaries; no renormalization is applied anywhere - the norm drift is
/// physical output. Grids with imag_shift sample the same equation along the
/// line Im x = shift.
WavefunctionGrid evolve(const WavefunctionGrid& psi, const ParameterSet& params,
                        double t_final, double dt, EvolveOptions opts = {});

/// H psi with the 5-point 4th-order Laplacian plus the pointwise potential.
/// Edge nodes use one-sided stencils and are excluded from comparisons.
WavefunctionGrid apply_hamiltonian(const WavefunctionGrid& psi,
                                   const ParameterSet& params, double t,
                                   EvolveOptions opts = {});

}  // namespace nhosc
