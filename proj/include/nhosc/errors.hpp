#pragma once

#include <stdexcept>
#include <string>

namespace nhosc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define NHOSC_DEFINE_ERROR(Name)                  \
    struct Name : Error {                         \
        using Error::Error;                       \
    }

NHOSC_DEFINE_ERROR(OutOfRange);          // tabulated profile extrapolation
NHOSC_DEFINE_ERROR(InvalidProfile);      // malformed profile definition
NHOSC_DEFINE_ERROR(InvalidParameters);   // m <= 0, omega^2 <= 0, hbar <= 0
NHOSC_DEFINE_ERROR(SingularSolution);    // scale factor s collapsed
NHOSC_DEFINE_ERROR(ToleranceFailure);    // constraint residual out of bounds
NHOSC_DEFINE_ERROR(IndexTooLarge);       // Hermite index above recurrence guard
NHOSC_DEFINE_ERROR(CausticError);        // kernel evaluated at sin[w0 dtau] ~ 0
NHOSC_DEFINE_ERROR(BadGridSpec);         // grid construction guard
NHOSC_DEFINE_ERROR(BoundaryLeak);        // wavefunction tails touch the grid edge
NHOSC_DEFINE_ERROR(GridMismatch);        // binary op on incompatible grids
NHOSC_DEFINE_ERROR(LinearSolveFailure);  // tridiagonal pivot breakdown
NHOSC_DEFINE_ERROR(UnsupportedCase);     // closed form requested outside its domain
NHOSC_DEFINE_ERROR(ConfigError);         // scenario schema violation

#undef NHOSC_DEFINE_ERROR

}  // namespace nhosc
