#pragma once

#include <complex>

namespace nhosc {

using cplx = std::complex<double>;

inline constexpr int kHermiteMaxIndex = 200;

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence
/// H_{k+1} = 2 z H_k - 2 k H_{k-1}. Guarded at n <= 200 (IndexTooLarge
/// beyond) where the recurrence stays representable for the arguments the
/// wavefunction code produces.
cplx hermite(int n, cplx z);

/// Scaled value A_n(z) = H_n(z) / sqrt(2^n n!) together with a base-2
/// exponent, A = mantissa * 2^exponent. Stable for all n <= 200; used by the
/// log-space mode evaluation and the spectral kernel sums.
struct ScaledHermite {
    cplx mantissa;
    long exponent;
};
ScaledHermite hermite_normalized(int n, cplx z);

}  // namespace nhosc
