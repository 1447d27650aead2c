#include "nhosc/analytic.hpp"

#include <cmath>

#include "nhosc/errors.hpp"
#include "nhosc/hermite.hpp"

namespace nhosc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

// Gaussian-envelope normalization; the 1/sqrt(2^n n!) factor lives inside
// the scaled Hermite recurrence already.
double log_envelope_norm(double m0, double omega0, double hbar) {
    return 0.25 * std::log(m0 * omega0 / (kPi * hbar));
}

void check_caustic(double w0_dtau, double damping) {
    if (damping != 0.0) return;
    if (std::abs(std::remainder(w0_dtau, kPi)) < 1e-6)
        throw CausticError("kernel evaluated too close to a caustic");
}

}  // namespace

TransformedPoint TransformedPoint::from_physical(double x, double t,
                                                 const AuxiliarySolution& aux) {
    const double s = aux.s(t);
    return {cplx(x, -aux.eta(t)) / s, aux.tau(t)};
}

cplx TransformedPoint::reconstruct(double t, const AuxiliarySolution& aux) const {
    return aux.s(t) * y + cplx(0.0, aux.eta(t));
}

cplx sigma_n(int n, cplx y, double tau, double m0, double omega0, double hbar) {
    const double alpha = std::sqrt(m0 * omega0 / hbar);
    const auto h = hermite_normalized(n, alpha * y);
    const cplx log_rest = log_envelope_norm(m0, omega0, hbar) -
                          0.5 * alpha * alpha * y * y -
                          kI * (n + 0.5) * omega0 * tau +
                          double(h.exponent) * std::log(2.0);
    return h.mantissa * std::exp(log_rest);
}

ModeState::ModeState(const AuxiliarySolution& aux, const ParameterSet& params,
                     double t)
    : t_(t),
      s_(aux.s(t)),
      eta_(aux.eta(t)),
      tau_(aux.tau(t)),
      m0_(aux.m0),
      omega0_(aux.omega0),
      hbar_(params.hbar()) {
    const double m = params.mass(t);
    quad_coeff_ = kI * 0.5 * m * s_ * aux.s_dot(t) / hbar_;
    lin_coeff_ = -(m * s_ * aux.eta_dot(t)) / hbar_;  // i * (i m s eta_dot)/hbar
    const_term_ = kI * aux.f_tau_integral(t) / hbar_;
}

cplx ModeState::psi(int n, cplx x) const {
    const cplx y = y_of(x);
    const double alpha = std::sqrt(m0_ * omega0_ / hbar_);
    const auto h = hermite_normalized(n, alpha * y);
    // i f(y) with the log part applied as the exact real factor s^{-1/2}
    const cplx exponent = quad_coeff_ * y * y + lin_coeff_ * y + const_term_ +
                          log_envelope_norm(m0_, omega0_, hbar_) -
                          0.5 * alpha * alpha * y * y -
                          kI * (n + 0.5) * omega0_ * tau_ +
                          double(h.exponent) * std::log(2.0);
    return h.mantissa * std::exp(exponent) / std::sqrt(s_);
}

cplx ModeState::dual(int n, cplx x) const {
    const cplx y = y_of(x);
    const double alpha = std::sqrt(m0_ * omega0_ / hbar_);
    const auto h = hermite_normalized(n, alpha * y);
    // (1/s) e^{-i f(y)} phi_n(y) e^{+i(n+1/2) w0 tau}; the -i * (i ln sqrt(s))
    // part of f turns the 1/s Jacobian into s^{-1/2}
    const cplx exponent = -(quad_coeff_ * y * y + lin_coeff_ * y + const_term_) +
                          log_envelope_norm(m0_, omega0_, hbar_) -
                          0.5 * alpha * alpha * y * y +
                          kI * (n + 0.5) * omega0_ * tau_ +
                          double(h.exponent) * std::log(2.0);
    return h.mantissa * std::exp(exponent) / std::sqrt(s_);
}

cplx psi_n(int n, cplx x, double t, const AuxiliarySolution& aux,
           const ParameterSet& params) {
    return ModeState(aux, params, t).psi(n, x);
}

cplx dual_psi_n(int n, cplx x0, double t0, const AuxiliarySolution& aux,
                const ParameterSet& params) {
    return ModeState(aux, params, t0).dual(n, x0);
}

cplx psi_n_time_derivative(int n, cplx x, double t, const AuxiliarySolution& aux,
                           const ParameterSet& params) {
    if (!params.is_linear_lambda_constant_case())
        throw UnsupportedCase(
            "analytic time derivative implemented for the constant-parameter "
            "linear-lambda case only");
    const double hbar = params.hbar();
    const double m = params.mass(t);
    const double w2 = params.omega_sq(t);
    const double lam = params.lambda(t);
    const double w0 = aux.omega0;
    const double eta = aux.eta(t);
    const double etad = aux.eta_dot(t);

    const cplx y = x - kI * eta;  // s == 1
    const double alpha = std::sqrt(aux.m0 * w0 / hbar);

    // d/dt at fixed x: dy/dt = -i eta_dot, and eta_ddot = 0 for lambda = a t
    const cplx dydt = -kI * etad;
    const double Fdot =
        0.5 * (m * w2 * eta * eta + 2.0 * lam * eta - m * etad * etad);
    const cplx dfdt = (kI * m * etad * dydt + Fdot) / hbar;

    const cplx Hn = hermite(n, alpha * y);
    const cplx Hnm1 = (n > 0) ? hermite(n - 1, alpha * y) : cplx(0.0);
    // d sigma_n/dt = [2 n alpha H_{n-1} dydt + H_n (-alpha^2 y dydt
    //                 - i (n+1/2) w0)] * (envelope)
    const cplx dmode_times_Hn =
        2.0 * double(n) * alpha * dydt * Hnm1 +
        Hn * (-alpha * alpha * y * dydt - kI * (n + 0.5) * w0);

    const ModeState state(aux, params, t);
    // envelope = psi_n without its H_n factor: rescale the ground state by
    // the mode normalization and the extra phase
    const double mode_scale =
        std::exp(-0.5 * (n * std::log(2.0) + std::lgamma(double(n) + 1.0)));
    const cplx envelope = state.psi(0, x) * mode_scale *
                          std::exp(-kI * double(n) * w0 * aux.tau(t));
    return envelope * (kI * dfdt * Hn + dmode_times_Hn);
}

PropagatorKernel::Prepared PropagatorKernel::prepare(double t, double t0) const {
    const double w0 = aux->omega0;
    const double hbar = params->hbar();
    const double dtau = aux->tau(t) - aux->tau(t0);
    check_caustic(w0 * dtau, damping);
    const cplx theta = w0 * dtau - kI * damping;

    Prepared p;
    p.s = aux->s(t);
    p.s0 = aux->s(t0);
    p.eta = aux->eta(t);
    p.eta0 = aux->eta(t0);

    const cplx sin_th = std::sin(theta);
    const cplx cos_th = std::cos(theta);
    const cplx A = kI * aux->m0 * w0 / (2.0 * hbar * sin_th);

    const double m = params->mass(t);
    const double m_0 = params->mass(t0);
    const cplx q1 = kI * 0.5 * m * p.s * aux->s_dot(t) / hbar;
    const cplx q0 = kI * 0.5 * m_0 * p.s0 * aux->s_dot(t0) / hbar;
    const cplx l1 = -(m * p.s * aux->eta_dot(t)) / hbar;
    const cplx l0 = -(m_0 * p.s0 * aux->eta_dot(t0)) / hbar;

    p.c_yy = q1 + A * cos_th;
    p.c_y0y0 = -q0 + A * cos_th;
    p.c_cross = -2.0 * A;
    p.c_y = l1;
    p.c_y0 = -l0;
    // i(I - I0)/hbar plus the amplitude logs: s^{-1/2} from e^{if}, and
    // e^{-i f0}/s0 contributing s0^{+1/2 - 1}
    p.c_const = kI * (aux->f_tau_integral(t) - aux->f_tau_integral(t0)) / hbar -
                0.5 * std::log(p.s) - 0.5 * std::log(p.s0);
    p.pref = std::sqrt(aux->m0 * w0 / (2.0 * kPi * kI * hbar * sin_th));
    return p;
}

cplx PropagatorKernel::evaluate(double x, double t, double x0, double t0) const {
    return prepare(t, t0).eval(x, x0);
}

cplx PropagatorKernel::mehler_partial_sum(int n_terms, double x, double t,
                                          double x0, double t0) const {
    if (n_terms < 0) throw InvalidParameters("partial sum needs N >= 0");
    const double w0 = aux->omega0;
    const double hbar = params->hbar();
    const double dtau = aux->tau(t) - aux->tau(t0);
    check_caustic(w0 * dtau, damping);
    const cplx theta = w0 * dtau - kI * damping;

    const ModeState st(*aux, *params, t);
    const ModeState st0(*aux, *params, t0);
    const cplx y = st.y_of(cplx(x, 0.0));
    const cplx y0 = st0.y_of(cplx(x0, 0.0));
    const double alpha = std::sqrt(aux->m0 * w0 / hbar);
    const cplx a = alpha * y;
    const cplx b = alpha * y0;

    // spectral sum (alpha/sqrt(pi)) e^{-(a^2+b^2)/2 - i theta/2}
    //   * sum_n A_n(a) A_n(b) c^n,  c = e^{-i theta},
    // accumulated with the normalized Hermite recurrence
    const cplx c = std::exp(-kI * theta);
    cplx am1 = 1.0, bm1 = 1.0;                              // A_0
    cplx an = std::sqrt(2.0) * a, bn = std::sqrt(2.0) * b;  // A_1
    cplx cpow = 1.0;
    cplx series = am1 * bm1;
    for (int n = 1; n <= n_terms; ++n) {
        cpow *= c;
        if (n >= 2) {
            const double k = double(n - 1);
            const cplx ap = std::sqrt(2.0 / (k + 1.0)) * a * an -
                            std::sqrt(k / (k + 1.0)) * am1;
            const cplx bp = std::sqrt(2.0 / (k + 1.0)) * b * bn -
                            std::sqrt(k / (k + 1.0)) * bm1;
            am1 = an;
            an = ap;
            bm1 = bn;
            bn = bp;
        }
        series += cpow * an * bn;
    }

    const cplx k0 = alpha / std::sqrt(kPi) *
                    std::exp(-0.5 * (a * a + b * b) - 0.5 * kI * theta) * series;
    const cplx f1 = phase_f(*aux, *params, y, t);
    const cplx f0 = phase_f(*aux, *params, y0, t0);
    return std::exp(kI * f1) * k0 * std::exp(-kI * f0) / aux->s(t0);
}

cplx propagator(const PropagatorKernel& kernel, double x, double t, double x0,
                double t0) {
    return kernel.evaluate(x, t, x0, t0);
}

cplx mehler_partial_sum(const PropagatorKernel& kernel, int n_terms, double x,
                        double t, double x0, double t0) {
    return kernel.mehler_partial_sum(n_terms, x, t, x0, t0);
}

WavefunctionGrid kernel_apply(const PropagatorKernel& kernel,
                              const WavefunctionGrid& psi0, double t,
                              std::optional<SpatialGrid> out_grid) {
    if (psi0.boundary_fraction() >= 1e-12)
        throw BoundaryLeak("kernel_apply input has non-negligible tails");
    const SpatialGrid out = out_grid.value_or(psi0.grid);
    const auto w = simpson_weights(psi0.grid.n_points, psi0.grid.spacing());
    const auto prepared = kernel.prepare(t, psi0.t);

    WavefunctionGrid result;
    result.grid = out;
    result.t = t;
    result.values.assign(out.n_points, 0.0);
    for (int i = 0; i < out.n_points; ++i) {
        const double x = out.node(i);
        cplx acc = 0.0;
        for (int j = 0; j < psi0.grid.n_points; ++j)
            acc += w[j] * prepared.eval(x, psi0.grid.node(j)) * psi0.values[j];
        result.values[i] = acc;
    }
    return result;
}

}  // namespace nhosc
