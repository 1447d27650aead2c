#include <cmath>
#include <vector>

#include <doctest.h>

#include "nhosc/auxiliary.hpp"
#include "nhosc/errors.hpp"
#include "nhosc/profiles.hpp"

using namespace nhosc;

namespace {

ParameterSet unit_params(double a) {
    return ParameterSet(TimeProfile::constant(1.0), TimeProfile::constant(1.0),
                        TimeProfile::linear(a, 0.0), 1.0, {-6.0, 6.0});
}

/// Fixed-step classical RK4 with Richardson extrapolation; the independent
/// reference for the adaptive solver.
std::vector<double> rk4_reference(const ParameterSet& params, double m0, double w0,
                                  std::vector<double> y, double t0, double t1,
                                  int steps) {
    auto rhs = [&](double t, const std::vector<double>& v) {
        const double m = params.mass(t), mdot = params.mass_dot(t);
        const double w2 = params.omega_sq(t), lam = params.lambda(t);
        std::vector<double> d(6);
        d[0] = v[1];
        d[1] = -(mdot / m) * v[1] - w2 * v[0] +
               m0 * m0 * w0 * w0 / (m * m * v[0] * v[0] * v[0]);
        d[2] = v[3];
        d[3] = -(mdot / m + v[1] / v[0]) * v[3] - w2 * v[2] - lam / m;
        d[4] = m0 / (m * v[0] * v[0]);
        d[5] = 0.5 * (m * w2 * v[2] * v[2] + 2.0 * lam * v[2] - m * v[3] * v[3]);
        return d;
    };
    auto run = [&](std::vector<double> state, int n) {
        const double h = (t1 - t0) / n;
        double t = t0;
        for (int i = 0; i < n; ++i) {
            auto k1 = rhs(t, state);
            std::vector<double> tmp(6);
            for (int j = 0; j < 6; ++j) tmp[j] = state[j] + 0.5 * h * k1[j];
            auto k2 = rhs(t + 0.5 * h, tmp);
            for (int j = 0; j < 6; ++j) tmp[j] = state[j] + 0.5 * h * k2[j];
            auto k3 = rhs(t + 0.5 * h, tmp);
            for (int j = 0; j < 6; ++j) tmp[j] = state[j] + h * k3[j];
            auto k4 = rhs(t + h, tmp);
            for (int j = 0; j < 6; ++j)
                state[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            t += h;
        }
        return state;
    };
    const auto coarse = run(y, steps);
    const auto fine = run(y, 2 * steps);
    std::vector<double> out(6);
    for (int j = 0; j < 6; ++j) out[j] = (16.0 * fine[j] - coarse[j]) / 15.0;
    return out;
}

}  // namespace

TEST_SUITE("auxiliary") {

TEST_CASE("constant parameters with lambda=0 sit at the fixed point") {
    const ParameterSet p = unit_params(0.0);
    const auto sol = solve_auxiliary(p, {1.0, 0.0, 0.0, 0.0}, {0.0, 5.0}, 1.0, 1.0, 501);
    for (int i = 0; i < 501; i += 50) {
        CHECK(sol.s_values[i] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sol.reparam.mu_values[i] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(sol.eta_values[i]) < 1e-12);
        CHECK(std::abs(sol.Omega_sq_values[i]) < 1e-10);
        CHECK(std::abs(sol.f_tau_integral_values[i]) < 1e-12);
    }
}

TEST_CASE("particular case selects eta = -a t / (m w^2)") {
    const double a = 1.0;
    const ParameterSet p = unit_params(a);
    const auto sol =
        solve_auxiliary(p, {1.0, 0.0, 0.0, -a}, {0.0, 5.0}, 1.0, 1.0, 1001);
    for (double t : {0.5, 1.0, 2.0, 4.5}) {
        CHECK(sol.eta(t) == doctest::Approx(-a * t).epsilon(1e-9));
        CHECK(sol.eta_dot(t) == doctest::Approx(-a).epsilon(1e-9));
        CHECK(sol.s(t) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(sol.tau(t) == doctest::Approx(t).epsilon(1e-10));
    }
}

TEST_CASE("generic initial data adds a homogeneous oscillation") {
    const double a = 0.4;
    const ParameterSet p = unit_params(a);
    const AuxInitialConditions init{1.0, 0.0, 0.3, 0.0};
    const auto sol = solve_auxiliary(p, init, {0.0, 3.0}, 1.0, 1.0, 601);

    // closed form: eta = -a t + C cos t + D sin t with C = 0.3, D = a
    for (double t : {0.7, 1.3, 2.9}) {
        const double expected = -a * t + 0.3 * std::cos(t) + a * std::sin(t);
        CHECK(sol.eta(t) == doctest::Approx(expected).epsilon(1e-8));
    }

    // independent oracle: fixed-step RK4 + Richardson at the final time
    const auto ref = rk4_reference(p, 1.0, 1.0, {1.0, 0.0, 0.3, 0.0, 0.0, 0.0},
                                   0.0, 3.0, 3000);
    CHECK(sol.eta(3.0) == doctest::Approx(ref[2]).epsilon(1e-10));
    CHECK(sol.eta_dot(3.0) == doctest::Approx(ref[3]).epsilon(1e-10));
    CHECK(sol.s(3.0) == doctest::Approx(ref[0]).epsilon(1e-10));
    CHECK(sol.f_tau_integral(3.0) == doctest::Approx(ref[5]).epsilon(1e-9));
}

TEST_CASE("default initial conditions pick the particular solution") {
    const ParameterSet p = unit_params(0.25);
    const auto init = default_initial_conditions(p, 0.0);
    CHECK(init.eta_dot0 == doctest::Approx(-0.25));
    CHECK(init.eta0 == 0.0);
    const auto init2 = default_initial_conditions(p, 2.0);
    CHECK(init2.eta0 == doctest::Approx(-0.5));
}

TEST_CASE("residuals vanish on exact solutions") {
    const ParameterSet p0 = unit_params(0.0);
    const auto trivial =
        solve_auxiliary(p0, {1.0, 0.0, 0.0, 0.0}, {0.0, 4.0}, 1.0, 1.0, 801);
    for (double t : {0.5, 2.0, 3.5}) {
        const auto r = residuals(trivial, p0, t);
        CHECK(r.c1 < 1e-12);
        CHECK(r.c2 < 1e-12);
        CHECK(r.c3 < 1e-12);
    }

    const ParameterSet p1 = unit_params(0.1);
    const auto paper =
        solve_auxiliary(p1, {1.0, 0.0, 0.0, -0.1}, {0.0, 4.0}, 1.0, 1.0, 801);
    const auto r = residuals(paper, p1, 1.0);
    CHECK(r.c1 < 1e-10);
    CHECK(r.c2 < 1e-10);
    CHECK(r.c3 < 1e-8);
}

TEST_CASE("corrupted eta is caught by the c3 residual") {
    const ParameterSet p = unit_params(0.1);
    auto sol = solve_auxiliary(p, {1.0, 0.0, 0.0, -0.1}, {0.0, 4.0}, 1.0, 1.0, 801);
    for (auto& v : sol.eta_values) v *= 1.01;
    for (auto& v : sol.eta_dot_values) v *= 1.01;
    sol.build_interpolants();
    const auto r = residuals(sol, p, 1.5);
    CHECK(r.c3 > 1e-3);  // |1.01 * (-a t) + a t| = 0.01 * 0.15
}

TEST_CASE("phase function closed cases") {
    const ParameterSet p0 = unit_params(0.0);
    const auto trivial =
        solve_auxiliary(p0, {1.0, 0.0, 0.0, 0.0}, {0.0, 3.0}, 1.0, 1.0, 601);
    CHECK(std::abs(phase_f(trivial, p0, cplx(0.37, 0.2), 1.3)) < 1e-11);

    // Eq.-(25)-type case with a = 1: f(y, 0) = -i y, and f(0, 1) equals the
    // accumulated integral
    const ParameterSet p1 = unit_params(1.0);
    const auto sol =
        solve_auxiliary(p1, {1.0, 0.0, 0.0, -1.0}, {0.0, 2.0}, 1.0, 1.0, 801);
    const cplx f0 = phase_f(sol, p1, cplx(0.7, 0.0), 0.0);
    CHECK(std::abs(f0 - cplx(0.0, -0.7)) < 1e-9);

    // quadrature oracle for the integral part at t=1: the integrand
    // (m w^2 eta^2 + 2 lam eta - m etad^2)/2 with eta = -t gives
    // (t^2 - 2 t^2 - 1)/2, whose integral over [0,1] is -2/3
    const int n = 2001;
    double acc = 0.0;
    const double h = 1.0 / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        const double eta = sol.eta(t), etad = sol.eta_dot(t);
        const double integrand = 0.5 * (eta * eta + 2.0 * t * eta - etad * etad);
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * integrand * h;
    }
    CHECK(acc == doctest::Approx(-2.0 / 3.0).epsilon(1e-7));
    const cplx f1 = phase_f(sol, p1, cplx(0.0, 0.0), 1.0);
    CHECK(f1.real() == doctest::Approx(acc).epsilon(1e-7));
    CHECK(f1.real() == doctest::Approx(-2.0 / 3.0).epsilon(1e-8));
    CHECK(std::abs(f1.imag()) < 1e-12);  // ln sqrt(s) = 0
}

TEST_CASE("constant-case closed form") {
    const auto zero = constant_case_solution(1.0, 1.0, 0.0, {0.0, 3.0});
    CHECK(zero.is_identity());
    CHECK(zero.f_tau_integral(2.0) == 0.0);

    const auto sol = constant_case_solution(1.0, 1.0, 1.0, {0.0, 3.0});
    CHECK(sol.eta(2.0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(sol.eta_dot(2.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sol.s(1.7) == 1.0);
    CHECK(sol.tau(1.7) == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("constant case agrees with the integrated solution") {
    const double a = 0.3;
    const ParameterSet p = unit_params(a);
    const auto closed = constant_case_solution(1.0, 1.0, a, {0.0, 5.0}, 1.0, 1001);
    const auto solved =
        solve_auxiliary(p, {1.0, 0.0, 0.0, -a}, {0.0, 5.0}, 1.0, 1.0, 1001);
    for (double t = 0.0; t <= 5.0; t += 0.25) {
        CHECK(std::abs(closed.s(t) - solved.s(t)) < 1e-8);
        CHECK(std::abs(closed.eta(t) - solved.eta(t)) < 1e-8);
        CHECK(std::abs(closed.f_tau_integral(t) - solved.f_tau_integral(t)) < 1e-9);
    }
}

TEST_CASE("time-dependent frequency keeps the constraints") {
    const ParameterSet p(TimeProfile::constant(1.0),
                         TimeProfile::polynomial({1.0, 0.0, 0.1}),
                         TimeProfile::constant(0.0), 1.0, {-1.0, 4.0});
    const auto sol =
        solve_auxiliary(p, {1.0, 0.0, 0.0, 0.0}, {0.0, 3.0}, 1.0, 1.0, 1501);

    // tau strictly increasing, mu positive
    for (std::size_t i = 1; i < sol.reparam.tau_values.size(); ++i) {
        CHECK(sol.reparam.tau_values[i] > sol.reparam.tau_values[i - 1]);
        CHECK(sol.reparam.mu_values[i] > 0.0);
    }

    // interior residual sweep
    for (double t = 0.15; t <= 2.85; t += 0.135) {
        const auto r = residuals(sol, p, t);
        CHECK(r.c1 < 1e-8);
        CHECK(r.c2 < 1e-6);
        CHECK(r.c3 < 1e-6);
    }
}

TEST_CASE("tau increments match the quadrature of mu") {
    const ParameterSet p(TimeProfile::constant(1.0),
                         TimeProfile::polynomial({1.0, 0.0, 0.1}),
                         TimeProfile::constant(0.0), 1.0, {-1.0, 4.0});
    const auto sol =
        solve_auxiliary(p, {1.0, 0.0, 0.0, 0.0}, {0.0, 3.0}, 1.0, 1.0, 601);
    // 5-point Gauss-Legendre on each interior interval
    static const double gx[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                 0.538469310105683, 0.906179845938664};
    static const double gw[5] = {0.236926885056189, 0.478628670499366,
                                 0.568888888888889, 0.478628670499366,
                                 0.236926885056189};
    const auto& mesh = sol.reparam.t_mesh;
    for (std::size_t i = 5; i + 6 < mesh.size(); i += 37) {
        const double t0 = mesh[i], t1 = mesh[i + 1];
        double q = 0.0;
        for (int g = 0; g < 5; ++g) {
            const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * gx[g];
            q += 0.5 * (t1 - t0) * gw[g] * sol.mu(t);
        }
        const double dtau = sol.reparam.tau_values[i + 1] - sol.reparam.tau_values[i];
        CHECK(std::abs(dtau - q) <= 1e-10 * std::abs(dtau));
    }
}

TEST_CASE("halving the tolerance moves the answer by less than 10x tol") {
    const ParameterSet p = unit_params(0.3);
    const AuxInitialConditions init{1.0, 0.0, 0.2, 0.0};
    const auto a = solve_auxiliary(p, init, {0.0, 4.0}, 1.0, 1.0, 401, 1e-10, 1e-12);
    const auto b = solve_auxiliary(p, init, {0.0, 4.0}, 1.0, 1.0, 401, 5e-11, 5e-13);
    CHECK(std::abs(a.s(4.0) - b.s(4.0)) < 1e-9);
    CHECK(std::abs(a.eta(4.0) - b.eta(4.0)) < 1e-9);
}

TEST_CASE("collapsing scale factor raises SingularSolution") {
    // with a nearly-vanishing w0 the centrifugal barrier is gone and
    // s(t) ~ cos(t) crosses the floor near t = pi/2
    const ParameterSet p = unit_params(0.0);
    CHECK_THROWS_AS(
        solve_auxiliary(p, {1.0, 0.0, 0.0, 0.0}, {0.0, 2.0}, 1e-12, 1.0, 201),
        SingularSolution);
}

TEST_CASE("input guards") {
    const ParameterSet p = unit_params(0.0);
    CHECK_THROWS_AS(solve_auxiliary(p, {-1.0, 0.0, 0.0, 0.0}, {0.0, 1.0}, 1.0, 1.0, 101),
                    InvalidParameters);
    CHECK_THROWS_AS(solve_auxiliary(p, {1.0, 0.0, 0.0, 0.0}, {1.0, 1.0}, 1.0, 1.0, 101),
                    InvalidParameters);
    CHECK_THROWS_AS(solve_auxiliary(p, {1.0, 0.0, 0.0, 0.0}, {0.0, 1.0}, 1.0, 1.0, 1),
                    InvalidParameters);
}

}  // TEST_SUITE
