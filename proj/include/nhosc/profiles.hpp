#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nhosc/spline.hpp"

namespace nhosc {

/// One time-dependent Hamiltonian coefficient: m(t), omega^2(t) or lambda(t).
/// Evaluation is pure and deterministic; tabulated profiles interpolate with
/// a natural cubic spline so the auxiliary ODE sees C^1 inputs.
class TimeProfile {
public:
    struct Constant {
        double value = 0.0;
    };
    struct Linear {
        double slope = 0.0;
        double intercept = 0.0;
    };
    struct Polynomial {
        std::vector<double> coefficients;  // ascending powers of t
    };
    struct Tabulated {
        std::vector<double> times;   // strictly increasing
        std::vector<double> values;  // same length
    };

    TimeProfile() : TimeProfile(Constant{0.0}) {}
    explicit TimeProfile(Constant c);
    explicit TimeProfile(Linear l);
    explicit TimeProfile(Polynomial p);
    explicit TimeProfile(Tabulated tab);

    static TimeProfile constant(double value) { return TimeProfile(Constant{value}); }
    static TimeProfile linear(double slope, double intercept = 0.0) {
        return TimeProfile(Linear{slope, intercept});
    }
    static TimeProfile polynomial(std::vector<double> coeffs) {
        return TimeProfile(Polynomial{std::move(coeffs)});
    }
    static TimeProfile tabulated(std::vector<double> times, std::vector<double> values) {
        return TimeProfile(Tabulated{std::move(times), std::move(values)});
    }

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;
    double derivative(double t) const;

    bool is_constant() const { return std::holds_alternative<Constant>(def_); }
    bool is_linear() const { return std::holds_alternative<Linear>(def_); }
    const Constant* as_constant() const { return std::get_if<Constant>(&def_); }
    const Linear* as_linear() const { return std::get_if<Linear>(&def_); }
    const Polynomial* as_polynomial() const { return std::get_if<Polynomial>(&def_); }
    const Tabulated* as_tabulated() const { return std::get_if<Tabulated>(&def_); }

    std::string kind() const;

private:
    std::variant<Constant, Linear, Polynomial, Tabulated> def_;
    std::shared_ptr<const CubicSpline> spline_;  // only for Tabulated
};

double eval_profile(const TimeProfile& profile, double t);
double eval_profile_derivative(const TimeProfile& profile, double t);

/// Time window used for construction-time positivity checks and for the
/// PT classifier sampling.
struct TimeWindow {
    double t_min = 0.0;
    double t_max = 1.0;
};

/// The coefficients of H = p^2/2m(t) + m(t) w^2(t) x^2/2 + i lambda(t) x.
/// omega_sq stores w^2 directly; m(t) > 0 and w^2(t) > 0 are checked at
/// construction on a sampling mesh over the declared window.
class ParameterSet {
public:
    ParameterSet(TimeProfile mass, TimeProfile omega_sq, TimeProfile lambda,
                 double hbar, TimeWindow window, int validation_samples = 1000);

    double mass(double t) const { return mass_.eval(t); }
    double mass_dot(double t) const { return mass_.derivative(t); }
    double omega_sq(double t) const { return omega_sq_.eval(t); }
    double omega_sq_dot(double t) const { return omega_sq_.derivative(t); }
    double lambda(double t) const { return lambda_.eval(t); }
    double lambda_dot(double t) const { return lambda_.derivative(t); }
    double hbar() const { return hbar_; }
    const TimeWindow& window() const { return window_; }

    const TimeProfile& mass_profile() const { return mass_; }
    const TimeProfile& omega_sq_profile() const { return omega_sq_; }
    const TimeProfile& lambda_profile() const { return lambda_; }

    /// True when mass and omega_sq are constant and lambda is exactly a*t,
    /// the particular case with closed-form transformation data.
    bool is_linear_lambda_constant_case() const;

    double max_omega(TimeWindow w, int samples = 1000) const;

private:
    TimeProfile mass_, omega_sq_, lambda_;
    double hbar_;
    TimeWindow window_;
};

enum class PTVerdict { Hermitian, PTSymmetric, PTViolating };

struct PTClass {
    PTVerdict verdict = PTVerdict::Hermitian;
    double evidence = 0.0;  // worst asymmetry max|f(t) - f(-t)| over samples
};

std::string to_string(PTVerdict v);

/// Samples t > 0 on (0, T] and compares each coefficient against its
/// time-reversed value. lambda == 0 (to 1e-12) means Hermitian regardless of
/// the other profiles; otherwise all three must be even for PT symmetry.
PTClass pt_classify(const ParameterSet& params, double window_half_width,
                    int n_samples);

}  // namespace nhosc
