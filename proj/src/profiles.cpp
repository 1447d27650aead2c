#include "nhosc/profiles.hpp"

#include <algorithm>
#include <cmath>

#include "nhosc/errors.hpp"

namespace nhosc {

TimeProfile::TimeProfile(Constant c) : def_(c) {}

TimeProfile::TimeProfile(Linear l) : def_(l) {}

TimeProfile::TimeProfile(Polynomial p) : def_(std::move(p)) {
    if (std::get<Polynomial>(def_).coefficients.empty())
        throw InvalidProfile("polynomial profile needs at least one coefficient");
}

TimeProfile::TimeProfile(Tabulated tab) : def_(std::move(tab)) {
    const auto& t = std::get<Tabulated>(def_);
    if (t.times.size() < 2 || t.times.size() != t.values.size())
        throw InvalidProfile("tabulated profile needs >= 2 samples, equal lengths");
    for (std::size_t i = 1; i < t.times.size(); ++i)
        if (!(t.times[i] > t.times[i - 1]))
            throw InvalidProfile("tabulated times must be strictly increasing");
    spline_ = std::make_shared<CubicSpline>(t.times, t.values);
}

double TimeProfile::eval(double t) const {
    if (const auto* c = std::get_if<Constant>(&def_)) return c->value;
    if (const auto* l = std::get_if<Linear>(&def_)) return l->slope * t + l->intercept;
    if (const auto* p = std::get_if<Polynomial>(&def_)) {
        // Horner's rule, highest power first
        double acc = 0.0;
        const auto& c = p->coefficients;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return acc;
    }
    return (*spline_)(t);
}

double TimeProfile::derivative(double t) const {
    if (std::get_if<Constant>(&def_)) return 0.0;
    if (const auto* l = std::get_if<Linear>(&def_)) return l->slope;
    if (const auto* p = std::get_if<Polynomial>(&def_)) {
        const auto& c = p->coefficients;
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 1;)
            acc = acc * t + static_cast<double>(i) * c[i];
        return acc;
    }
    return spline_->derivative(t);
}

std::string TimeProfile::kind() const {
    if (std::get_if<Constant>(&def_)) return "constant";
    if (std::get_if<Linear>(&def_)) return "linear";
    if (std::get_if<Polynomial>(&def_)) return "polynomial";
    return "tabulated";
}

double eval_profile(const TimeProfile& profile, double t) { return profile.eval(t); }

double eval_profile_derivative(const TimeProfile& profile, double t) {
    return profile.derivative(t);
}

ParameterSet::ParameterSet(TimeProfile mass, TimeProfile omega_sq, TimeProfile lambda,
                           double hbar, TimeWindow window, int validation_samples)
    : mass_(std::move(mass)),
      omega_sq_(std::move(omega_sq)),
      lambda_(std::move(lambda)),
      hbar_(hbar),
      window_(window) {
    if (!(hbar_ > 0.0)) throw InvalidParameters("hbar must be positive");
    if (!(window_.t_max > window_.t_min))
        throw InvalidParameters("validation window must have t_max > t_min");
    const int n = std::max(validation_samples, 1000);
    for (int i = 0; i < n; ++i) {
        const double t =
            window_.t_min + (window_.t_max - window_.t_min) * i / double(n - 1);
        if (!(mass_.eval(t) > 0.0))
            throw InvalidParameters("mass profile must stay positive on the window");
        if (!(omega_sq_.eval(t) > 0.0))
            throw InvalidParameters("omega_sq profile must stay positive on the window");
    }
}

bool ParameterSet::is_linear_lambda_constant_case() const {
    if (!mass_.is_constant() || !omega_sq_.is_constant()) return false;
    const auto* l = lambda_.as_linear();
    if (l) return l->intercept == 0.0;
    const auto* c = lambda_.as_constant();
    return c && c->value == 0.0;  // a = 0 limit
}

double ParameterSet::max_omega(TimeWindow w, int samples) const {
    double peak = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = w.t_min + (w.t_max - w.t_min) * i / double(samples - 1);
        peak = std::max(peak, std::sqrt(omega_sq_.eval(t)));
    }
    return peak;
}

std::string to_string(PTVerdict v) {
    switch (v) {
        case PTVerdict::Hermitian: return "Hermitian";
        case PTVerdict::PTSymmetric: return "PTSymmetric";
        case PTVerdict::PTViolating: return "PTViolating";
    }
    return "?";
}

namespace {

struct Asymmetry {
    double max_diff = 0.0;  // max |f(t) - f(-t)|
    double max_abs = 0.0;   // max |f(+-t)|
};

Asymmetry sample_asymmetry(const TimeProfile& f, double T, int n) {
    Asymmetry a;
    for (int i = 1; i <= n; ++i) {
        const double t = T * i / double(n);
        const double fp = f.eval(t);
        const double fm = f.eval(-t);
        a.max_diff = std::max(a.max_diff, std::abs(fp - fm));
        a.max_abs = std::max({a.max_abs, std::abs(fp), std::abs(fm)});
    }
    return a;
}

}  // namespace

PTClass pt_classify(const ParameterSet& params, double window_half_width,
                    int n_samples) {
    if (!(window_half_width > 0.0)) throw InvalidParameters("window must be positive");
    if (n_samples < 2) throw InvalidParameters("need at least 2 samples");

    const double T = window_half_width;
    const Asymmetry am = sample_asymmetry(params.mass_profile(), T, n_samples);
    const Asymmetry aw = sample_asymmetry(params.omega_sq_profile(), T, n_samples);
    const Asymmetry al = sample_asymmetry(params.lambda_profile(), T, n_samples);

    PTClass out;
    out.evidence = std::max({am.max_diff, aw.max_diff, al.max_diff});

    if (al.max_abs <= 1e-12) {
        out.verdict = PTVerdict::Hermitian;
        return out;
    }
    auto even = [](const Asymmetry& a) {
        return a.max_diff < 1e-10 * (1.0 + a.max_abs);
    };
    out.verdict = (even(am) && even(aw) && even(al)) ? PTVerdict::PTSymmetric
                                                     : PTVerdict::PTViolating;
    return out;
}

}  // namespace nhosc
