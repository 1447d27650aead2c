#include "nhosc/ode.hpp"

#include <algorithm>
#include <cmath>

namespace nhosc {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th-order error weights (b - b_hat)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Dopri5::Dopri5(Rhs rhs, std::vector<double> y0, double t0, double rtol, double atol)
    : rhs_(std::move(rhs)), y_(std::move(y0)), t_(t0), rtol_(rtol), atol_(atol) {
    for (auto& k : k_) k.resize(y_.size());
    y_try_.resize(y_.size());
    y_err_.resize(y_.size());
    rhs_(t_, y_, k_[0]);  // FSAL seed
}

double Dopri5::attempt_step(double h) {
    const std::size_t n = y_.size();
    std::vector<double> tmp(n);

    auto stage = [&](double c, auto&&... terms) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            ((acc += terms.first * terms.second[i]), ...);
            tmp[i] = y_[i] + h * acc;
        }
        (void)c;
    };

    using P = std::pair<double, const std::vector<double>&>;
    stage(c2, P{a21, k_[0]});
    rhs_(t_ + c2 * h, tmp, k_[1]);
    stage(c3, P{a31, k_[0]}, P{a32, k_[1]});
    rhs_(t_ + c3 * h, tmp, k_[2]);
    stage(c4, P{a41, k_[0]}, P{a42, k_[1]}, P{a43, k_[2]});
    rhs_(t_ + c4 * h, tmp, k_[3]);
    stage(c5, P{a51, k_[0]}, P{a52, k_[1]}, P{a53, k_[2]}, P{a54, k_[3]});
    rhs_(t_ + c5 * h, tmp, k_[4]);
    stage(1.0, P{a61, k_[0]}, P{a62, k_[1]}, P{a63, k_[2]}, P{a64, k_[3]},
          P{a65, k_[4]});
    rhs_(t_ + h, tmp, k_[5]);

    for (std::size_t i = 0; i < n; ++i)
        y_try_[i] = y_[i] + h * (b1 * k_[0][i] + b3 * k_[2][i] + b4 * k_[3][i] +
                                 b5 * k_[4][i] + b6 * k_[5][i]);
    rhs_(t_ + h, y_try_, k_[6]);  // FSAL stage

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ei = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] +
                               e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
        const double sc =
            atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(y_try_[i]));
        err += (ei / sc) * (ei / sc);
    }
    return std::sqrt(err / double(n));
}

void Dopri5::integrate_to(double t_end) {
    if (t_end == t_) return;
    const double dir = (t_end > t_) ? 1.0 : -1.0;
    if (h_ == 0.0) h_ = dir * std::min(1e-4, std::abs(t_end - t_));
    if (h_ * dir <= 0.0) h_ = -h_;

    int rejected_in_a_row = 0;
    while (dir * (t_end - t_) > 0.0) {
        double h = h_;
        if (dir * (t_ + h - t_end) > 0.0) h = t_end - t_;

        const double err = attempt_step(h);
        if (err <= 1.0 || std::abs(h) < 1e-14 * std::abs(t_end)) {
            t_ += h;
            std::swap(y_, y_try_);
            std::swap(k_[0], k_[6]);  // FSAL
            if (on_step) on_step(t_, y_);
            rejected_in_a_row = 0;
            const double fac =
                std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
            h_ = h * fac;
        } else {
            if (++rejected_in_a_row > 50)
                throw Error("ODE step control failed to converge");
            h_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
}

}  // namespace nhosc
