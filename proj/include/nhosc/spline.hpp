#pragma once

#include <vector>

namespace nhosc {

/// Natural cubic spline through (x_i, y_i) with strictly increasing knots.
/// Natural boundary conditions (zero second derivative at both ends); this
/// reproduces linear data exactly, which the auxiliary-solution residual
/// checks rely on.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

private:
    std::vector<double> x_, y_, m_;  // m_ holds second derivatives at knots
    std::size_t interval(double x) const;
};

}  // namespace nhosc
