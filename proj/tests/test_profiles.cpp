#include <cmath>
#include <random>

#include <doctest.h>

#include "nhosc/errors.hpp"
#include "nhosc/profiles.hpp"

using namespace nhosc;

namespace {

ParameterSet make_params(TimeProfile lambda, double hbar = 1.0) {
    return ParameterSet(TimeProfile::constant(1.0), TimeProfile::constant(1.0),
                        std::move(lambda), hbar, {-5.0, 5.0});
}

}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("profile evaluation") {
    CHECK(eval_profile(TimeProfile::constant(2.0), 37.5) == 2.0);
    CHECK(eval_profile(TimeProfile::linear(0.5, 0.0), 2.0) == doctest::Approx(1.0));
    CHECK(eval_profile(TimeProfile::polynomial({1.0, 0.0, -1.0}), 2.0) ==
          doctest::Approx(-3.0));
}

TEST_CASE("profile derivatives") {
    CHECK(eval_profile_derivative(TimeProfile::constant(2.0), 123.0) == 0.0);
    CHECK(eval_profile_derivative(TimeProfile::linear(0.5, 7.0), 9.0) == 0.5);
    CHECK(eval_profile_derivative(TimeProfile::polynomial({0.0, 0.0, 3.0}), 2.0) ==
          doctest::Approx(12.0));
}

TEST_CASE("evaluation is pure and bitwise reproducible") {
    const TimeProfile p = TimeProfile::polynomial({0.3, -1.7, 0.11, 2.0});
    for (double t : {-3.0, 0.0, 0.7, 2.5}) {
        const double a = p.eval(t);
        const double b = p.eval(t);
        CHECK(a == b);
    }
}

TEST_CASE("tabulated profiles interpolate with a cubic spline") {
    std::vector<double> ts, vs;
    for (int i = 0; i <= 200; ++i) {
        const double t = -1.0 + 2.0 * i / 200.0;
        ts.push_back(t);
        vs.push_back(std::sin(1.7 * t));
    }
    const TimeProfile p = TimeProfile::tabulated(ts, vs);
    for (double t : {-0.63, 0.111, 0.77}) {
        CHECK(p.eval(t) == doctest::Approx(std::sin(1.7 * t)).epsilon(1e-8));
        CHECK(p.derivative(t) ==
              doctest::Approx(1.7 * std::cos(1.7 * t)).epsilon(1e-5));
    }
    CHECK_THROWS_AS(p.eval(1.5), OutOfRange);
    CHECK_THROWS_AS(p.derivative(-1.0001), OutOfRange);
}

TEST_CASE("tabulated construction guards") {
    CHECK_THROWS_AS(TimeProfile::tabulated({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}),
                    InvalidProfile);
    CHECK_THROWS_AS(TimeProfile::tabulated({0.0, 1.0}, {1.0}), InvalidProfile);
}

TEST_CASE("polynomial derivative matches central differences") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_real_distribution<double> when(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> cs;
        for (int k = 0; k < 5; ++k) cs.push_back(coeff(rng));
        const TimeProfile p = TimeProfile::polynomial(cs);
        const double t = when(rng);
        const double h = 1e-5;
        const double fd = (p.eval(t + h) - p.eval(t - h)) / (2.0 * h);
        const double an = p.derivative(t);
        CHECK(std::abs(fd - an) <= 1e-7 * (1.0 + std::abs(an)));
    }
}

TEST_CASE("parameter set construction validates positivity") {
    CHECK_THROWS_AS(ParameterSet(TimeProfile::linear(1.0, 0.0),  // m crosses zero
                                 TimeProfile::constant(1.0),
                                 TimeProfile::constant(0.0), 1.0, {-1.0, 1.0}),
                    InvalidParameters);
    CHECK_THROWS_AS(ParameterSet(TimeProfile::constant(1.0),
                                 TimeProfile::polynomial({1.0, 0.0, -1.0}),
                                 TimeProfile::constant(0.0), 1.0, {-3.0, 3.0}),
                    InvalidParameters);
    CHECK_THROWS_AS(make_params(TimeProfile::constant(0.0), -1.0),
                    InvalidParameters);
}

TEST_CASE("pt classifier verdicts") {
    const PTClass lin = pt_classify(make_params(TimeProfile::linear(0.3)), 3.0, 256);
    CHECK(lin.verdict == PTVerdict::PTViolating);
    CHECK(lin.evidence > 0.1);

    const PTClass even =
        pt_classify(make_params(TimeProfile::polynomial({0.0, 0.0, 0.3})), 3.0, 256);
    CHECK(even.verdict == PTVerdict::PTSymmetric);

    const PTClass herm = pt_classify(make_params(TimeProfile::constant(0.0)), 3.0, 256);
    CHECK(herm.verdict == PTVerdict::Hermitian);
}

TEST_CASE("classifier is symmetric under t -> -t of the inputs") {
    // swapping lambda(t) for lambda(-t) flips the slope sign
    const PTClass a = pt_classify(make_params(TimeProfile::linear(0.4, 0.1)), 2.0, 128);
    const PTClass b = pt_classify(make_params(TimeProfile::linear(-0.4, 0.1)), 2.0, 128);
    CHECK(a.verdict == b.verdict);
    CHECK(a.evidence == doctest::Approx(b.evidence).epsilon(1e-12));

    const PTClass c =
        pt_classify(make_params(TimeProfile::polynomial({0.0, 0.0, 1.3})), 2.0, 128);
    const PTClass d =
        pt_classify(make_params(TimeProfile::polynomial({0.0, 0.0, 1.3})), 2.0, 128);
    CHECK(c.verdict == d.verdict);
}

TEST_CASE("uneven mass makes the verdict PTViolating even for even lambda") {
    const ParameterSet p(TimeProfile::polynomial({1.0, 0.25}),  // m odd about 0
                         TimeProfile::constant(1.0),
                         TimeProfile::polynomial({0.0, 0.0, 0.3}), 1.0, {-2.0, 2.0});
    const PTClass r = pt_classify(p, 2.0, 256);
    CHECK(r.verdict == PTVerdict::PTViolating);
    CHECK(r.evidence == doctest::Approx(1.0).epsilon(1e-10));  // 2*0.25*2
}

TEST_CASE("hermitian wins when lambda vanishes identically") {
    const ParameterSet p(TimeProfile::polynomial({1.0, 0.25}),
                         TimeProfile::constant(1.0), TimeProfile::constant(0.0),
                         1.0, {-2.0, 2.0});
    CHECK(pt_classify(p, 2.0, 256).verdict == PTVerdict::Hermitian);
}

}  // TEST_SUITE
