// test_semiclassical.cpp — Mean-field equations, closed forms and fixed points

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dimerheat/grid.hpp"
#include "dimerheat/semiclassical.hpp"

using namespace dimerheat;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("polar construction")
{
    const auto s = from_polar(2.0, 0.5, 0.3, -0.4);
    CHECK(s.power() == doctest::Approx(2.0));
    CHECK(s.r() == doctest::Approx(0.5));
    CHECK(s.theta() == doctest::Approx(0.7));
    CHECK_THROWS_AS(from_polar(1.0, 1.5, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("right-hand side by hand")
{
    const MeanFieldParams p{1.0, 0.3, 0.2};
    const MeanFieldState s{{0.4, 0.1}, {-0.2, 0.7}};
    const auto d = mean_field_rhs(s, p);
    const Complex i(0.0, 1.0);
    const Complex a = s.a0, b = s.b0;
    const Complex da = -i * (a + 0.6 * b * b * std::conj(a) + 0.2 * std::norm(b) * a);
    const Complex db = -i * (b + 0.6 * a * a * std::conj(b) + 0.2 * std::norm(a) * b);
    CHECK(std::abs(d.a0 - da) < 1e-15);
    CHECK(std::abs(d.b0 - db) < 1e-15);
}

TEST_CASE("polar rates agree with the complex equations")
{
    const MeanFieldParams p{1.0, 0.3, 0.25};
    const double n = 2.0;
    for (double r : {0.3, 0.9, 1.2}) {
        for (double th : {0.1, 1.0, 2.5}) {
            const auto s = from_polar(n, r, th + 0.2, 0.2);
            const auto d = mean_field_rhs(s, p);
            const double dr2 = 2.0 * std::real(std::conj(s.a0) * d.a0);
            CHECK(amplitude_rate(r, th, p, n) == doctest::Approx(dr2).epsilon(1e-12));
            const auto pr = phase_rhs(r, th, p, n);
            CHECK(pr.phi_a == doctest::Approx(std::imag(d.a0 / s.a0)).epsilon(1e-12));
            CHECK(pr.phi_b == doctest::Approx(std::imag(d.b0 / s.b0)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(phase_rhs(0.0, 0.1, p, n), std::invalid_argument);
}

TEST_CASE("integration conserves power and follows the logistic law")
{
    const MeanFieldParams p{1.0, 0.3, 0.0};
    const double n = 2.0;
    const double theta = pi / 4.0;
    const double u0 = 0.5 + 1e-4;
    const auto s0 = from_polar(n, std::sqrt(u0 * n), theta, 0.0);
    const double scale = 1.0 / (4.0 * p.y * n);
    const auto times = time_grid(scale, 101);
    const auto series = integrate_mean_field(s0, p, times);
    REQUIRE(series.states.size() == times.size());
    const double shift = std::log(1.0 / u0 - 1.0) / (4.0 * p.y * n);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto& s = series.states[k];
        CHECK(std::abs(s.power() - n) < 1e-9 * n);
        const double ref = amplitude_closed_form(n, p.y, theta, times[k] + shift);
        CHECK(std::norm(s.a0) == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("closed form limits")
{
    CHECK(amplitude_closed_form(2.0, 0.3, pi / 4.0, 0.0) == doctest::Approx(1.0));
    CHECK(amplitude_closed_form(2.0, 0.3, pi / 4.0, 1e4) >= 0.0);
    CHECK(amplitude_closed_form(2.0, 0.3, pi / 4.0, 1e4) < 1e-300);
    CHECK(amplitude_closed_form(2.0, 0.3, -pi / 4.0, 100.0) == doctest::Approx(2.0));
}

TEST_CASE("stationary branches")
{
    const double n = 1.5;
    const MeanFieldParams p{1.0, 0.4, 0.2};
    const auto br = stationary_solutions(p, n);
    int fwm = 0;
    for (const auto& b : br) {
        if (b.kind == BranchKind::FourWaveMixing) {
            ++fwm;
            for (double th : b.thetas) CHECK(stationary_residual(b, th, p, n) < 1e-12);
        } else {
            for (double th : {0.0, 0.7, 2.0}) CHECK(stationary_residual(b, th, p, n) < 1e-12);
        }
    }
    CHECK(fwm == 2);
    CHECK(br[0].energy == doctest::Approx(1.0 + 0.6 + 0.15));
    CHECK(br[1].energy == doctest::Approx(1.0 - 0.6 + 0.15));
    // off the locked phases the mixing branch is not stationary
    CHECK(stationary_residual(br[0], 0.3, p, n) > 1e-3);

    const MeanFieldParams x{1.0, 0.0, 0.3};
    const auto bx = stationary_solutions(x, n);
    CHECK(bx[0].kind == BranchKind::CrossPhase);
    CHECK(bx[0].any_theta);
    for (double th : {0.0, 1.1, 2.9}) CHECK(stationary_residual(bx[0], th, x, n) < 1e-12);
}

TEST_CASE("pure cross-phase: theta rate independent of theta")
{
    const MeanFieldParams p{1.0, 0.0, 0.35};
    const double n = 2.0;
    for (double r : {0.4, 1.0, 1.3}) {
        const double ref = phase_rhs(r, 0.0, p, n).theta;
        CHECK(ref == doctest::Approx(-p.z * (n - 2.0 * r * r)));
        for (double th : {0.5, 1.7, 3.0}) CHECK(phase_rhs(r, th, p, n).theta == doctest::Approx(ref).epsilon(1e-14));
        CHECK(amplitude_rate(r, 0.9, p, n) == 0.0);
    }
}

TEST_CASE("locking detection")
{
    const MeanFieldParams p{1.0, 0.0, 0.3};
    const double n = 2.0;
    const auto times = time_grid(40.0, 401);
    const auto locked = integrate_mean_field(from_polar(n, 1.0, 0.4, 0.0), p, times);
    CHECK(detect_phase_locking(locked, p).locked);
    const auto drift = integrate_mean_field(from_polar(n, 0.5, 0.4, 0.0), p, times);
    CHECK_FALSE(detect_phase_locking(drift, p).locked);
}

TEST_CASE("portrait grid and validation")
{
    const MeanFieldParams p{1.0, 0.3, 0.1};
    const std::vector<double> th{0.0, 1.0};
    const std::vector<double> us{0.25, 0.5, 0.75};
    const auto pts = phase_portrait(p, 2.0, th, us);
    CHECK(pts.size() == 6);
    CHECK(pts[4].theta == 1.0);
    CHECK(pts[4].u == 0.5);
    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(phase_portrait(p, 2.0, th, bad), std::invalid_argument);
    CHECK_THROWS_AS((MeanFieldParams{-1.0, 0.0, 0.0}.validate()), std::invalid_argument);
    const std::vector<double> late{1.0, 2.0};
    CHECK_THROWS_AS(integrate_mean_field(from_polar(1.0, 0.5, 0.0, 0.0), p, late), std::invalid_argument);
}
