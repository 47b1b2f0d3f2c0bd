// semiclassical.hpp — Mean-field amplitudes, phase equations and stationary branches (J = 0)

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dimerheat/fock.hpp"

namespace dimerheat {

struct MeanFieldState {
    Complex a0{0.0, 0.0};
    Complex b0{0.0, 0.0};

    double r() const { return std::abs(a0); }
    double power() const { return std::norm(a0) + std::norm(b0); } // n
    double phase_a() const { return std::arg(a0); }
    double phase_b() const { return std::arg(b0); }
    double theta() const { return std::arg(a0 * std::conj(b0)); }  // phi_a - phi_b
};

// a0 = r e^{i phi_a}, b0 = sqrt(n - r^2) e^{i phi_b}; requires 0 <= r^2 <= n.
MeanFieldState from_polar(double n, double r, double phi_a, double phi_b);

struct MeanFieldParams {
    double omega{1.0};
    double y{0.0};
    double z{0.0};

    void validate() const;
};

struct MeanFieldDerivative {
    Complex a0;
    Complex b0;
};

// i da/dt = omega a + 2Y b^2 a* + Z |b|^2 a, and a <-> b.
MeanFieldDerivative mean_field_rhs(const MeanFieldState& s, const MeanFieldParams& p);

struct MeanFieldSeries {
    std::vector<double> times;
    std::vector<MeanFieldState> states;
};

struct MeanFieldOptions {
    double rel_tol{1e-10};
    double abs_tol{1e-12};
    double power_tol{1e-8}; // relative drift of n allowed before failing
};

// Adaptive Dormand-Prince integration sampled at times (ascending, from 0).
// Throws std::runtime_error when the power drift exceeds power_tol.
MeanFieldSeries integrate_mean_field(const MeanFieldState& s0, const MeanFieldParams& p,
                                     std::span<const double> times, const MeanFieldOptions& options = {});

struct PhaseRates {
    double phi_a{0.0};
    double phi_b{0.0};
    double theta{0.0}; // phi_a - phi_b
};

// Phase equations; requires 0 < r^2 < n.
PhaseRates phase_rhs(double r, double theta, const MeanFieldParams& p, double n);

// d(r^2)/dt = -4Y r^2 (n - r^2) sin 2theta.
double amplitude_rate(double r, double theta, const MeanFieldParams& p, double n);

// r^2(t) = n / (1 + exp(4 Y n sin(2 theta) t)).
double amplitude_closed_form(double n, double y, double theta_locked, double t);

enum class BranchKind { Trivial, FourWaveMixing, CrossPhase };

struct StationaryBranch {
    BranchKind kind{BranchKind::Trivial};
    double energy{0.0};
    double r{0.0};
    std::vector<double> thetas; // admissible locked phases
    bool any_theta{false};      // true when theta is free
};

std::vector<StationaryBranch> stationary_solutions(const MeanFieldParams& p, double n);

// max(|da/dt + iE a|, |db/dt + iE b|) for the branch realized at theta.
double stationary_residual(const StationaryBranch& branch, double theta, const MeanFieldParams& p, double n);

struct LockingReport {
    bool locked{false};
    std::optional<double> onset; // first time of a qualifying window
    double max_rate_last_window{0.0};
};

// Locked when |dtheta/dt| < rate_tol * omega over some window of length
// window / omega.
LockingReport detect_phase_locking(const MeanFieldSeries& series, const MeanFieldParams& p,
                                   double rate_tol = 1e-6, double window = 10.0);

struct PortraitSample {
    double theta{0.0};
    double u{0.0};         // r^2 / n
    double theta_rate{0.0};
    double u_rate{0.0};
};

// Vector field of (theta, r^2/n) on a grid, u strictly inside (0, 1).
std::vector<PortraitSample> phase_portrait(const MeanFieldParams& p, double n,
                                           std::span<const double> thetas, std::span<const double> us);

} // namespace dimerheat
