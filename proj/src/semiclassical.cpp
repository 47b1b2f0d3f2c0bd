// semiclassical.cpp — Mean-field dynamics of the dimer without hopping

#include "dimerheat/semiclassical.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

namespace dimerheat {

namespace {
constexpr Complex I{0.0, 1.0};
constexpr double pi = std::numbers::pi;
} // namespace

MeanFieldState from_polar(double n, double r, double phi_a, double phi_b)
{
    if (!(n >= 0.0) || !(r >= 0.0) || r * r > n * (1.0 + 1e-15)) {
        throw std::invalid_argument("polar data needs 0 <= r^2 <= n");
    }
    // r^2 equal to n up to rounding leaves b empty
    const double rest = n - r * r;
    const double s = rest <= 4.0 * std::numeric_limits<double>::epsilon() * n ? 0.0 : std::sqrt(rest);
    return {std::polar(r, phi_a), std::polar(s, phi_b)};
}

void MeanFieldParams::validate() const
{
    if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive");
    if (!std::isfinite(y)) throw std::invalid_argument("y must be finite");
    if (!std::isfinite(z)) throw std::invalid_argument("z must be finite");
}

MeanFieldDerivative mean_field_rhs(const MeanFieldState& s, const MeanFieldParams& p)
{
    const Complex a = s.a0, b = s.b0;
    const Complex ia = p.omega * a + 2.0 * p.y * b * b * std::conj(a) + p.z * std::norm(b) * a;
    const Complex ib = p.omega * b + 2.0 * p.y * a * a * std::conj(b) + p.z * std::norm(a) * b;
    return {-I * ia, -I * ib};
}

MeanFieldSeries integrate_mean_field(const MeanFieldState& s0, const MeanFieldParams& p,
                                     std::span<const double> times, const MeanFieldOptions& options)
{
    namespace odeint = boost::numeric::odeint;
    p.validate();
    if (times.empty() || times.front() != 0.0) throw std::invalid_argument("times must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("times must be strictly ascending");
    }

    using State = std::vector<Complex>;
    auto rhs = [&p](const State& x, State& dx, double) {
        const auto d = mean_field_rhs({x[0], x[1]}, p);
        dx.resize(2);
        dx[0] = d.a0;
        dx[1] = d.b0;
    };
    State x{s0.a0, s0.b0};
    MeanFieldSeries out;
    out.times.assign(times.begin(), times.end());
    out.states.reserve(times.size());
    auto observer = [&out](const State& v, double) { out.states.push_back({v[0], v[1]}); };

    if (times.size() == 1) {
        observer(x, 0.0);
    } else {
        auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol,
                                                 odeint::runge_kutta_dopri5<State>());
        const double dt0 = std::min(1e-3 / p.omega, times[1]);
        odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, observer,
                                odeint::max_step_checker(1000000));
    }

    const double n0 = s0.power();
    for (std::size_t k = 0; k < out.states.size(); ++k) {
        const double drift = std::abs(out.states[k].power() - n0);
        if (drift > options.power_tol * std::max(n0, 1e-300)) {
            std::ostringstream msg;
            msg << "mean-field power drift " << drift << " at t=" << out.times[k];
            throw std::runtime_error(msg.str());
        }
    }
    return out;
}

PhaseRates phase_rhs(double r, double theta, const MeanFieldParams& p, double n)
{
    const double r2 = r * r;
    if (!(r2 > 0.0) || !(r2 < n)) throw std::invalid_argument("phase equations need 0 < r^2 < n");
    const double c2 = std::cos(2.0 * theta);
    PhaseRates out;
    out.phi_a = -p.omega - 2.0 * p.y * (n - r2) * c2 - p.z * (n - r2);
    out.phi_b = -p.omega - 2.0 * p.y * r2 * c2 - p.z * r2;
    out.theta = out.phi_a - out.phi_b;
    return out;
}

double amplitude_rate(double r, double theta, const MeanFieldParams& p, double n)
{
    const double r2 = r * r;
    return -4.0 * p.y * r2 * (n - r2) * std::sin(2.0 * theta);
}

double amplitude_closed_form(double n, double y, double theta_locked, double t)
{
    const double s = std::sin(2.0 * theta_locked);
    const double e = 4.0 * y * n * s * t;
    if (e > 700.0) return n * std::exp(-e);
    return n / (1.0 + std::exp(e));
}

std::vector<StationaryBranch> stationary_solutions(const MeanFieldParams& p, double n)
{
    p.validate();
    if (!(n > 0.0)) throw std::invalid_argument("n must be positive");
    std::vector<StationaryBranch> out;
    const double r_half = std::sqrt(0.5 * n);
    if (p.y == 0.0) {
        out.push_back({BranchKind::CrossPhase, p.omega + 0.5 * p.z * n, r_half, {}, true});
    } else {
        // reality of E forces sin 2theta = 0
        out.push_back({BranchKind::FourWaveMixing, p.omega + p.y * n + 0.5 * p.z * n, r_half, {0.0, pi}, false});
        out.push_back({BranchKind::FourWaveMixing, p.omega - p.y * n + 0.5 * p.z * n, r_half,
                       {0.5 * pi, 1.5 * pi}, false});
    }
    out.push_back({BranchKind::Trivial, p.omega, 0.0, {}, true});
    out.push_back({BranchKind::Trivial, p.omega, std::sqrt(n), {}, true});
    return out;
}

double stationary_residual(const StationaryBranch& branch, double theta, const MeanFieldParams& p, double n)
{
    const auto s = from_polar(n, std::min(branch.r, std::sqrt(n)), theta, 0.0);
    const auto d = mean_field_rhs(s, p);
    const double ra = std::abs(d.a0 + I * branch.energy * s.a0);
    const double rb = std::abs(d.b0 + I * branch.energy * s.b0);
    return std::max(ra, rb);
}

LockingReport detect_phase_locking(const MeanFieldSeries& series, const MeanFieldParams& p,
                                   double rate_tol, double window)
{
    LockingReport rep;
    const double span = window / p.omega;
    const double limit = rate_tol * p.omega;
    std::optional<double> run_start;
    double last_window_max = 0.0;
    for (std::size_t k = 0; k < series.states.size(); ++k) {
        const auto& s = series.states[k];
        const double n = s.power();
        const double r = s.r();
        double rate = 0.0;
        if (r * r > 0.0 && r * r < n) {
            rate = std::abs(phase_rhs(r, s.theta(), p, n).theta);
        }
        const double t = series.times[k];
        if (rate < limit) {
            if (!run_start) run_start = t;
            if (t - *run_start >= span && !rep.locked) {
                rep.locked = true;
                rep.onset = *run_start;
            }
        } else {
            run_start.reset();
        }
        if (!series.times.empty() && t >= series.times.back() - span) last_window_max = std::max(last_window_max, rate);
    }
    rep.max_rate_last_window = last_window_max;
    return rep;
}

std::vector<PortraitSample> phase_portrait(const MeanFieldParams& p, double n,
                                           std::span<const double> thetas, std::span<const double> us)
{
    std::vector<PortraitSample> out;
    out.reserve(thetas.size() * us.size());
    for (double th : thetas) {
        for (double u : us) {
            if (!(u > 0.0) || !(u < 1.0)) throw std::invalid_argument("portrait u must lie in (0, 1)");
            const double r = std::sqrt(u * n);
            out.push_back({th, u, phase_rhs(r, th, p, n).theta, amplitude_rate(r, th, p, n) / n});
        }
    }
    return out;
}

} // namespace dimerheat
