// thermo.cpp — Heat currents, analytic linear transport and parameter scans

#include "dimerheat/thermo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/differentiation/finite_difference.hpp>
#include <boost/math/tools/minima.hpp>

#include "dimerheat/grid.hpp"

namespace dimerheat {

std::vector<QuantumOperator> heat_current_operators(const Liouvillian& liouvillian)
{
    std::vector<QuantumOperator> out;
    out.reserve(liouvillian.bath_count());
    for (std::size_t i = 0; i < liouvillian.bath_count(); ++i) {
        out.push_back(liouvillian.adjoint_dissipator(i, liouvillian.hamiltonian()));
    }
    return out;
}

namespace {

void finish_series(CurrentSeries& s)
{
    const std::size_t n = s.times.size();
    s.total.assign(n, 0.0);
    for (const auto& row : s.per_bath) {
        for (std::size_t k = 0; k < n; ++k) s.total[k] += row[k];
    }
    if (s.per_bath.size() == 2) {
        s.net.resize(n);
        for (std::size_t k = 0; k < n; ++k) s.net[k] = s.per_bath[0][k] - s.per_bath[1][k];
    }
    s.heat = integrated_heat(s.times, s.total);
}

} // namespace

CurrentSeries heat_current_series(const QuantumOperator& h, const Liouvillian& liouvillian,
                                  const Trajectory& trajectory)
{
    if (!same_basis(h.basis(), liouvillian.basis()) || !same_basis(h.basis(), trajectory.basis)) {
        throw BasisMismatchError();
    }
    if (trajectory.states.size() != trajectory.times.size()) {
        throw std::invalid_argument("trajectory does not hold its states");
    }
    std::vector<QuantumOperator> ops;
    for (std::size_t i = 0; i < liouvillian.bath_count(); ++i) {
        ops.push_back(liouvillian.adjoint_dissipator(i, h));
    }
    CurrentSeries s;
    s.times = trajectory.times;
    s.per_bath.assign(ops.size(), std::vector<double>(s.times.size()));
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        for (std::size_t i = 0; i < ops.size(); ++i) {
            s.per_bath[i][k] = expectation(ops[i], trajectory.states[k]).real();
        }
    }
    finish_series(s);
    return s;
}

std::vector<double> heat_currents(const Liouvillian& liouvillian, const QuantumOperator& rho)
{
    std::vector<double> out;
    for (const auto& op : heat_current_operators(liouvillian)) out.push_back(expectation(op, rho).real());
    return out;
}

std::vector<double> integrated_heat(std::span<const double> times, std::span<const double> current)
{
    if (times.size() != current.size()) throw std::invalid_argument("time and current lengths differ");
    std::vector<double> q(times.size(), 0.0);
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        if (dt < 0.0) throw std::invalid_argument("time grid must be monotone");
        q[k] = q[k - 1] + 0.5 * dt * (current[k] + current[k - 1]);
    }
    return q;
}

TransientResult run_transient(const Liouvillian& liouvillian, const QuantumOperator& rho0,
                              std::span<const double> times,
                              std::span<const QuantumOperator> observables,
                              PropagationOptions options)
{
    const auto ops = heat_current_operators(liouvillian);
    const QuantumOperator& h = liouvillian.hamiltonian();
    for (const auto& o : observables) {
        if (!same_basis(o.basis(), liouvillian.basis())) throw BasisMismatchError();
    }

    TransientResult r;
    const std::size_t n = times.size();
    r.currents.times.assign(times.begin(), times.end());
    r.currents.per_bath.assign(ops.size(), std::vector<double>(n));
    r.energy.resize(n);
    r.observables.assign(observables.size(), std::vector<double>(n));

    auto user = options.observer;
    options.keep_states = false;
    options.observer = [&](std::size_t k, double t, const QuantumOperator& rho) {
        for (std::size_t i = 0; i < ops.size(); ++i) r.currents.per_bath[i][k] = expectation(ops[i], rho).real();
        r.energy[k] = expectation(h, rho).real();
        for (std::size_t i = 0; i < observables.size(); ++i) {
            r.observables[i][k] = expectation(observables[i], rho).real();
        }
        if (user) user(k, t, rho);
    };
    propagate(liouvillian, rho0, times, options);
    finish_series(r.currents);
    return r;
}

double fit_decay_rate(std::span<const double> times, std::span<const double> values)
{
    if (times.size() != values.size() || times.size() < 2) {
        throw std::invalid_argument("decay fit needs matching series of length >= 2");
    }
    const bool positive = values[0] > 0.0;
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (values[k] == 0.0 || (values[k] > 0.0) != positive) {
            throw std::invalid_argument("decay fit needs values of one strict sign");
        }
        const double y = std::log(std::abs(values[k]));
        st += times[k];
        sy += y;
        stt += times[k] * times[k];
        sty += times[k] * y;
    }
    const double n = static_cast<double>(times.size());
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    return -slope;
}

double LinearOneBath::occupation(double t) const
{
    return nbar + (n0 - nbar) * std::exp(-rate() * t);
}

double LinearOneBath::current(double t) const
{
    return 2.0 * gamma * e_plus * e_plus * (nbar - n0) * std::exp(-rate() * t);
}

LinearOneBath analytic_linear_one_bath(double omega, double j, double gamma, double temperature,
                                       double n0_sym)
{
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const double e = omega + j;
    return {e, gamma, bose_occupation(e, temperature), n0_sym};
}

double LinearTwoBath::nbar_effective() const
{
    return (gamma1 * nbar1 + gamma2 * nbar2) / gamma_total();
}

double LinearTwoBath::occupation(double t) const
{
    const double ne = nbar_effective();
    return ne + (n0 - ne) * std::exp(-rate() * t);
}

double LinearTwoBath::current(int bath, double t) const
{
    const double g = bath == 0 ? gamma1 : gamma2;
    const double nb = bath == 0 ? nbar1 : nbar2;
    return 2.0 * g * e_plus * e_plus * (nb - occupation(t));
}

double LinearTwoBath::total_current(double t) const
{
    return 2.0 * e_plus * e_plus * gamma_total() * (nbar_effective() - n0) * std::exp(-rate() * t);
}

double LinearTwoBath::net_current(double t) const
{
    return 2.0 * e_plus * e_plus * (gamma1 * nbar1 - gamma2 * nbar2 - (gamma1 - gamma2) * occupation(t));
}

double LinearTwoBath::net_current_steady() const
{
    return 2.0 * e_plus * e_plus * (gamma1 * nbar1 - gamma2 * nbar2 - (gamma1 - gamma2) * nbar_effective());
}

LinearTwoBath analytic_linear_two_bath(double omega, double j, double gamma1, double gamma2,
                                       double t1, double t2, double n0_sym)
{
    if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0) || !(gamma1 + gamma2 > 0.0)) {
        throw std::invalid_argument("gammas must be nonnegative and not both zero");
    }
    const double e = omega + j;
    return {e, gamma1, gamma2, bose_occupation(e, t1), bose_occupation(e, t2), n0_sym};
}

std::pair<double, double> split_temperatures(double temperature, double fraction)
{
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    if (!(fraction >= 0.0) || !(fraction < 2.0)) throw std::invalid_argument("deltaT fraction must lie in [0, 2)");
    return {temperature * (1.0 + 0.5 * fraction), temperature * (1.0 - 0.5 * fraction)};
}

namespace {

double csch2(double x)
{
    const double s = std::sinh(x);
    return 1.0 / (s * s);
}

} // namespace

Conductivity thermal_conductivity(double omega, double j, double gamma, double temperature)
{
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    const double e = omega + j;
    Conductivity c;
    c.formula = 16.0 * gamma * e * e * e / (temperature * temperature) * csch2(e / (2.0 * temperature));
    // difference variable in units of T^2/E keeps the stencil at a fixed E/T spacing
    const double unit = temperature * temperature / e;
    auto net = [&](double s) {
        return analytic_linear_two_bath(omega, j, gamma, gamma, temperature + 0.5 * s * unit,
                                        temperature - 0.5 * s * unit).net_current_steady();
    };
    c.numerical = boost::math::differentiation::finite_difference_derivative<decltype(net), double, 8>(net, 0.0) / unit;
    c.ratio = c.formula / c.numerical;
    return c;
}

double conductivity_argmax_ratio()
{
    auto neg = [](double x) { return -x * x * x * csch2(0.5 * x); };
    const auto r = boost::math::tools::brent_find_minima(neg, 0.5, 10.0, 50);
    return r.first;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn)
{
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            if (failed.load()) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<NessPoint> ness_current_scan(Interaction kind, std::span<const double> strengths,
                                         const NessScanOptions& options)
{
    const auto [t_hot, t_cold] = split_temperatures(options.temperature, options.delta_fraction);
    const std::vector<BathSpec> baths{{t_hot, options.gamma}, {t_cold, options.gamma}};
    for (const auto& b : baths) b.validate();
    const auto basis = build_basis(options.n_max);
    const auto vacuum = vacuum_state(basis);

    std::vector<NessPoint> out(strengths.size());
    parallel_for(strengths.size(), options.threads, [&](std::size_t i) {
        const auto h = build_hamiltonian(basis, make_params(kind, options.omega, strengths[i]));
        const auto l = build_liouvillian(h, baths, {options.cluster_tol, true});
        const auto ss = steady_state(l, vacuum);
        const auto currents = heat_currents(l, ss.rho);
        out[i] = {strengths[i], currents[0], currents[1], currents[0] - currents[1], ss.residual, ss.degenerate};
    });
    return out;
}

std::vector<HeatMapPoint> heat_map_scan(Interaction kind, std::span<const double> temperatures,
                                        std::span<const double> strengths,
                                        const HeatMapOptions& options)
{
    if (!(options.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (options.samples < 2) throw std::invalid_argument("samples must be at least 2");
    const double t_final = options.t_final > 0.0 ? options.t_final : 50.0 / (options.gamma * options.omega);
    const auto times = time_grid(2.0 * t_final, 2 * (options.samples - 1) + 1);
    const std::size_t mid = options.samples - 1;
    const auto basis = build_basis(options.n_max);
    const auto vacuum = vacuum_state(basis);

    const std::size_t ns = strengths.size();
    std::vector<HeatMapPoint> out(temperatures.size() * ns);
    parallel_for(out.size(), options.threads, [&](std::size_t idx) {
        const double temp = temperatures[idx / ns];
        const double s = strengths[idx % ns];
        const auto h = build_hamiltonian(basis, make_params(kind, options.omega, s));
        const BathSpec bath{temp, options.gamma};
        const auto l = build_liouvillian(h, std::span<const BathSpec>(&bath, 1), {options.cluster_tol, true});
        const auto r = run_transient(l, vacuum, times);
        const auto& total = r.currents.total;
        HeatMapPoint p;
        p.temperature = temp;
        p.strength = s;
        p.q_final = r.currents.heat[mid];
        p.q_doubled = r.currents.heat.back();
        p.energy_change = r.energy[mid] - r.energy[0];
        p.min_current = *std::min_element(total.begin(), total.end());
        out[idx] = p;
    });
    return out;
}

} // namespace dimerheat
