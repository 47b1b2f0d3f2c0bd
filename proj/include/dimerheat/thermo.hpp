// thermo.hpp — Heat currents, integrated heat and linear-response transport

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dimerheat/dynamics.hpp"
#include "dimerheat/hamiltonians.hpp"
#include "dimerheat/lindblad.hpp"

namespace dimerheat {

// Positive current = energy flowing from the bath into the system.
struct CurrentSeries {
    std::vector<double> times;
    std::vector<std::vector<double>> per_bath; // [bath][sample]
    std::vector<double> total;
    std::vector<double> net;                   // I_1 - I_2, empty for one bath
    std::vector<double> heat;                  // cumulative trapezoid of total

    std::size_t size() const { return times.size(); }
};

// D_i^dagger(H) per bath, so I_i = Tr[D_i^dagger(H) rho].
std::vector<QuantumOperator> heat_current_operators(const Liouvillian& liouvillian);

// I_i(t) = Tr[H D_i(rho(t))] over the stored states of a trajectory.
CurrentSeries heat_current_series(const QuantumOperator& h, const Liouvillian& liouvillian,
                                  const Trajectory& trajectory);

// Currents at a single state.
std::vector<double> heat_currents(const Liouvillian& liouvillian, const QuantumOperator& rho);

// Cumulative trapezoid rule, Q(0) = 0.
std::vector<double> integrated_heat(std::span<const double> times, std::span<const double> current);

struct TransientResult {
    CurrentSeries currents;
    std::vector<double> energy;                    // Tr[H rho(t)]
    std::vector<std::vector<double>> observables;  // [observable][sample]
};

// Propagate without storing states, recording currents, energy and the given
// Hermitian observables at every time.
TransientResult run_transient(const Liouvillian& liouvillian, const QuantumOperator& rho0,
                              std::span<const double> times,
                              std::span<const QuantumOperator> observables = {},
                              PropagationOptions options = {});

// Least-squares slope of -log|y| against t; every y must share one sign.
double fit_decay_rate(std::span<const double> times, std::span<const double> values);

// Closed-form linear dimer, one bath coupled to c = (a+b)/sqrt(2).
struct LinearOneBath {
    double e_plus{0.0};
    double gamma{0.0};
    double nbar{0.0};
    double n0{0.0};     // initial <c^dag c>

    double rate() const { return 2.0 * gamma * e_plus; }
    double relaxation_time() const { return 1.0 / rate(); }
    double occupation(double t) const;
    double current(double t) const;
};

LinearOneBath analytic_linear_one_bath(double omega, double j, double gamma, double temperature,
                                       double n0_sym = 0.0);

struct LinearTwoBath {
    double e_plus{0.0};
    double gamma1{0.0}, gamma2{0.0};
    double nbar1{0.0}, nbar2{0.0};
    double n0{0.0};

    double gamma_total() const { return gamma1 + gamma2; }
    double nbar_effective() const;
    double rate() const { return 2.0 * e_plus * gamma_total(); }
    double occupation(double t) const;
    double current(int bath, double t) const; // bath 0 or 1
    double total_current(double t) const;
    double net_current(double t) const;
    double net_current_steady() const;
};

LinearTwoBath analytic_linear_two_bath(double omega, double j, double gamma1, double gamma2,
                                       double t1, double t2, double n0_sym = 0.0);

// Hot and cold bath temperatures T(1 +- fraction/2), so (T1 - T2)/T = fraction.
std::pair<double, double> split_temperatures(double temperature, double fraction);

struct Conductivity {
    double formula{0.0};    // 16 Gamma E^3 / T^2 csch^2(E / 2T)
    double numerical{0.0};  // d I_net / d(T1 - T2) of the Landauer expression at fixed mean T
    double ratio{0.0};      // formula / numerical
};

Conductivity thermal_conductivity(double omega, double j, double gamma, double temperature);

// E/T maximizing the conductivity formula at fixed T.
double conductivity_argmax_ratio();

struct NessPoint {
    double strength{0.0};
    double current_hot{0.0};
    double current_cold{0.0};
    double net{0.0};
    double residual{0.0};
    bool degenerate{false};
};

struct NessScanOptions {
    double omega{1.0};
    double temperature{0.5};
    double delta_fraction{0.05};
    double gamma{0.01};
    int n_max{8};
    double cluster_tol{1e-9};
    unsigned threads{0}; // 0: hardware concurrency
};

// Two-bath steady net current per interaction strength. Each point is solved
// from the vacuum reference, which selects the steady state connected to it
// when decoupled symmetry sectors make the null space degenerate.
std::vector<NessPoint> ness_current_scan(Interaction kind, std::span<const double> strengths,
                                         const NessScanOptions& options);

struct HeatMapPoint {
    double temperature{0.0};
    double strength{0.0};
    double q_final{0.0};     // trapezoid Q at t_final
    double q_doubled{0.0};   // trapezoid Q at 2 t_final
    double energy_change{0.0}; // Tr[H rho(t_final)] - Tr[H rho0]
    double min_current{0.0};
};

struct HeatMapOptions {
    double omega{1.0};
    double gamma{0.01};
    int n_max{8};
    double t_final{0.0};          // 0: 50 / (gamma omega)
    std::size_t samples{2001};    // per t_final, endpoints included
    double cluster_tol{1e-9};
    unsigned threads{0};
};

// One-bath vacuum-start integrated heat over a (T, strength) grid, row-major
// in temperature. Each run extends to 2 t_final for the convergence check.
std::vector<HeatMapPoint> heat_map_scan(Interaction kind, std::span<const double> temperatures,
                                        std::span<const double> strengths,
                                        const HeatMapOptions& options);

// Runs fn(i) for i in [0, count) on a pool of worker threads; the first
// exception is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

} // namespace dimerheat
