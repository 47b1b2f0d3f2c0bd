// dynamics.hpp — Density-matrix propagation and steady states

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dimerheat/lindblad.hpp"

namespace dimerheat {

// Raised when a stored state or steady state violates its numerical bounds.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double time, double value)
        : std::runtime_error(what), time_(time), value_(value) {}

    double time() const { return time_; }
    double value() const { return value_; }

private:
    double time_;
    double value_;
};

enum class PropagationMethod {
    MatrixExponential,   // exp(L dt) per distinct step, applied repeatedly
    AdaptiveRungeKutta,  // Dormand-Prince 5(4) with error control
};

struct StateTolerances {
    double hermiticity{1e-10};
    double trace{1e-9};
    double positivity{1e-8}; // minimum eigenvalue >= -positivity
};

struct PropagationOptions {
    PropagationMethod method{PropagationMethod::MatrixExponential};
    double rel_tol{1e-10};
    double abs_tol{1e-12};
    bool keep_states{true};
    bool check_states{true};
    StateTolerances tolerances{};
    // Called for every requested time, after the state checks.
    std::function<void(std::size_t index, double t, const QuantumOperator& rho)> observer{};
};

struct Trajectory {
    BasisPtr basis;
    std::vector<double> times;
    std::vector<QuantumOperator> states; // empty when keep_states is false
    PropagationMethod method{PropagationMethod::MatrixExponential};
    double rel_tol{0.0};
    double abs_tol{0.0};
};

// Throws ToleranceError carrying `time` when rho breaks hermiticity, unit
// trace or positivity bounds.
void check_density_matrix(const QuantumOperator& rho, double time, const StateTolerances& tol = {});

// rho(t_k) for d rho/dt = L(rho). times must be ascending and start at 0.
// Only the invariant blocks of L that rho0 touches are evolved.
Trajectory propagate(const Liouvillian& liouvillian, const QuantumOperator& rho0,
                     std::span<const double> times, const PropagationOptions& options = {});

struct SteadyState {
    QuantumOperator rho;
    bool degenerate{false};
    int null_dimension{1};
    double residual{0.0}; // Frobenius norm of L(rho)
};

struct SteadyStateOptions {
    // Singular values below zero_tol * sigma_max count as null directions.
    double zero_tol{1e-11};
    double max_residual{1e-9};
};

// Null vector of L on the population block, Hermitized and trace normalized.
// A degenerate null space is resolved by projecting `reference` (default:
// maximally mixed) with the zero-eigenvalue spectral projector, which is the
// long-time limit reached from that state.
SteadyState steady_state(const Liouvillian& liouvillian,
                         const std::optional<QuantumOperator>& reference = std::nullopt,
                         const SteadyStateOptions& options = {});

// Tr[op rho(t)] at every stored time; op must be Hermitian.
std::vector<std::pair<double, double>> expectation_series(const Trajectory& trajectory,
                                                          const QuantumOperator& op);

// Half the sum of absolute eigenvalues of rho - sigma.
double trace_distance(const QuantumOperator& rho, const QuantumOperator& sigma);

} // namespace dimerheat
