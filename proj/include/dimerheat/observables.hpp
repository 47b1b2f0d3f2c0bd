// observables.hpp — Position-space probability density of two-mode states

#pragma once

#include <vector>

#include "dimerheat/fock.hpp"

namespace dimerheat {

// Normalized Hermite function psi_n(x) (hbar = m = omega = 1).
double oscillator_wavefunction(int n, double x);

// psi_0(x) ... psi_{n_max}(x) by the three-term recurrence.
std::vector<double> hermite_functions(int n_max, double x);

struct PositionGrid {
    int points{201};
    double x_max{8.0};

    void validate() const;
    double spacing() const { return 2.0 * x_max / (points - 1); }
    std::vector<double> coordinates() const;
};

// p(x1, x2) = sum rho_ij phi_i(x1, x2) phi_j(x1, x2), rows indexed by x1.
// Throws std::runtime_error when the imaginary residue
// exceeds 1e-10 or p dips below -1e-8.
Eigen::MatrixXd position_pdf(const QuantumOperator& rho, const PositionGrid& grid);

// 2D trapezoid integral of values sampled on grid x grid.
double integrate_grid(const Eigen::MatrixXd& values, const PositionGrid& grid);

// 1 / integral(p^2): area-like spread, larger when delocalized.
double delocalization_measure(const Eigen::MatrixXd& pdf, const PositionGrid& grid);

// max |integral(psi_m psi_n) - delta_mn| for m, n <= n_max under the grid's trapezoid rule.
double orthonormality_defect(int n_max, const PositionGrid& grid);

} // namespace dimerheat
