// hamiltonians.hpp — Dimer Hamiltonians, spectra and ground-state diagnostics

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dimerheat/fock.hpp"

namespace dimerheat {

enum class Interaction { Linear, SFWM, XPM };

std::string to_string(Interaction kind);
// Accepts "linear", "sfwm", "xpm" (case-insensitive).
Interaction parse_interaction(const std::string& name);

struct DimerParams {
    double omega{1.0};  // cavity frequency
    double j{0.0};      // hopping
    double y{0.0};      // four-wave mixing
    double z{0.0};      // cross-phase modulation
    Interaction kind{Interaction::Linear};

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
    // Strength of the active interaction term.
    double strength() const;
};

// Parameters with only the term selected by kind set to strength.
DimerParams make_params(Interaction kind, double omega, double strength);

// omega (a^dag a + b^dag b) plus the single interaction term selected by kind.
QuantumOperator build_hamiltonian(const BasisPtr& basis, const DimerParams& params);
// All three interaction terms at once; params.kind is ignored.
QuantumOperator build_composite_hamiltonian(const BasisPtr& basis, const DimerParams& params);

struct Spectrum {
    BasisPtr basis;
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXcd eigenvectors;  // columns, unitary
    std::vector<int> sector;        // total number of each eigenvector, -1 if mixed
    std::vector<double> bohr_frequencies; // clustered E_i - E_j, i != j, ascending
};

// Full eigendecomposition of a Hermitian operator. Number-conserving input is
// diagonalized sector by sector so every eigenvector carries a definite total
// number. Throws std::invalid_argument on non-Hermitian input.
Spectrum spectrum(const QuantumOperator& h, double cluster_tol = 1e-9);

// Merge ascending values whose neighbours lie within tol; each cluster is
// represented by its mean.
std::vector<double> cluster_sorted(std::span<const double> ascending, double tol);

// Single-excitation energies: omega +- J, omega +- Y n, omega + Z n.
std::vector<double> excitation_energy_estimates(const DimerParams& params, int n);

struct GroundState {
    double energy{0.0};
    Eigen::VectorXcd state;
    int degeneracy{1};
};

// Lowest eigenpair. Degenerate levels pick the member with the largest vacuum
// overlap; the largest-magnitude component is made real positive.
GroundState ground_state(const QuantumOperator& h, double degeneracy_tol = 1e-9);

struct OverlapPoint {
    double y{0.0};
    double overlap{0.0}; // |<G|0>|^2
};

struct OverlapScan {
    std::vector<OverlapPoint> points;
    std::optional<double> critical_y; // first grid value with overlap < 1/2
    bool monotone{true};              // overlap non-increasing along the grid
};

OverlapScan vacuum_overlap_scan(double omega, std::span<const double> y_grid, int n_max);

// Bisection for the Y where the vacuum overlap falls below 1/2; [lo, hi] must
// bracket it.
double refine_critical_y(double omega, double lo, double hi, int n_max, double tol = 1e-6);

} // namespace dimerheat
