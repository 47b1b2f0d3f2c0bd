// algebra.hpp — su(2) and deformed su(2) realizations on the two-mode Fock space

#pragma once

#include <string>
#include <vector>

#include "dimerheat/fock.hpp"

namespace dimerheat {

// Schwinger-type generators built from a^dagger b.
struct SuTwoSet {
    QuantumOperator x0;        // (a^dag a + b^dag b)/2
    QuantumOperator xz;        // (a^dag a - b^dag b)/2
    QuantumOperator x_plus;    // a^dag b
    QuantumOperator x_minus;   // b^dag a
    QuantumOperator x_squared; // Casimir
};

// Two-photon generators: y0 = x0/2, yz = xz/2, y_plus = x_plus^2.
struct DeformedSet {
    QuantumOperator y0;
    QuantumOperator yz;
    QuantumOperator y_plus;
    QuantumOperator y_minus;
};

SuTwoSet build_su2(const BasisPtr& basis);
DeformedSet build_deformed(const BasisPtr& basis);

// Diagonal 0/1 projector onto the n-particle sector. Throws std::out_of_range
// when the sector is not part of the basis.
QuantumOperator sector_projector(const BasisPtr& basis, int n);

// Frobenius norm of (lhs - rhs) on each fixed-n block.
struct RelationResidual {
    std::string name;
    std::vector<double> per_sector; // index = total number n
    double max() const;
};

std::vector<double> sector_residuals(const QuantumOperator& difference);

// [Xz,X+-] = +-X+-, [X0,X+-,z] = 0, [X+,X-] = 2Xz, X^2 = X0^2 + X0, plus the
// Casimir eigenvalue (n/2)(n/2+1) sector by sector.
std::vector<RelationResidual> verify_su2_relations(const SuTwoSet& s);

// P(y0, yz) = -64 yz^3 + 8 (8 y0^2 + 4 y0 - 1) yz
QuantumOperator deformed_polynomial(const DeformedSet& y);

struct DeformedReport {
    RelationResidual commutator;      // [Y+,Y-] - P(Y0,Yz)
    RelationResidual adjointness;     // Y- - Y+^dagger
    // Measured kappa in [Yz, Y+-] = +-kappa Y+-, per sector; NaN where Y+ vanishes.
    std::vector<double> raising_coefficient;
    RelationResidual raising_residual; // [Yz,Y+] - kappa_n Y+ with the measured kappa
};

DeformedReport verify_deformed_commutator(const DeformedSet& y);

} // namespace dimerheat
