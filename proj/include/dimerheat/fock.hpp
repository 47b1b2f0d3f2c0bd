// fock.hpp — Truncated two-mode Fock space, ladder operators and operator arithmetic

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace dimerheat {

using Index = Eigen::Index;
using Complex = std::complex<double>;

enum class Mode { A, B };

enum class Cutoff {
    TotalNumber, // n_a + n_b <= n_max
    PerMode,     // n_a <= n_max and n_b <= n_max
};

struct FockState {
    int n_a{0};
    int n_b{0};

    int total() const { return n_a + n_b; }
    bool operator==(const FockState&) const = default;
};

// Ordered number-state basis. States are sorted by total number, and within a
// sector by descending n_a, so the n=2 sector reads (2,0), (1,1), (0,2).
class FockBasis {
public:
    FockBasis(int n_max, Cutoff cutoff);

    int n_max() const { return n_max_; }
    Cutoff cutoff() const { return cutoff_; }
    std::size_t size() const { return states_.size(); }
    Index dim() const { return static_cast<Index>(states_.size()); }
    const std::vector<FockState>& states() const { return states_; }
    const FockState& state(Index i) const { return states_[static_cast<std::size_t>(i)]; }

    // Total particle number of basis state i.
    int total(Index i) const { return state(i).total(); }
    int max_total() const;

    // -1 when the state lies outside the truncated space.
    Index index_of(FockState s) const;
    bool contains(FockState s) const { return index_of(s) >= 0; }

    // Indices of all states with n_a + n_b == n (ascending).
    std::vector<Index> sector(int n) const;
    // Indices of all states with n_a + n_b < n.
    std::vector<Index> below_total(int n) const;

    bool operator==(const FockBasis& other) const
    {
        return n_max_ == other.n_max_ && cutoff_ == other.cutoff_;
    }

private:
    int n_max_;
    Cutoff cutoff_;
    std::vector<FockState> states_;
    std::unordered_map<long long, Index> lookup_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

// Total-number truncation, (n_max+1)(n_max+2)/2 states.
BasisPtr build_basis(int n_max);
// Per-mode truncation, (n_max+1)^2 states; used for convergence studies.
BasisPtr build_basis_per_mode(int n_max);

class BasisMismatchError : public std::invalid_argument {
public:
    BasisMismatchError() : std::invalid_argument("operands are expressed in different Fock bases") {}
};

bool same_basis(const BasisPtr& lhs, const BasisPtr& rhs);

// Dense complex matrix bound to the basis it is expressed in.
class QuantumOperator {
public:
    QuantumOperator(BasisPtr basis, Eigen::MatrixXcd matrix);

    static QuantumOperator zero(BasisPtr basis);
    static QuantumOperator identity(BasisPtr basis);
    // |i><j| in the Fock basis.
    static QuantumOperator projector(BasisPtr basis, Index i, Index j);

    const BasisPtr& basis() const { return basis_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    Index dim() const { return matrix_.rows(); }
    Complex operator()(Index i, Index j) const { return matrix_(i, j); }

    QuantumOperator adjoint() const;
    Complex trace() const { return matrix_.trace(); }
    double frobenius_norm() const { return matrix_.norm(); }
    // max |X - X^dagger| entry
    double hermiticity_defect() const;

    QuantumOperator& operator+=(const QuantumOperator& rhs);
    QuantumOperator& operator-=(const QuantumOperator& rhs);
    QuantumOperator& operator*=(Complex s);

private:
    BasisPtr basis_;
    Eigen::MatrixXcd matrix_;
};

QuantumOperator operator+(QuantumOperator lhs, const QuantumOperator& rhs);
QuantumOperator operator-(QuantumOperator lhs, const QuantumOperator& rhs);
QuantumOperator operator*(const QuantumOperator& lhs, const QuantumOperator& rhs);
QuantumOperator operator*(Complex s, QuantumOperator op);
QuantumOperator operator*(QuantumOperator op, Complex s);
inline QuantumOperator operator*(double s, QuantumOperator op) { return Complex(s, 0.0) * std::move(op); }

QuantumOperator add(const QuantumOperator& x, const QuantumOperator& y);
QuantumOperator scale(const QuantumOperator& x, Complex s);
QuantumOperator multiply(const QuantumOperator& x, const QuantumOperator& y);
QuantumOperator adjoint(const QuantumOperator& x);
QuantumOperator commutator(const QuantumOperator& x, const QuantumOperator& y);
QuantumOperator anticommutator(const QuantumOperator& x, const QuantumOperator& y);
Complex trace(const QuantumOperator& x);
double frobenius_norm(const QuantumOperator& x);
// Tr[op rho]
Complex expectation(const QuantumOperator& op, const QuantumOperator& rho);

// Principal submatrix on the given basis indices.
Eigen::MatrixXcd restrict_to(const QuantumOperator& op, std::span<const Index> indices);

QuantumOperator annihilator(const BasisPtr& basis, Mode mode);
// Exact adjoint of the annihilator: states pushed past the cutoff are dropped.
QuantumOperator creator(const BasisPtr& basis, Mode mode);
QuantumOperator number_operator(const BasisPtr& basis, Mode mode);
QuantumOperator total_number(const BasisPtr& basis);

struct NormalModes {
    QuantumOperator c; // (a + b)/sqrt(2), symmetric
    QuantumOperator d; // (a - b)/sqrt(2), antisymmetric
};

NormalModes normal_mode_annihilators(const BasisPtr& basis);

// Pure state |i><i| on a basis state, e.g. the vacuum at index 0.
QuantumOperator fock_projector(const BasisPtr& basis, FockState s);
QuantumOperator vacuum_state(const BasisPtr& basis);

} // namespace dimerheat
