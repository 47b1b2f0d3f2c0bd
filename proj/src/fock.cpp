// fock.cpp — Fock basis enumeration and ladder operators

#include "dimerheat/fock.hpp"

#include <algorithm>
#include <cmath>

namespace dimerheat {

namespace {

long long key_of(FockState s)
{
    return (static_cast<long long>(s.n_a) << 32) | static_cast<unsigned int>(s.n_b);
}

} // namespace

FockBasis::FockBasis(int n_max, Cutoff cutoff)
    : n_max_(n_max), cutoff_(cutoff)
{
    if (n_max < 0) {
        throw std::invalid_argument("n_max must be nonnegative");
    }
    const int top = cutoff == Cutoff::TotalNumber ? n_max : 2 * n_max;
    for (int n = 0; n <= top; ++n) {
        for (int n_a = n; n_a >= 0; --n_a) {
            const int n_b = n - n_a;
            if (cutoff == Cutoff::PerMode && (n_a > n_max || n_b > n_max)) continue;
            lookup_.emplace(key_of({n_a, n_b}), static_cast<Index>(states_.size()));
            states_.push_back({n_a, n_b});
        }
    }
}

int FockBasis::max_total() const
{
    return states_.empty() ? 0 : states_.back().total();
}

Index FockBasis::index_of(FockState s) const
{
    if (s.n_a < 0 || s.n_b < 0) return -1;
    const auto it = lookup_.find(key_of(s));
    return it == lookup_.end() ? -1 : it->second;
}

std::vector<Index> FockBasis::sector(int n) const
{
    std::vector<Index> out;
    for (Index i = 0; i < dim(); ++i) {
        if (total(i) == n) out.push_back(i);
    }
    return out;
}

std::vector<Index> FockBasis::below_total(int n) const
{
    std::vector<Index> out;
    for (Index i = 0; i < dim(); ++i) {
        if (total(i) < n) out.push_back(i);
    }
    return out;
}

BasisPtr build_basis(int n_max)
{
    return std::make_shared<const FockBasis>(n_max, Cutoff::TotalNumber);
}

BasisPtr build_basis_per_mode(int n_max)
{
    return std::make_shared<const FockBasis>(n_max, Cutoff::PerMode);
}

bool same_basis(const BasisPtr& lhs, const BasisPtr& rhs)
{
    if (lhs == rhs) return true;
    if (!lhs || !rhs) return false;
    return *lhs == *rhs;
}

QuantumOperator::QuantumOperator(BasisPtr basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix))
{
    if (!basis_) {
        throw std::invalid_argument("QuantumOperator requires a basis");
    }
    if (matrix_.rows() != basis_->dim() || matrix_.cols() != basis_->dim()) {
        throw std::invalid_argument("operator matrix does not match basis dimension");
    }
}

QuantumOperator QuantumOperator::zero(BasisPtr basis)
{
    const Index d = basis->dim();
    return {std::move(basis), Eigen::MatrixXcd::Zero(d, d)};
}

QuantumOperator QuantumOperator::identity(BasisPtr basis)
{
    const Index d = basis->dim();
    return {std::move(basis), Eigen::MatrixXcd::Identity(d, d)};
}

QuantumOperator QuantumOperator::projector(BasisPtr basis, Index i, Index j)
{
    const Index d = basis->dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    m(i, j) = 1.0;
    return {std::move(basis), std::move(m)};
}

QuantumOperator QuantumOperator::adjoint() const
{
    return {basis_, matrix_.adjoint()};
}

double QuantumOperator::hermiticity_defect() const
{
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

QuantumOperator& QuantumOperator::operator+=(const QuantumOperator& rhs)
{
    if (!same_basis(basis_, rhs.basis_)) throw BasisMismatchError();
    matrix_ += rhs.matrix_;
    return *this;
}

QuantumOperator& QuantumOperator::operator-=(const QuantumOperator& rhs)
{
    if (!same_basis(basis_, rhs.basis_)) throw BasisMismatchError();
    matrix_ -= rhs.matrix_;
    return *this;
}

QuantumOperator& QuantumOperator::operator*=(Complex s)
{
    matrix_ *= s;
    return *this;
}

QuantumOperator operator+(QuantumOperator lhs, const QuantumOperator& rhs)
{
    lhs += rhs;
    return lhs;
}

QuantumOperator operator-(QuantumOperator lhs, const QuantumOperator& rhs)
{
    lhs -= rhs;
    return lhs;
}

QuantumOperator operator*(const QuantumOperator& lhs, const QuantumOperator& rhs)
{
    if (!same_basis(lhs.basis(), rhs.basis())) throw BasisMismatchError();
    return {lhs.basis(), lhs.matrix() * rhs.matrix()};
}

QuantumOperator operator*(Complex s, QuantumOperator op)
{
    op *= s;
    return op;
}

QuantumOperator operator*(QuantumOperator op, Complex s)
{
    op *= s;
    return op;
}

QuantumOperator add(const QuantumOperator& x, const QuantumOperator& y) { return x + y; }
QuantumOperator scale(const QuantumOperator& x, Complex s) { return s * x; }
QuantumOperator multiply(const QuantumOperator& x, const QuantumOperator& y) { return x * y; }
QuantumOperator adjoint(const QuantumOperator& x) { return x.adjoint(); }

QuantumOperator commutator(const QuantumOperator& x, const QuantumOperator& y)
{
    return x * y - y * x;
}

QuantumOperator anticommutator(const QuantumOperator& x, const QuantumOperator& y)
{
    return x * y + y * x;
}

Complex trace(const QuantumOperator& x) { return x.trace(); }
double frobenius_norm(const QuantumOperator& x) { return x.frobenius_norm(); }

Complex expectation(const QuantumOperator& op, const QuantumOperator& rho)
{
    if (!same_basis(op.basis(), rho.basis())) throw BasisMismatchError();
    // Tr[op rho] without forming the product
    return (op.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

Eigen::MatrixXcd restrict_to(const QuantumOperator& op, std::span<const Index> indices)
{
    const Index n = static_cast<Index>(indices.size());
    Eigen::MatrixXcd out(n, n);
    for (Index r = 0; r < n; ++r) {
        for (Index c = 0; c < n; ++c) {
            out(r, c) = op(indices[static_cast<std::size_t>(r)], indices[static_cast<std::size_t>(c)]);
        }
    }
    return out;
}

QuantumOperator annihilator(const BasisPtr& basis, Mode mode)
{
    const Index d = basis->dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Index col = 0; col < d; ++col) {
        const FockState s = basis->state(col);
        const int n = mode == Mode::A ? s.n_a : s.n_b;
        if (n == 0) continue;
        const FockState target = mode == Mode::A ? FockState{s.n_a - 1, s.n_b} : FockState{s.n_a, s.n_b - 1};
        const Index row = basis->index_of(target);
        if (row >= 0) m(row, col) = std::sqrt(static_cast<double>(n));
    }
    return {basis, std::move(m)};
}

QuantumOperator creator(const BasisPtr& basis, Mode mode)
{
    return annihilator(basis, mode).adjoint();
}

QuantumOperator number_operator(const BasisPtr& basis, Mode mode)
{
    const Index d = basis->dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        const FockState s = basis->state(i);
        m(i, i) = mode == Mode::A ? s.n_a : s.n_b;
    }
    return {basis, std::move(m)};
}

QuantumOperator total_number(const BasisPtr& basis)
{
    const Index d = basis->dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Index i = 0; i < d; ++i) m(i, i) = basis->total(i);
    return {basis, std::move(m)};
}

NormalModes normal_mode_annihilators(const BasisPtr& basis)
{
    const auto a = annihilator(basis, Mode::A);
    const auto b = annihilator(basis, Mode::B);
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (a + b), s * (a - b)};
}

QuantumOperator fock_projector(const BasisPtr& basis, FockState s)
{
    const Index i = basis->index_of(s);
    if (i < 0) throw std::out_of_range("Fock state outside the truncated basis");
    return QuantumOperator::projector(basis, i, i);
}

QuantumOperator vacuum_state(const BasisPtr& basis)
{
    return fock_projector(basis, {0, 0});
}

} // namespace dimerheat
