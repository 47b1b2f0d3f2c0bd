// dynamics.cpp — Block-restricted propagation and steady-state solver

#include "dimerheat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <boost/numeric/odeint.hpp>

namespace dimerheat {

void check_density_matrix(const QuantumOperator& rho, double time, const StateTolerances& tol)
{
    const double herm = rho.hermiticity_defect();
    if (herm > tol.hermiticity) {
        std::ostringstream msg;
        msg << "density matrix not Hermitian at t=" << time << " (defect " << herm << ")";
        throw ToleranceError(msg.str(), time, herm);
    }
    const double tr_err = std::abs(rho.trace() - Complex(1.0));
    if (tr_err > tol.trace) {
        std::ostringstream msg;
        msg << "trace drift at t=" << time << " (|Tr rho - 1| = " << tr_err << ")";
        throw ToleranceError(msg.str(), time, tr_err);
    }
    Eigen::MatrixXcd herm_part = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    // cheap path: rho + tol*I positive definite implies min eigenvalue > -tol
    Eigen::MatrixXcd shifted = herm_part;
    shifted.diagonal().array() += tol.positivity;
    if (Eigen::LLT<Eigen::MatrixXcd>(shifted).info() == Eigen::Success) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm_part, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol.positivity) {
        std::ostringstream msg;
        msg << "positivity violated at t=" << time << " (min eigenvalue " << min_eig << ")";
        throw ToleranceError(msg.str(), time, min_eig);
    }
}

namespace {

struct Block {
    std::vector<Index> indices;
    Eigen::MatrixXcd generator;
    Eigen::VectorXcd state;
};

using OdeState = std::vector<Complex>;

// Evolve one invariant block from t0 to each of the requested times.
class BlockStepper {
public:
    BlockStepper(Block& block, const PropagationOptions& options) : block_(block), options_(options) {}

    void advance(double dt)
    {
        if (dt == 0.0) return;
        if (options_.method == PropagationMethod::MatrixExponential) {
            block_.state = step_matrix(dt) * block_.state;
        } else {
            integrate(dt);
        }
    }

private:
    const Eigen::MatrixXcd& step_matrix(double dt)
    {
        // uniform grids hit the cache after the first step; rounding in t_k - t_{k-1}
        // stays far below the tolerance
        for (auto& [key, m] : cache_) {
            if (std::abs(key - dt) <= 1e-10 * dt) return m;
        }
        if (cache_.size() > 8) cache_.clear();
        Eigen::MatrixXcd scaled = block_.generator * Complex(dt);
        cache_.emplace_back(dt, scaled.exp());
        return cache_.back().second;
    }

    void integrate(double dt)
    {
        namespace odeint = boost::numeric::odeint;
        const Index n = block_.state.size();
        OdeState x(block_.state.data(), block_.state.data() + n);
        const Eigen::MatrixXcd& gen = block_.generator;
        auto rhs = [&gen, n](const OdeState& in, OdeState& out, double) {
            out.resize(static_cast<std::size_t>(n));
            Eigen::Map<const Eigen::VectorXcd> vin(in.data(), n);
            Eigen::Map<Eigen::VectorXcd> vout(out.data(), n);
            vout.noalias() = gen * vin;
        };
        auto stepper = odeint::make_controlled(options_.abs_tol, options_.rel_tol,
                                               odeint::runge_kutta_dopri5<OdeState>());
        const double initial_dt = std::min(dt, last_dt_ > 0.0 ? last_dt_ : dt / 16.0);
        odeint::integrate_adaptive(stepper, rhs, x, 0.0, dt, initial_dt);
        last_dt_ = initial_dt;
        block_.state = Eigen::Map<Eigen::VectorXcd>(x.data(), n);
    }

    Block& block_;
    const PropagationOptions& options_;
    std::vector<std::pair<double, Eigen::MatrixXcd>> cache_;
    double last_dt_{0.0};
};

QuantumOperator assemble(const BasisPtr& basis, const std::vector<Block>& blocks)
{
    const Index d = basis->dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& b : blocks) {
        for (std::size_t k = 0; k < b.indices.size(); ++k) {
            const Index p = b.indices[k];
            m(p % d, p / d) = b.state(static_cast<Index>(k));
        }
    }
    return {basis, std::move(m)};
}

} // namespace

Trajectory propagate(const Liouvillian& liouvillian, const QuantumOperator& rho0,
                     std::span<const double> times, const PropagationOptions& options)
{
    const auto& basis = liouvillian.basis();
    if (!same_basis(basis, rho0.basis())) throw BasisMismatchError();
    if (times.empty()) throw std::invalid_argument("propagate needs at least one time");
    if (times.front() != 0.0) throw std::invalid_argument("times must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] >= times[i - 1])) throw std::invalid_argument("times must be ascending");
    }
    if (options.check_states) check_density_matrix(rho0, 0.0, options.tolerances);

    const Eigen::VectorXcd v0 = vectorize(rho0);
    std::vector<Block> blocks;
    for (const auto& idx : liouvillian.invariant_blocks()) {
        Eigen::VectorXcd part(static_cast<Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) part(static_cast<Index>(k)) = v0(idx[k]);
        if (part.cwiseAbs().maxCoeff() == 0.0) continue;
        blocks.push_back({idx, liouvillian.total_superoperator(idx), std::move(part)});
    }

    std::vector<BlockStepper> steppers;
    steppers.reserve(blocks.size());
    for (auto& b : blocks) steppers.emplace_back(b, options);

    Trajectory traj;
    traj.basis = basis;
    traj.method = options.method;
    traj.rel_tol = options.rel_tol;
    traj.abs_tol = options.abs_tol;
    traj.times.assign(times.begin(), times.end());

    double t_prev = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double dt = times[k] - t_prev;
        for (auto& s : steppers) s.advance(dt);
        t_prev = times[k];

        QuantumOperator rho = assemble(basis, blocks);
        if (options.check_states) check_density_matrix(rho, times[k], options.tolerances);
        if (options.observer) options.observer(k, times[k], rho);
        if (options.keep_states) traj.states.push_back(std::move(rho));
    }
    return traj;
}

SteadyState steady_state(const Liouvillian& liouvillian,
                         const std::optional<QuantumOperator>& reference,
                         const SteadyStateOptions& options)
{
    const auto& basis = liouvillian.basis();
    const Index d = basis->dim();
    const auto& block = liouvillian.invariant_blocks().front();
    const Index n = static_cast<Index>(block.size());
    const Eigen::MatrixXcd gen = liouvillian.total_superoperator(block);

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(gen, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double cut = options.zero_tol * std::max(1.0, sigma(0));
    Index null_dim = 0;
    for (Index k = n - 1; k >= 0 && sigma(k) <= cut; --k) ++null_dim;
    if (null_dim == 0) null_dim = 1; // the trace functional guarantees one

    const Eigen::MatrixXcd right = svd.matrixV().rightCols(null_dim);
    const Eigen::MatrixXcd left = svd.matrixU().rightCols(null_dim);

    QuantumOperator ref = reference ? *reference : (1.0 / static_cast<double>(d)) * QuantumOperator::identity(basis);
    if (!same_basis(ref.basis(), basis)) throw BasisMismatchError();
    Eigen::VectorXcd ref_vec(n);
    for (Index k = 0; k < n; ++k) ref_vec(k) = ref(block[static_cast<std::size_t>(k)] % d, block[static_cast<std::size_t>(k)] / d);

    Eigen::VectorXcd x;
    if (null_dim == 1) {
        x = right.col(0);
    } else {
        // spectral projector K (W^dag K)^{-1} W^dag onto the kernel along the range
        const Eigen::MatrixXcd overlap = left.adjoint() * right;
        x = right * overlap.partialPivLu().solve(left.adjoint() * ref_vec);
    }

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (Index k = 0; k < n; ++k) {
        const Index p = block[static_cast<std::size_t>(k)];
        rho(p % d, p / d) = x(k);
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-300) {
        throw ToleranceError("steady state has vanishing trace", 0.0, 0.0);
    }
    rho /= tr;

    SteadyState out{QuantumOperator(basis, std::move(rho)), null_dim > 1, static_cast<int>(null_dim), 0.0};
    out.residual = liouvillian.apply(out.rho).frobenius_norm();
    if (out.residual > options.max_residual) {
        std::ostringstream msg;
        msg << "steady-state residual " << out.residual << " exceeds " << options.max_residual;
        throw ToleranceError(msg.str(), 0.0, out.residual);
    }
    return out;
}

std::vector<std::pair<double, double>> expectation_series(const Trajectory& trajectory,
                                                          const QuantumOperator& op)
{
    if (!same_basis(trajectory.basis, op.basis())) throw BasisMismatchError();
    if (op.hermiticity_defect() > 1e-10 * std::max(1.0, op.matrix().cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("expectation_series requires a Hermitian observable");
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(trajectory.states.size());
    for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
        const Complex value = expectation(op, trajectory.states[k]);
        if (std::abs(value.imag()) > 1e-10) {
            throw ToleranceError("imaginary expectation value residue", trajectory.times[k], value.imag());
        }
        out.emplace_back(trajectory.times[k], value.real());
    }
    return out;
}

double trace_distance(const QuantumOperator& rho, const QuantumOperator& sigma)
{
    const auto diff = rho - sigma;
    const Eigen::MatrixXcd h = 0.5 * (diff.matrix() + diff.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace dimerheat
