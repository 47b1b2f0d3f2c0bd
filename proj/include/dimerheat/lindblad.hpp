// lindblad.hpp — Secular decomposition and thermal Lindblad generators

#pragma once

#include <span>
#include <vector>

#include "dimerheat/fock.hpp"
#include "dimerheat/hamiltonians.hpp"

namespace dimerheat {

// One thermal reservoir with a pure Ohmic spectral density.
struct BathSpec {
    double temperature{1.0}; // k_B = 1
    double gamma{0.0};       // effective coupling rate

    void validate() const;
};

// 1/(exp(nu/T) - 1). Negative nu gives the analytic continuation
// -(1 + nbar(|nu|)); nu == 0 throws std::domain_error.
double bose_occupation(double nu, double temperature);

// c(nu) for one cluster of Bohr frequencies, nu = E_initial - E_final, so
// [H, c(nu)] = -nu c(nu). nu may be negative or zero.
struct FrequencyComponent {
    double nu{0.0};
    QuantumOperator op;
};

// Groups the eigenbasis matrix elements of the coupling by transition
// frequency. The returned parts sum to the coupling operator.
std::vector<FrequencyComponent> secular_decomposition(const Spectrum& spec,
                                                      const QuantumOperator& coupling,
                                                      double cluster_tol = 1e-9);

// Energy-lowering jump operator with positive nu. For raw frequencies below
// zero the stored operator is c(nu)^dagger and from_adjoint is set.
struct JumpChannel {
    double nu{0.0};
    QuantumOperator lower;
    double rate_down{0.0}; // multiplies D[lower]
    double rate_up{0.0};   // multiplies D[lower^dagger]
    bool from_adjoint{false};
};

struct Dissipator {
    BathSpec bath;
    std::vector<JumpChannel> channels;
};

struct LiouvillianOptions {
    double cluster_tol{1e-9};
    // Symmetric coupling c = (a + b)/sqrt(2); otherwise cavity a alone.
    bool symmetric_coupling{true};
};

// Generator d rho/dt = -i[H, rho] + sum_i D_i(rho) with
// D_i = sum_nu gamma_i nu [(nbar+1) D_c(nu) + nbar D_c(nu)^dag] and
// D_L(rho) = 2 L rho L^dag - {L^dag L, rho}.
//
// Superoperators use column stacking: vec(rho)[i + d j] = rho(i, j), so
// vec(A rho B) = (B^T kron A) vec(rho).
class Liouvillian {
public:
    Liouvillian(QuantumOperator hamiltonian, std::vector<Dissipator> dissipators,
                int dropped_zero_frequency);

    const BasisPtr& basis() const { return hamiltonian_.basis(); }
    const QuantumOperator& hamiltonian() const { return hamiltonian_; }
    const std::vector<Dissipator>& dissipators() const { return dissipators_; }
    std::size_t bath_count() const { return dissipators_.size(); }
    // Channels with |nu| below the clustering tolerance that were not assembled.
    int dropped_zero_frequency() const { return dropped_zero_; }

    QuantumOperator apply(const QuantumOperator& rho) const;
    QuantumOperator apply_unitary(const QuantumOperator& rho) const;
    QuantumOperator apply_dissipator(std::size_t bath, const QuantumOperator& rho) const;
    // Heisenberg-picture dissipator D_i^dagger(X), so Tr[X D_i(rho)] = Tr[D_i^dagger(X) rho].
    QuantumOperator adjoint_dissipator(std::size_t bath, const QuantumOperator& x) const;

    // Dense superoperators on the listed vectorized indices (all d^2 when empty).
    Eigen::MatrixXcd unitary_superoperator(std::span<const Index> indices = {}) const;
    Eigen::MatrixXcd dissipator_superoperator(std::size_t bath, std::span<const Index> indices = {}) const;
    Eigen::MatrixXcd total_superoperator(std::span<const Index> indices = {}) const;

    // True when H and every jump operator have definite particle-number shifts;
    // then the blocks with fixed N_row - N_col are invariant.
    bool conserves_coherence_order() const { return coherence_order_; }
    // Partition of vectorized indices into invariant blocks; the block holding
    // the diagonal (populations) comes first.
    const std::vector<std::vector<Index>>& invariant_blocks() const { return blocks_; }

private:
    void add_dissipator_entries(std::size_t bath, std::span<const Index> indices, Eigen::MatrixXcd& out) const;
    std::vector<Index> all_indices() const;

    QuantumOperator hamiltonian_;
    std::vector<Dissipator> dissipators_;
    std::vector<Eigen::MatrixXcd> anti_; // per bath: sum rate_down L^dag L + rate_up L L^dag
    int dropped_zero_;
    bool coherence_order_{false};
    std::vector<std::vector<Index>> blocks_;
};

Liouvillian build_liouvillian(const QuantumOperator& hamiltonian,
                              std::span<const BathSpec> baths,
                              const LiouvillianOptions& options = {});

// Variant with an explicit system coupling operator.
Liouvillian build_liouvillian(const QuantumOperator& hamiltonian,
                              const QuantumOperator& coupling,
                              std::span<const BathSpec> baths,
                              double cluster_tol = 1e-9);

bool all_rates_nonnegative(const Liouvillian& liouvillian);

// Column-stacked vectorization helpers.
Eigen::VectorXcd vectorize(const QuantumOperator& rho);
QuantumOperator unvectorize(const BasisPtr& basis, const Eigen::VectorXcd& v);

} // namespace dimerheat
