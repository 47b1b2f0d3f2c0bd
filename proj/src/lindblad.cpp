// lindblad.cpp — Davies-type generator assembly

#include "dimerheat/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dimerheat {

void BathSpec::validate() const
{
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("bath temperature must be positive");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("bath gamma must be nonnegative");
    }
}

double bose_occupation(double nu, double temperature)
{
    if (nu == 0.0) throw std::domain_error("Bose occupation is singular at zero frequency");
    if (!(temperature > 0.0)) throw std::domain_error("temperature must be positive");
    return 1.0 / std::expm1(nu / temperature);
}

std::vector<FrequencyComponent> secular_decomposition(const Spectrum& spec,
                                                      const QuantumOperator& coupling,
                                                      double cluster_tol)
{
    if (!same_basis(spec.basis, coupling.basis())) throw BasisMismatchError();
    if (!(cluster_tol > 0.0)) throw std::invalid_argument("cluster_tol must be positive");

    const Eigen::MatrixXcd& v = spec.eigenvectors;
    const Eigen::MatrixXcd ce = v.adjoint() * coupling.matrix() * v;
    const Index d = ce.rows();
    const double floor = 1e-14 * std::max(1.0, ce.cwiseAbs().maxCoeff());

    struct Element {
        double nu;
        Index row, col;
    };
    std::vector<Element> elements;
    for (Index col = 0; col < d; ++col) {
        for (Index row = 0; row < d; ++row) {
            if (std::abs(ce(row, col)) > floor) {
                elements.push_back({spec.eigenvalues(col) - spec.eigenvalues(row), row, col});
            }
        }
    }
    std::sort(elements.begin(), elements.end(), [](const Element& l, const Element& r) { return l.nu < r.nu; });

    std::vector<FrequencyComponent> out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= elements.size(); ++i) {
        if (i < elements.size() && elements[i].nu - elements[i - 1].nu <= cluster_tol) continue;
        Eigen::MatrixXcd part = Eigen::MatrixXcd::Zero(d, d);
        double nu_sum = 0.0;
        for (std::size_t k = start; k < i; ++k) {
            part(elements[k].row, elements[k].col) = ce(elements[k].row, elements[k].col);
            nu_sum += elements[k].nu;
        }
        out.push_back({nu_sum / static_cast<double>(i - start),
                       QuantumOperator(coupling.basis(), v * part * v.adjoint())});
        start = i;
    }
    return out;
}

Liouvillian::Liouvillian(QuantumOperator hamiltonian, std::vector<Dissipator> dissipators,
                         int dropped_zero_frequency)
    : hamiltonian_(std::move(hamiltonian)), dissipators_(std::move(dissipators)),
      dropped_zero_(dropped_zero_frequency)
{
    const auto& basis = hamiltonian_.basis();
    const Index d = basis->dim();

    for (const auto& diss : dissipators_) {
        Eigen::MatrixXcd anti = Eigen::MatrixXcd::Zero(d, d);
        for (const auto& ch : diss.channels) {
            if (!same_basis(ch.lower.basis(), basis)) throw BasisMismatchError();
            const Eigen::MatrixXcd& l = ch.lower.matrix();
            anti.noalias() += ch.rate_down * (l.adjoint() * l);
            anti.noalias() += ch.rate_up * (l * l.adjoint());
        }
        anti_.push_back(std::move(anti));
    }

    // coherence order N_row - N_col is conserved when every operator shifts N uniformly
    auto uniform_shift = [&](const Eigen::MatrixXcd& m) {
        std::set<int> shifts;
        for (Index c = 0; c < d; ++c) {
            for (Index r = 0; r < d; ++r) {
                if (m(r, c) != Complex(0.0)) shifts.insert(basis->total(r) - basis->total(c));
            }
        }
        return shifts.size() <= 1;
    };
    coherence_order_ = uniform_shift(hamiltonian_.matrix());
    for (const auto& diss : dissipators_) {
        for (const auto& ch : diss.channels) {
            coherence_order_ = coherence_order_ && uniform_shift(ch.lower.matrix());
        }
    }
    // a number-changing Hamiltonian would need a zero shift, not just a uniform one
    if (coherence_order_) {
        for (Index c = 0; c < d && coherence_order_; ++c) {
            for (Index r = 0; r < d; ++r) {
                if (hamiltonian_(r, c) != Complex(0.0) && basis->total(r) != basis->total(c)) {
                    coherence_order_ = false;
                    break;
                }
            }
        }
    }

    if (coherence_order_) {
        std::map<int, std::vector<Index>> by_order;
        for (Index j = 0; j < d; ++j) {
            for (Index i = 0; i < d; ++i) {
                by_order[basis->total(i) - basis->total(j)].push_back(i + d * j);
            }
        }
        blocks_.push_back(std::move(by_order[0]));
        for (auto& [order, idx] : by_order) {
            if (order != 0) blocks_.push_back(std::move(idx));
        }
    } else {
        blocks_.push_back(all_indices());
    }
}

std::vector<Index> Liouvillian::all_indices() const
{
    const Index d = basis()->dim();
    std::vector<Index> idx(static_cast<std::size_t>(d * d));
    std::iota(idx.begin(), idx.end(), Index{0});
    return idx;
}

QuantumOperator Liouvillian::apply_unitary(const QuantumOperator& rho) const
{
    if (!same_basis(rho.basis(), basis())) throw BasisMismatchError();
    const Eigen::MatrixXcd& h = hamiltonian_.matrix();
    const Eigen::MatrixXcd& r = rho.matrix();
    return {basis(), Complex(0.0, -1.0) * (h * r - r * h)};
}

QuantumOperator Liouvillian::apply_dissipator(std::size_t bath, const QuantumOperator& rho) const
{
    if (!same_basis(rho.basis(), basis())) throw BasisMismatchError();
    const Eigen::MatrixXcd& r = rho.matrix();
    const Eigen::MatrixXcd& anti = anti_.at(bath);
    Eigen::MatrixXcd out = -(anti * r + r * anti);
    for (const auto& ch : dissipators_[bath].channels) {
        const Eigen::MatrixXcd& l = ch.lower.matrix();
        if (ch.rate_down != 0.0) out.noalias() += (2.0 * ch.rate_down) * (l * r * l.adjoint());
        if (ch.rate_up != 0.0) out.noalias() += (2.0 * ch.rate_up) * (l.adjoint() * r * l);
    }
    return {basis(), std::move(out)};
}

QuantumOperator Liouvillian::adjoint_dissipator(std::size_t bath, const QuantumOperator& x) const
{
    if (!same_basis(x.basis(), basis())) throw BasisMismatchError();
    const Eigen::MatrixXcd& m = x.matrix();
    const Eigen::MatrixXcd& anti = anti_.at(bath);
    Eigen::MatrixXcd out = -(anti * m + m * anti);
    for (const auto& ch : dissipators_[bath].channels) {
        const Eigen::MatrixXcd& l = ch.lower.matrix();
        if (ch.rate_down != 0.0) out.noalias() += (2.0 * ch.rate_down) * (l.adjoint() * m * l);
        if (ch.rate_up != 0.0) out.noalias() += (2.0 * ch.rate_up) * (l * m * l.adjoint());
    }
    return {basis(), std::move(out)};
}

QuantumOperator Liouvillian::apply(const QuantumOperator& rho) const
{
    auto out = apply_unitary(rho);
    for (std::size_t i = 0; i < dissipators_.size(); ++i) out += apply_dissipator(i, rho);
    return out;
}

namespace {

// Map from full vectorized index to position in the requested index list.
std::vector<Index> position_map(Index d, std::span<const Index> indices)
{
    std::vector<Index> pos(static_cast<std::size_t>(d * d), -1);
    for (std::size_t k = 0; k < indices.size(); ++k) pos[static_cast<std::size_t>(indices[k])] = static_cast<Index>(k);
    return pos;
}

// out += coeff * superoperator of (rho -> A rho + rho B), restricted.
void add_one_sided(const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right, Complex coeff,
                   std::span<const Index> indices, const std::vector<Index>& pos, Index d,
                   Eigen::MatrixXcd& out)
{
    for (std::size_t row = 0; row < indices.size(); ++row) {
        const Index i = indices[row] % d;
        const Index j = indices[row] / d;
        for (Index k = 0; k < d; ++k) {
            // (A rho)_ij = sum_k A_ik rho_kj
            if (left(i, k) != Complex(0.0)) {
                const Index col = pos[static_cast<std::size_t>(k + d * j)];
                if (col >= 0) out(static_cast<Index>(row), col) += coeff * left(i, k);
            }
            // (rho B)_ij = sum_k rho_ik B_kj
            if (right(k, j) != Complex(0.0)) {
                const Index col = pos[static_cast<std::size_t>(i + d * k)];
                if (col >= 0) out(static_cast<Index>(row), col) += coeff * right(k, j);
            }
        }
    }
}

struct Entry {
    Index row, col;
    Complex value;
};

std::vector<Entry> nonzeros(const Eigen::MatrixXcd& m)
{
    std::vector<Entry> out;
    for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
            if (m(r, c) != Complex(0.0)) out.push_back({r, c, m(r, c)});
        }
    }
    return out;
}

} // namespace

void Liouvillian::add_dissipator_entries(std::size_t bath, std::span<const Index> indices,
                                         Eigen::MatrixXcd& out) const
{
    const Index d = basis()->dim();
    const auto pos = position_map(d, indices);
    add_one_sided(anti_.at(bath), anti_.at(bath), Complex(-1.0), indices, pos, d, out);

    for (const auto& ch : dissipators_[bath].channels) {
        const auto nz = nonzeros(ch.lower.matrix());
        for (const auto& p : nz) {
            for (const auto& q : nz) {
                // L rho L^dag: (i,j) <- (k,l) with L_ik conj(L_jl)
                if (ch.rate_down != 0.0) {
                    const Index r = pos[static_cast<std::size_t>(p.row + d * q.row)];
                    const Index c = pos[static_cast<std::size_t>(p.col + d * q.col)];
                    if (r >= 0 && c >= 0) out(r, c) += 2.0 * ch.rate_down * p.value * std::conj(q.value);
                }
                // L^dag rho L: (i,j) <- (k,l) with conj(L_ki) L_lj
                if (ch.rate_up != 0.0) {
                    const Index r = pos[static_cast<std::size_t>(p.col + d * q.col)];
                    const Index c = pos[static_cast<std::size_t>(p.row + d * q.row)];
                    if (r >= 0 && c >= 0) out(r, c) += 2.0 * ch.rate_up * std::conj(p.value) * q.value;
                }
            }
        }
    }
}

Eigen::MatrixXcd Liouvillian::unitary_superoperator(std::span<const Index> indices) const
{
    const auto all = indices.empty() ? all_indices() : std::vector<Index>(indices.begin(), indices.end());
    const Index d = basis()->dim();
    const Index n = static_cast<Index>(all.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    const auto pos = position_map(d, all);
    const Eigen::MatrixXcd& h = hamiltonian_.matrix();
    // -i (H rho - rho H)
    add_one_sided(h, -h, Complex(0.0, -1.0), all, pos, d, out);
    return out;
}

Eigen::MatrixXcd Liouvillian::dissipator_superoperator(std::size_t bath, std::span<const Index> indices) const
{
    const auto all = indices.empty() ? all_indices() : std::vector<Index>(indices.begin(), indices.end());
    const Index n = static_cast<Index>(all.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    add_dissipator_entries(bath, all, out);
    return out;
}

Eigen::MatrixXcd Liouvillian::total_superoperator(std::span<const Index> indices) const
{
    const auto all = indices.empty() ? all_indices() : std::vector<Index>(indices.begin(), indices.end());
    Eigen::MatrixXcd out = unitary_superoperator(all);
    for (std::size_t i = 0; i < dissipators_.size(); ++i) add_dissipator_entries(i, all, out);
    return out;
}

Liouvillian build_liouvillian(const QuantumOperator& hamiltonian,
                              const QuantumOperator& coupling,
                              std::span<const BathSpec> baths,
                              double cluster_tol)
{
    if (baths.empty()) throw std::invalid_argument("at least one bath is required");
    for (const auto& b : baths) b.validate();
    if (!same_basis(hamiltonian.basis(), coupling.basis())) throw BasisMismatchError();

    const auto spec = spectrum(hamiltonian, cluster_tol);
    const auto parts = secular_decomposition(spec, coupling, cluster_tol);

    std::vector<Dissipator> dissipators;
    for (const auto& b : baths) dissipators.push_back({b, {}});

    int dropped = 0;
    for (const auto& part : parts) {
        if (std::abs(part.nu) <= cluster_tol) {
            ++dropped;
            continue;
        }
        const bool folded = part.nu < 0.0;
        const QuantumOperator lower = folded ? part.op.adjoint() : part.op;
        for (auto& diss : dissipators) {
            // rates on the raw c(nu): gamma nu (nbar(nu)+1) and gamma nu nbar(nu),
            // with nbar continued to negative nu; folding swaps their roles
            const double occ = bose_occupation(part.nu, diss.bath.temperature);
            const double on_c = diss.bath.gamma * part.nu * (occ + 1.0);
            const double on_cdag = diss.bath.gamma * part.nu * occ;
            JumpChannel ch{std::abs(part.nu), lower, folded ? on_cdag : on_c, folded ? on_c : on_cdag, folded};
            diss.channels.push_back(std::move(ch));
        }
    }
    return Liouvillian(hamiltonian, std::move(dissipators), dropped);
}

Liouvillian build_liouvillian(const QuantumOperator& hamiltonian,
                              std::span<const BathSpec> baths,
                              const LiouvillianOptions& options)
{
    const auto& basis = hamiltonian.basis();
    const QuantumOperator coupling = options.symmetric_coupling ? normal_mode_annihilators(basis).c
                                                                : annihilator(basis, Mode::A);
    return build_liouvillian(hamiltonian, coupling, baths, options.cluster_tol);
}

bool all_rates_nonnegative(const Liouvillian& liouvillian)
{
    for (const auto& diss : liouvillian.dissipators()) {
        for (const auto& ch : diss.channels) {
            if (!(ch.rate_down >= 0.0) || !(ch.rate_up >= 0.0)) return false;
        }
    }
    return true;
}

Eigen::VectorXcd vectorize(const QuantumOperator& rho)
{
    return rho.matrix().reshaped();
}

QuantumOperator unvectorize(const BasisPtr& basis, const Eigen::VectorXcd& v)
{
    const Index d = basis->dim();
    if (v.size() != d * d) throw std::invalid_argument("vector length does not match basis dimension squared");
    return {basis, v.reshaped(d, d)};
}

} // namespace dimerheat
