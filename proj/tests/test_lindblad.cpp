// test_lindblad.cpp — Secular decomposition, rates and superoperator layout

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "dimerheat/lindblad.hpp"

using namespace dimerheat;

namespace {

// Column-stacked superoperator from Kronecker products:
// vec(A rho B) = (B^T kron A) vec(rho).
Eigen::MatrixXcd kron_superoperator(const Liouvillian& l)
{
    const Eigen::MatrixXcd& h = l.hamiltonian().matrix();
    const Index d = h.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const Complex i(0.0, 1.0);
    Eigen::MatrixXcd out = -i * (Eigen::kroneckerProduct(id, h).eval() - Eigen::kroneckerProduct(h.transpose(), id).eval());
    auto add = [&](const Eigen::MatrixXcd& op, double rate) {
        if (rate == 0.0) return;
        const Eigen::MatrixXcd ll = op.adjoint() * op;
        out += rate * (2.0 * Eigen::kroneckerProduct(op.conjugate(), op).eval()
                       - Eigen::kroneckerProduct(id, ll).eval() - Eigen::kroneckerProduct(ll.transpose(), id).eval());
    };
    for (const auto& diss : l.dissipators()) {
        for (const auto& ch : diss.channels) {
            add(ch.lower.matrix(), ch.rate_down);
            add(ch.lower.matrix().adjoint(), ch.rate_up);
        }
    }
    return out;
}

QuantumOperator random_density(const BasisPtr& b, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(b->dim(), b->dim());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
    Eigen::MatrixXcd rho = m * m.adjoint();
    rho /= rho.trace();
    return {b, rho};
}

QuantumOperator gibbs(const QuantumOperator& h, double temperature)
{
    Eigen::MatrixXcd e = (-h.matrix() / temperature).exp();
    e /= e.trace();
    return {h.basis(), e};
}

} // namespace

TEST_CASE("Bose occupation")
{
    CHECK(bose_occupation(1.2, 0.5) == doctest::Approx(1.0 / (std::exp(2.4) - 1.0)).epsilon(1e-14));
    CHECK(bose_occupation(-1.2, 0.5) == doctest::Approx(-(1.0 + bose_occupation(1.2, 0.5))).epsilon(1e-14));
    CHECK_THROWS_AS(bose_occupation(0.0, 0.5), std::domain_error);
}

TEST_CASE("bath validation")
{
    CHECK_THROWS_AS((BathSpec{-0.1, 0.01}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BathSpec{0.5, -0.01}.validate()), std::invalid_argument);
    CHECK_NOTHROW((BathSpec{0.5, 0.0}.validate()));
    const auto b = build_basis(2);
    const auto h = total_number(b);
    CHECK_THROWS_AS(build_liouvillian(h, std::span<const BathSpec>{}), std::invalid_argument);
}

TEST_CASE("secular parts are eigenoperators summing to the coupling")
{
    const auto b = build_basis(5);
    for (auto kind : {Interaction::Linear, Interaction::SFWM, Interaction::XPM}) {
        const auto h = build_hamiltonian(b, make_params(kind, 1.0, 0.37));
        const auto spec = spectrum(h);
        const auto c = normal_mode_annihilators(b).c;
        const auto parts = secular_decomposition(spec, c);
        auto sum = QuantumOperator::zero(b);
        for (const auto& p : parts) {
            sum += p.op;
            // [H, c(nu)] = -nu c(nu)
            CHECK((commutator(h, p.op) + p.nu * p.op).frobenius_norm() < 1e-10);
        }
        CHECK((sum - c).frobenius_norm() < 1e-12);
    }
}

TEST_CASE("linear one-bath channel and rates")
{
    const double gamma = 0.01, temp = 0.5, e = 1.2;
    const auto b = build_basis(4);
    const auto h = build_hamiltonian(b, make_params(Interaction::Linear, 1.0, 0.2));
    const BathSpec bath{temp, gamma};
    const auto l = build_liouvillian(h, std::span<const BathSpec>(&bath, 1));
    REQUIRE(l.dissipators().size() == 1);
    const auto& ch = l.dissipators()[0].channels;
    REQUIRE(ch.size() == 1);
    const double nbar = 1.0 / (std::exp(e / temp) - 1.0);
    CHECK(ch[0].nu == doctest::Approx(e));
    CHECK(ch[0].rate_down == doctest::Approx(gamma * e * (nbar + 1.0)));
    CHECK(ch[0].rate_up == doctest::Approx(gamma * e * nbar));
    CHECK((ch[0].lower - normal_mode_annihilators(b).c).frobenius_norm() < 1e-12);
    CHECK(l.dropped_zero_frequency() == 0);
}

TEST_CASE("superoperator equals the Kronecker construction")
{
    const auto b = build_basis(3);
    std::mt19937_64 rng(7);
    const std::vector<BathSpec> baths{{0.6, 0.02}, {0.4, 0.01}};
    for (auto kind : {Interaction::Linear, Interaction::SFWM, Interaction::XPM}) {
        const auto h = build_hamiltonian(b, make_params(kind, 1.0, 0.45));
        const auto l = build_liouvillian(h, baths);
        const Eigen::MatrixXcd ref = kron_superoperator(l);
        const Eigen::MatrixXcd got = l.total_superoperator();
        CHECK((got - ref).norm() < 1e-12 * std::max(1.0, ref.norm()));

        Eigen::MatrixXcd parts = l.unitary_superoperator();
        for (std::size_t i = 0; i < l.bath_count(); ++i) parts += l.dissipator_superoperator(i);
        CHECK((parts - got).norm() < 1e-13);

        const auto rho = random_density(b, rng);
        const Eigen::VectorXcd v = got * vectorize(rho);
        CHECK((unvectorize(b, v) - l.apply(rho)).frobenius_norm() < 1e-12);
    }
}

TEST_CASE("invariant blocks partition the vectorized space")
{
    const auto b = build_basis(4);
    const auto h = build_hamiltonian(b, make_params(Interaction::SFWM, 1.0, 0.3));
    const BathSpec bath{0.5, 0.01};
    const auto l = build_liouvillian(h, std::span<const BathSpec>(&bath, 1));
    REQUIRE(l.conserves_coherence_order());
    const auto& blocks = l.invariant_blocks();
    const Index d = b->dim();
    std::vector<int> seen(static_cast<std::size_t>(d * d), 0);
    for (const auto& blk : blocks)
        for (Index p : blk) ++seen[static_cast<std::size_t>(p)];
    for (int s : seen) CHECK(s == 1);
    // populations live in the first block, which has sum (n+1)^2 entries
    std::size_t expected = 0;
    for (int n = 0; n <= 4; ++n) expected += static_cast<std::size_t>((n + 1) * (n + 1));
    CHECK(blocks.front().size() == expected);
    for (Index i = 0; i < d; ++i) {
        CHECK(std::find(blocks.front().begin(), blocks.front().end(), i + d * i) != blocks.front().end());
    }
    // no coupling out of a block
    const Eigen::MatrixXcd full = l.total_superoperator();
    for (const auto& blk : blocks) {
        std::vector<bool> in(static_cast<std::size_t>(d * d), false);
        for (Index p : blk) in[static_cast<std::size_t>(p)] = true;
        double leak = 0.0;
        for (Index p : blk)
            for (Index q = 0; q < d * d; ++q)
                if (!in[static_cast<std::size_t>(q)]) leak = std::max(leak, std::abs(full(q, p)));
        CHECK(leak == 0.0);
    }
}

TEST_CASE("Gibbs state is stationary for every interaction")
{
    const auto b = build_basis(8);
    const double temp = 0.5;
    const BathSpec bath{temp, 0.01};
    for (auto kind : {Interaction::Linear, Interaction::SFWM, Interaction::XPM}) {
        for (double s : {0.2, 0.6, 1.0}) {
            const auto h = build_hamiltonian(b, make_params(kind, 1.0, s));
            const auto l = build_liouvillian(h, std::span<const BathSpec>(&bath, 1));
            CHECK(l.apply(gibbs(h, temp)).frobenius_norm() <= 1e-8);
            CHECK(all_rates_nonnegative(l));
        }
    }
}

TEST_CASE("deep cooling SFWM keeps nonnegative rates and has negative raw modes")
{
    const auto b = build_basis(8);
    const auto h = build_hamiltonian(b, make_params(Interaction::SFWM, 1.0, 1.0));
    const BathSpec bath{0.5, 0.01};
    const auto l = build_liouvillian(h, std::span<const BathSpec>(&bath, 1));
    CHECK(all_rates_nonnegative(l));
    bool folded = false;
    for (const auto& ch : l.dissipators()[0].channels) {
        CHECK(ch.nu > 0.0);
        folded = folded || ch.from_adjoint;
    }
    CHECK(folded);
}

TEST_CASE("Heisenberg adjoint of each dissipator")
{
    const auto b = build_basis(4);
    std::mt19937_64 rng(11);
    const auto h = build_hamiltonian(b, make_params(Interaction::SFWM, 1.0, 0.5));
    const std::vector<BathSpec> baths{{0.7, 0.02}, {0.3, 0.01}};
    const auto l = build_liouvillian(h, baths);
    for (int trial = 0; trial < 3; ++trial) {
        const auto rho = random_density(b, rng);
        const auto x = random_density(b, rng);
        for (std::size_t i = 0; i < 2; ++i) {
            const Complex lhs = trace(x * l.apply_dissipator(i, rho));
            const Complex rhs = trace(l.adjoint_dissipator(i, x) * rho);
            CHECK(std::abs(lhs - rhs) < 1e-13);
        }
    }
}

TEST_CASE("zero-frequency components are dropped and counted")
{
    const auto b = build_basis(3);
    const auto h = build_hamiltonian(b, make_params(Interaction::XPM, 1.0, 0.0));
    const BathSpec bath{0.5, 0.01};
    const auto l = build_liouvillian(h, total_number(b), std::span<const BathSpec>(&bath, 1));
    CHECK(l.dropped_zero_frequency() == 1);
    CHECK(l.dissipators()[0].channels.empty());
}

TEST_CASE("single-cavity coupling")
{
    const auto b = build_basis(3);
    const auto h = build_hamiltonian(b, make_params(Interaction::XPM, 1.0, 0.2));
    const BathSpec bath{0.5, 0.01};
    const auto l = build_liouvillian(h, std::span<const BathSpec>(&bath, 1), {1e-9, false});
    auto sum = QuantumOperator::zero(b);
    for (const auto& ch : l.dissipators()[0].channels) sum += ch.from_adjoint ? ch.lower.adjoint() : ch.lower;
    CHECK((sum - annihilator(b, Mode::A)).frobenius_norm() < 1e-12);
}

TEST_CASE("vectorization is column stacking")
{
    const auto b = build_basis(1);
    Eigen::MatrixXcd m(3, 3);
    m << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    const QuantumOperator x(b, m);
    const auto v = vectorize(x);
    CHECK(v(1) == Complex(4.0));
    CHECK(v(3) == Complex(2.0));
    CHECK((unvectorize(b, v) - x).frobenius_norm() == 0.0);
}
