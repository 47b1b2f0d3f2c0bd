// test_properties.cpp — Randomized invariants across modules

#include "doctest.h"

#include <cmath>
#include <random>

#include "dimerheat/dynamics.hpp"
#include "dimerheat/grid.hpp"
#include "dimerheat/semiclassical.hpp"
#include "dimerheat/thermo.hpp"

using namespace dimerheat;

namespace {

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    Interaction kind()
    {
        static const Interaction all[] = {Interaction::Linear, Interaction::SFWM, Interaction::XPM};
        return all[integer(0, 2)];
    }

    QuantumOperator density(const BasisPtr& b)
    {
        std::normal_distribution<double> g;
        Eigen::MatrixXcd m(b->dim(), b->dim());
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
        Eigen::MatrixXcd rho = m * m.adjoint();
        rho /= rho.trace();
        return {b, rho};
    }

    std::vector<BathSpec> baths()
    {
        std::vector<BathSpec> out(static_cast<std::size_t>(integer(1, 2)));
        for (auto& x : out) x = {uniform(0.1, 2.0), uniform(0.001, 0.05)};
        return out;
    }
};

constexpr int kTrials = 25;

} // namespace

TEST_CASE("generator is trace and hermiticity preserving")
{
    Gen g(20240611);
    for (int trial = 0; trial < kTrials; ++trial) {
        const auto b = build_basis(g.integer(1, 4));
        const auto h = build_hamiltonian(b, make_params(g.kind(), g.uniform(0.5, 2.0), g.uniform(0.0, 1.0)));
        CHECK(h.hermiticity_defect() < 1e-14);
        const auto l = build_liouvillian(h, g.baths());
        CHECK(all_rates_nonnegative(l));
        const auto rho = g.density(b);
        const auto drho = l.apply(rho);
        CHECK(std::abs(drho.trace()) < 1e-13);
        CHECK(drho.hermiticity_defect() < 1e-13);
    }
}

TEST_CASE("single-bath Gibbs state is stationary for random parameters")
{
    Gen g(77);
    for (int trial = 0; trial < kTrials; ++trial) {
        const auto b = build_basis(g.integer(2, 5));
        const auto h = build_hamiltonian(b, make_params(g.kind(), g.uniform(0.5, 2.0), g.uniform(0.0, 1.0)));
        const BathSpec bath{g.uniform(0.2, 2.0), g.uniform(0.001, 0.05)};
        const auto l = build_liouvillian(h, std::span<const BathSpec>(&bath, 1));
        const auto spec = spectrum(h);
        Eigen::VectorXd w = (-(spec.eigenvalues.array() - spec.eigenvalues.minCoeff()) / bath.temperature).exp();
        w /= w.sum();
        const QuantumOperator gibbs(b, spec.eigenvectors * w.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint());
        CHECK(l.apply(gibbs).frobenius_norm() < 1e-10);
    }
}

TEST_CASE("evolution contracts the trace distance")
{
    Gen g(5);
    for (int trial = 0; trial < 8; ++trial) {
        const auto b = build_basis(g.integer(1, 3));
        const auto h = build_hamiltonian(b, make_params(g.kind(), 1.0, g.uniform(0.0, 1.0)));
        const auto l = build_liouvillian(h, g.baths());
        const auto rho = g.density(b);
        const auto sigma = g.density(b);
        const std::vector<double> times{0.0, g.uniform(1.0, 50.0)};
        const auto a = propagate(l, rho, times);
        const auto c = propagate(l, sigma, times);
        CHECK(trace_distance(a.states[1], c.states[1]) <= trace_distance(rho, sigma) + 1e-10);
    }
}

TEST_CASE("first law: summed heat equals the energy change")
{
    Gen g(99);
    for (int trial = 0; trial < 6; ++trial) {
        const auto b = build_basis(g.integer(2, 4));
        const auto h = build_hamiltonian(b, make_params(g.kind(), 1.0, g.uniform(0.0, 0.8)));
        const auto l = build_liouvillian(h, g.baths());
        const auto times = time_grid(g.uniform(10.0, 100.0), 8001);
        const auto res = run_transient(l, g.density(b), times);
        const double de = res.energy.back() - res.energy.front();
        CHECK(res.currents.heat.back() == doctest::Approx(de).epsilon(1e-5));
    }
}

TEST_CASE("mean-field power is conserved")
{
    Gen g(3);
    for (int trial = 0; trial < 10; ++trial) {
        const MeanFieldParams p{g.uniform(0.5, 2.0), g.uniform(0.0, 0.5), g.uniform(0.0, 0.5)};
        const double n = g.uniform(0.5, 3.0);
        const auto s0 = from_polar(n, std::sqrt(g.uniform(0.05, 0.95) * n), g.uniform(-3.0, 3.0), g.uniform(-3.0, 3.0));
        const auto series = integrate_mean_field(s0, p, time_grid(g.uniform(1.0, 10.0), 21));
        for (const auto& s : series.states) CHECK(std::abs(s.power() - n) < 1e-8 * n);
    }
}

TEST_CASE("uniform grid endpoints and spacing")
{
    Gen g(13);
    for (int trial = 0; trial < 50; ++trial) {
        const double lo = g.uniform(-2.0, 2.0);
        const double step = g.uniform(0.01, 0.5);
        const int count = g.integer(1, 60);
        const double hi = lo + step * (count - 1);
        const auto grid = uniform_grid(lo, hi, step);
        CHECK(grid.size() == static_cast<std::size_t>(count));
        CHECK(grid.front() == lo);
        CHECK(grid.back() == hi);
    }
}
