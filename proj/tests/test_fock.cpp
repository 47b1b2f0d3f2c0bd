// test_fock.cpp — Basis enumeration, ladder operators and arithmetic

#include "doctest.h"

#include <cmath>

#include "dimerheat/fock.hpp"

using namespace dimerheat;

namespace {

// Ladder matrix built directly from the state list, independent of the library.
Eigen::MatrixXcd reference_lowering(const FockBasis& b, Mode m)
{
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(b.dim(), b.dim());
    for (Index col = 0; col < b.dim(); ++col) {
        const auto s = b.state(col);
        const int n = m == Mode::A ? s.n_a : s.n_b;
        if (n == 0) continue;
        const FockState t = m == Mode::A ? FockState{s.n_a - 1, s.n_b} : FockState{s.n_a, s.n_b - 1};
        for (Index row = 0; row < b.dim(); ++row) {
            if (b.state(row) == t) out(row, col) = std::sqrt(static_cast<double>(n));
        }
    }
    return out;
}

} // namespace

TEST_CASE("basis sizes and ordering")
{
    CHECK(build_basis(0)->size() == 1);
    CHECK(build_basis(8)->size() == 45);
    CHECK(build_basis_per_mode(3)->size() == 16);

    const auto b = build_basis(2);
    const std::vector<FockState> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    REQUIRE(b->states().size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(b->states()[i] == expected[i]);

    CHECK(*build_basis(5) == *build_basis(5));
    CHECK(build_basis(5)->states() == build_basis(5)->states());
    CHECK(b->index_of({3, 0}) == -1);
    CHECK(b->sector(2).size() == 3);
    CHECK_THROWS_AS(build_basis(-1), std::invalid_argument);
}

TEST_CASE("every state respects the cutoff and appears once")
{
    for (int n = 0; n <= 8; ++n) {
        const auto b = build_basis(n);
        CHECK(b->size() == static_cast<std::size_t>((n + 1) * (n + 2) / 2));
        for (Index i = 0; i < b->dim(); ++i) {
            CHECK(b->total(i) <= n);
            CHECK(b->index_of(b->state(i)) == i);
            if (i > 0) CHECK(b->total(i) >= b->total(i - 1));
        }
    }
}

TEST_CASE("ladder operators match the explicit construction")
{
    const auto b = build_basis(4);
    for (Mode m : {Mode::A, Mode::B}) {
        const auto a = annihilator(b, m);
        CHECK((a.matrix() - reference_lowering(*b, m)).norm() == doctest::Approx(0.0));
        CHECK((creator(b, m).matrix() - a.matrix().adjoint()).norm() == 0.0);
        CHECK((creator(b, m).adjoint().matrix() - a.matrix()).norm() == 0.0);
    }
    const auto a = annihilator(b, Mode::A);
    CHECK(a(b->index_of({0, 0}), b->index_of({1, 0})) == Complex(1.0));
    CHECK(std::abs(a(b->index_of({1, 0}), b->index_of({2, 0})) - std::sqrt(2.0)) < 1e-15);
    CHECK(a.matrix().col(b->index_of({0, 1})).norm() == 0.0);

    const auto ad = creator(b, Mode::A);
    CHECK(ad(b->index_of({1, 0}), b->index_of({0, 0})) == Complex(1.0));
    // truncation edge is annihilated
    CHECK(ad.matrix().col(b->index_of({2, 2})).norm() == 0.0);
}

TEST_CASE("number operators")
{
    const auto b = build_basis(4);
    const auto n = total_number(b);
    CHECK(n(b->index_of({2, 1}), b->index_of({2, 1})) == Complex(3.0));
    CHECK(number_operator(b, Mode::A)(b->index_of({0, 2}), b->index_of({0, 2})) == Complex(0.0));
    const auto sum = number_operator(b, Mode::A) + number_operator(b, Mode::B);
    CHECK((sum - n).frobenius_norm() == 0.0);
    const auto a = annihilator(b, Mode::A);
    CHECK(((a.adjoint() * a) - number_operator(b, Mode::A)).frobenius_norm() < 1e-14);
}

TEST_CASE("canonical commutation away from the cutoff")
{
    const int n_max = 6;
    const auto b = build_basis(n_max);
    const auto inner = b->below_total(n_max);
    for (Mode m : {Mode::A, Mode::B}) {
        const auto a = annihilator(b, m);
        const auto ccr = restrict_to(commutator(a, a.adjoint()), inner);
        CHECK((ccr - Eigen::MatrixXcd::Identity(ccr.rows(), ccr.cols())).norm() < 1e-13);
    }
    const auto mixed = restrict_to(commutator(annihilator(b, Mode::A), creator(b, Mode::B)), inner);
    CHECK(mixed.norm() < 1e-13);
}

TEST_CASE("normal modes")
{
    const auto b = build_basis(5);
    const auto [c, d] = normal_mode_annihilators(b);
    CHECK(std::abs(c(b->index_of({0, 0}), b->index_of({1, 0})) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(trace(c.adjoint() * d)) < 1e-13);
    const auto inner = b->below_total(5);
    CHECK(restrict_to(commutator(c, d), inner).norm() < 1e-13);
    CHECK(restrict_to(commutator(c, d.adjoint()), inner).norm() < 1e-13);
}

TEST_CASE("operator arithmetic")
{
    const auto b = build_basis(3);
    const auto id = QuantumOperator::identity(b);
    CHECK(trace(id) == Complex(10.0));
    CHECK(expectation(total_number(b), vacuum_state(b)) == Complex(0.0));
    const auto a = annihilator(b, Mode::A);
    CHECK((anticommutator(a, id) - 2.0 * a).frobenius_norm() == 0.0);
    CHECK((scale(a, Complex(0, 2)) - Complex(0, 2) * a).frobenius_norm() == 0.0);
    CHECK((add(a, a) - multiply(QuantumOperator::identity(b), 2.0 * a)).frobenius_norm() == 0.0);
    CHECK(frobenius_norm(adjoint(a)) == doctest::Approx(frobenius_norm(a)));

    const auto other = build_basis(4);
    CHECK_THROWS_AS(a + annihilator(other, Mode::A), BasisMismatchError);
    CHECK_THROWS_AS(commutator(a, total_number(other)), BasisMismatchError);
    CHECK_THROWS_AS(expectation(a, vacuum_state(other)), BasisMismatchError);
    CHECK_THROWS_AS(QuantumOperator(b, Eigen::MatrixXcd::Zero(3, 3)), std::invalid_argument);
}
