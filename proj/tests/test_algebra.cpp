// test_algebra.cpp — su(2) and two-photon deformed relations

#include "doctest.h"

#include <cmath>

#include "dimerheat/algebra.hpp"

using namespace dimerheat;

TEST_CASE("su(2) relations hold sector by sector")
{
    const auto b = build_basis(8);
    const auto rels = verify_su2_relations(build_su2(b));
    REQUIRE(!rels.empty());
    for (const auto& r : rels) {
        INFO(r.name);
        CHECK(r.per_sector.size() == 9);
        CHECK(r.max() <= 1e-12);
    }
}

TEST_CASE("Casimir eigenvalue is (n/2)(n/2+1)")
{
    const auto b = build_basis(6);
    const auto s = build_su2(b);
    for (int n = 0; n <= 6; ++n) {
        for (Index i : b->sector(n)) {
            const double expected = 0.5 * n * (0.5 * n + 1.0);
            CHECK(std::abs(s.x_squared(i, i) - expected) < 1e-12);
        }
    }
}

TEST_CASE("generators act as Schwinger operators")
{
    const auto b = build_basis(3);
    const auto s = build_su2(b);
    // X+ = a^dag b moves one quantum from b to a
    CHECK(std::abs(s.x_plus(b->index_of({1, 0}), b->index_of({0, 1})) - 1.0) < 1e-15);
    CHECK(std::abs(s.xz(b->index_of({2, 1}), b->index_of({2, 1})) - 0.5) < 1e-15);
    CHECK(std::abs(s.x0(b->index_of({2, 1}), b->index_of({2, 1})) - 1.5) < 1e-15);
}

TEST_CASE("deformed commutator closes on the polynomial")
{
    const auto b = build_basis(8);
    const auto y = build_deformed(b);
    const auto rep = verify_deformed_commutator(y);
    for (int n : {0, 2, 4}) CHECK(rep.commutator.per_sector[static_cast<std::size_t>(n)] <= 1e-12);
    // the identity holds on odd sectors as well
    CHECK(rep.commutator.max() <= 1e-12);
    CHECK(rep.adjointness.max() == 0.0);
    for (std::size_t n = 2; n < rep.raising_coefficient.size(); ++n) {
        CHECK(rep.raising_coefficient[n] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(std::isnan(rep.raising_coefficient[0]));
    CHECK(rep.raising_residual.max() <= 1e-12);
}

TEST_CASE("polynomial matches a hand evaluation on one state")
{
    // on |n_a, n_b> = |3, 1>: y0 = 1, yz = 1/2
    const auto b = build_basis(4);
    const auto p = deformed_polynomial(build_deformed(b));
    const Index i = b->index_of({3, 1});
    const double y0 = 1.0, yz = 0.5;
    const double expected = -64.0 * yz * yz * yz + 8.0 * (8.0 * y0 * y0 + 4.0 * y0 - 1.0) * yz;
    CHECK(std::abs(p(i, i) - expected) < 1e-12);
    // na(na-1)(nb+1)(nb+2) - nb(nb-1)(na+1)(na+2) = 36 - 0
    const auto y = build_deformed(b);
    CHECK(std::abs(commutator(y.y_plus, y.y_minus)(i, i) - 36.0) < 1e-12);
    CHECK(expected == doctest::Approx(36.0));
}

TEST_CASE("sector projector")
{
    const auto b = build_basis(3);
    const auto p2 = sector_projector(b, 2);
    CHECK(trace(p2) == Complex(3.0));
    CHECK_THROWS_AS(sector_projector(b, 4), std::out_of_range);
}
