// algebra.cpp — Generator construction and numerical relation checks

#include "dimerheat/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dimerheat {

SuTwoSet build_su2(const BasisPtr& basis)
{
    const auto na = number_operator(basis, Mode::A);
    const auto nb = number_operator(basis, Mode::B);
    const auto x_plus = creator(basis, Mode::A) * annihilator(basis, Mode::B);
    auto x_minus = x_plus.adjoint();
    auto x0 = 0.5 * (na + nb);
    auto xz = 0.5 * (na - nb);
    auto x_squared = 0.5 * (x_plus * x_minus + x_minus * x_plus) + xz * xz;
    return {std::move(x0), std::move(xz), x_plus, std::move(x_minus), std::move(x_squared)};
}

DeformedSet build_deformed(const BasisPtr& basis)
{
    const auto s = build_su2(basis);
    auto y_plus = s.x_plus * s.x_plus;
    auto y_minus = y_plus.adjoint();
    return {0.5 * s.x0, 0.5 * s.xz, std::move(y_plus), std::move(y_minus)};
}

QuantumOperator sector_projector(const BasisPtr& basis, int n)
{
    if (n < 0 || n > basis->max_total()) {
        throw std::out_of_range("sector index outside the truncated basis");
    }
    auto p = QuantumOperator::zero(basis);
    Eigen::MatrixXcd m = p.matrix();
    for (Index i : basis->sector(n)) m(i, i) = 1.0;
    return {basis, std::move(m)};
}

double RelationResidual::max() const
{
    double out = 0.0;
    for (double r : per_sector) {
        if (!std::isnan(r)) out = std::max(out, r);
    }
    return out;
}

std::vector<double> sector_residuals(const QuantumOperator& difference)
{
    const auto& basis = difference.basis();
    std::vector<double> out;
    for (int n = 0; n <= basis->max_total(); ++n) {
        const auto idx = basis->sector(n);
        out.push_back(restrict_to(difference, idx).norm());
    }
    return out;
}

std::vector<RelationResidual> verify_su2_relations(const SuTwoSet& s)
{
    std::vector<RelationResidual> out;
    auto add = [&](std::string name, const QuantumOperator& diff) {
        out.push_back({std::move(name), sector_residuals(diff)});
    };

    add("[Xz,X+] - X+", commutator(s.xz, s.x_plus) - s.x_plus);
    add("[Xz,X-] + X-", commutator(s.xz, s.x_minus) + s.x_minus);
    add("[X0,X+]", commutator(s.x0, s.x_plus));
    add("[X0,X-]", commutator(s.x0, s.x_minus));
    add("[X0,Xz]", commutator(s.x0, s.xz));
    add("[X+,X-] - 2Xz", commutator(s.x_plus, s.x_minus) - 2.0 * s.xz);
    add("X^2 - X0^2 - X0", s.x_squared - s.x0 * s.x0 - s.x0);
    add("X- - X+^dagger", s.x_minus - s.x_plus.adjoint());

    // Casimir eigenvalue (n/2)(n/2 + 1) on every sector
    const auto& basis = s.x0.basis();
    RelationResidual casimir{"X^2 - (n/2)(n/2+1)", {}};
    for (int n = 0; n <= basis->max_total(); ++n) {
        const auto idx = basis->sector(n);
        const double j = 0.5 * n;
        const Eigen::MatrixXcd block = restrict_to(s.x_squared, idx);
        const Eigen::MatrixXcd expected =
            Eigen::MatrixXcd::Identity(block.rows(), block.cols()) * (j * (j + 1.0));
        casimir.per_sector.push_back((block - expected).norm());
    }
    out.push_back(std::move(casimir));
    return out;
}

QuantumOperator deformed_polynomial(const DeformedSet& y)
{
    const auto& basis = y.y0.basis();
    const auto id = QuantumOperator::identity(basis);
    const auto yz3 = y.yz * y.yz * y.yz;
    const auto inner = 8.0 * (y.y0 * y.y0) + 4.0 * y.y0 - id;
    return -64.0 * yz3 + 8.0 * (inner * y.yz);
}

DeformedReport verify_deformed_commutator(const DeformedSet& y)
{
    DeformedReport report;
    report.commutator = {"[Y+,Y-] - P(Y0,Yz)",
                         sector_residuals(commutator(y.y_plus, y.y_minus) - deformed_polynomial(y))};
    report.adjointness = {"Y- - Y+^dagger", sector_residuals(y.y_minus - y.y_plus.adjoint())};

    const auto& basis = y.y0.basis();
    const auto lhs = commutator(y.yz, y.y_plus);
    report.raising_residual.name = "[Yz,Y+] - kappa Y+";
    for (int n = 0; n <= basis->max_total(); ++n) {
        const auto idx = basis->sector(n);
        // Y+ is number conserving, so its sector block carries everything
        const Eigen::MatrixXcd yp = restrict_to(y.y_plus, idx);
        const Eigen::MatrixXcd cm = restrict_to(lhs, idx);
        const double denom = yp.squaredNorm();
        if (denom == 0.0) {
            report.raising_coefficient.push_back(std::numeric_limits<double>::quiet_NaN());
            report.raising_residual.per_sector.push_back(cm.norm());
            continue;
        }
        const double kappa = (yp.adjoint() * cm).trace().real() / denom;
        report.raising_coefficient.push_back(kappa);
        report.raising_residual.per_sector.push_back((cm - kappa * yp).norm());
    }
    return report;
}

} // namespace dimerheat
