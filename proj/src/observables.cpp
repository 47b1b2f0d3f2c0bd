// observables.cpp — Hermite functions and position-space densities

#include "dimerheat/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dimerheat {

std::vector<double> hermite_functions(int n_max, double x)
{
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    std::vector<double> psi(static_cast<std::size_t>(n_max) + 1);
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n_max >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int k = 1; k < n_max; ++k) {
        const double kk = static_cast<double>(k);
        psi[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * x * psi[k] - std::sqrt(kk / (kk + 1.0)) * psi[k - 1];
    }
    return psi;
}

double oscillator_wavefunction(int n, double x)
{
    if (n < 0) throw std::invalid_argument("oscillator level must be nonnegative");
    return hermite_functions(n, x).back();
}

void PositionGrid::validate() const
{
    if (points < 2) throw std::invalid_argument("grid points must be at least 2");
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw std::invalid_argument("x_max must be positive");
}

std::vector<double> PositionGrid::coordinates() const
{
    validate();
    std::vector<double> xs(static_cast<std::size_t>(points));
    const double h = spacing();
    for (int k = 0; k < points; ++k) xs[static_cast<std::size_t>(k)] = -x_max + h * k;
    xs.back() = x_max;
    return xs;
}

namespace {

// Rows: oscillator level, columns: grid point.
Eigen::MatrixXd level_table(int n_max, const PositionGrid& grid)
{
    const auto xs = grid.coordinates();
    Eigen::MatrixXd t(n_max + 1, grid.points);
    for (int k = 0; k < grid.points; ++k) {
        const auto psi = hermite_functions(n_max, xs[static_cast<std::size_t>(k)]);
        for (int n = 0; n <= n_max; ++n) t(n, k) = psi[static_cast<std::size_t>(n)];
    }
    return t;
}

Eigen::VectorXd trapezoid_weights(const PositionGrid& grid)
{
    Eigen::VectorXd w = Eigen::VectorXd::Constant(grid.points, grid.spacing());
    w(0) *= 0.5;
    w(grid.points - 1) *= 0.5;
    return w;
}

} // namespace

Eigen::MatrixXd position_pdf(const QuantumOperator& rho, const PositionGrid& grid)
{
    grid.validate();
    const auto& basis = *rho.basis();
    const Index d = basis.dim();
    int top = 0;
    for (const auto& s : basis.states()) top = std::max({top, s.n_a, s.n_b});
    const Eigen::MatrixXd psi = level_table(top, grid);
    const Index m = grid.points;

    Eigen::MatrixXd pdf(m, m);
    Eigen::MatrixXcd f(d, m);
    double worst_imag = 0.0;
    for (Index i1 = 0; i1 < m; ++i1) {
        // f(i, x2) = psi_{na_i}(x1) psi_{nb_i}(x2)
        for (Index i = 0; i < d; ++i) {
            const auto s = basis.state(i);
            f.row(i) = (psi(s.n_a, i1) * psi.row(s.n_b)).cast<Complex>();
        }
        const Eigen::MatrixXcd rf = rho.matrix() * f;
        const Eigen::VectorXcd col = (f.conjugate().cwiseProduct(rf)).colwise().sum().transpose();
        worst_imag = std::max(worst_imag, col.imag().cwiseAbs().maxCoeff());
        pdf.row(i1) = col.real().transpose();
    }
    if (worst_imag > 1e-10) {
        std::ostringstream msg;
        msg << "position density has imaginary residue " << worst_imag;
        throw std::runtime_error(msg.str());
    }
    const double lowest = pdf.minCoeff();
    if (lowest < -1e-8) {
        std::ostringstream msg;
        msg << "position density negative (" << lowest << ")";
        throw std::runtime_error(msg.str());
    }
    return pdf;
}

double integrate_grid(const Eigen::MatrixXd& values, const PositionGrid& grid)
{
    grid.validate();
    if (values.rows() != grid.points || values.cols() != grid.points) {
        throw std::invalid_argument("values do not match the grid");
    }
    const Eigen::VectorXd w = trapezoid_weights(grid);
    return w.dot(values * w);
}

double delocalization_measure(const Eigen::MatrixXd& pdf, const PositionGrid& grid)
{
    const double s = integrate_grid(pdf.array().square().matrix(), grid);
    if (!(s > 0.0)) throw std::invalid_argument("pdf has no weight");
    return 1.0 / s;
}

double orthonormality_defect(int n_max, const PositionGrid& grid)
{
    grid.validate();
    const Eigen::MatrixXd psi = level_table(n_max, grid);
    const Eigen::MatrixXd gram = psi * trapezoid_weights(grid).asDiagonal() * psi.transpose();
    return (gram - Eigen::MatrixXd::Identity(n_max + 1, n_max + 1)).cwiseAbs().maxCoeff();
}

} // namespace dimerheat
