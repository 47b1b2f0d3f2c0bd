// hamiltonians.cpp — Dimer Hamiltonian builders and spectral helpers

#include "dimerheat/hamiltonians.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace dimerheat {

std::string to_string(Interaction kind)
{
    switch (kind) {
    case Interaction::Linear: return "linear";
    case Interaction::SFWM: return "sfwm";
    case Interaction::XPM: return "xpm";
    }
    return "unknown";
}

Interaction parse_interaction(const std::string& name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "linear") return Interaction::Linear;
    if (lower == "sfwm") return Interaction::SFWM;
    if (lower == "xpm") return Interaction::XPM;
    throw std::invalid_argument("unknown interaction kind '" + name + "'");
}

void DimerParams::validate() const
{
    if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive");
    if (!(j >= 0.0) || !std::isfinite(j)) throw std::invalid_argument("j must be nonnegative");
    if (!(y >= 0.0) || !std::isfinite(y)) throw std::invalid_argument("y must be nonnegative");
    if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument("z must be nonnegative");
}

double DimerParams::strength() const
{
    switch (kind) {
    case Interaction::Linear: return j;
    case Interaction::SFWM: return y;
    case Interaction::XPM: return z;
    }
    return 0.0;
}

DimerParams make_params(Interaction kind, double omega, double strength)
{
    DimerParams p;
    p.omega = omega;
    p.kind = kind;
    switch (kind) {
    case Interaction::Linear: p.j = strength; break;
    case Interaction::SFWM: p.y = strength; break;
    case Interaction::XPM: p.z = strength; break;
    }
    p.validate();
    return p;
}

namespace {

struct Ladder {
    QuantumOperator a, b, ad, bd;
};

Ladder ladder(const BasisPtr& basis)
{
    auto a = annihilator(basis, Mode::A);
    auto b = annihilator(basis, Mode::B);
    auto ad = a.adjoint();
    auto bd = b.adjoint();
    return {std::move(a), std::move(b), std::move(ad), std::move(bd)};
}

QuantumOperator hopping(const Ladder& l) { return l.ad * l.b + l.bd * l.a; }
QuantumOperator four_wave(const Ladder& l) { return l.ad * l.ad * l.b * l.b + l.bd * l.bd * l.a * l.a; }
QuantumOperator cross_phase(const Ladder& l) { return l.ad * l.a * l.bd * l.b; }

} // namespace

QuantumOperator build_hamiltonian(const BasisPtr& basis, const DimerParams& params)
{
    params.validate();
    const auto l = ladder(basis);
    auto h = params.omega * total_number(basis);
    switch (params.kind) {
    case Interaction::Linear: h += params.j * hopping(l); break;
    case Interaction::SFWM: h += params.y * four_wave(l); break;
    case Interaction::XPM: h += params.z * cross_phase(l); break;
    }
    return h;
}

QuantumOperator build_composite_hamiltonian(const BasisPtr& basis, const DimerParams& params)
{
    params.validate();
    const auto l = ladder(basis);
    auto h = params.omega * total_number(basis);
    h += params.j * hopping(l);
    h += params.y * four_wave(l);
    h += params.z * cross_phase(l);
    return h;
}

std::vector<double> cluster_sorted(std::span<const double> ascending, double tol)
{
    std::vector<double> out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= ascending.size(); ++i) {
        if (i == ascending.size() || ascending[i] - ascending[i - 1] > tol) {
            if (i > start) {
                const double sum = std::accumulate(ascending.begin() + static_cast<std::ptrdiff_t>(start),
                                                   ascending.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
                out.push_back(sum / static_cast<double>(i - start));
            }
            start = i;
        }
    }
    return out;
}

Spectrum spectrum(const QuantumOperator& h, double cluster_tol)
{
    const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
    if (h.hermiticity_defect() > 1e-10 * scale) {
        throw std::invalid_argument("spectrum requires a Hermitian operator");
    }
    const auto& basis = h.basis();
    const Index d = h.dim();

    const auto n_op = total_number(basis);
    const bool conserves = commutator(h, n_op).matrix().cwiseAbs().maxCoeff() <= 1e-12 * scale;

    Eigen::VectorXd values(d);
    Eigen::MatrixXcd vectors = Eigen::MatrixXcd::Zero(d, d);
    std::vector<int> sector(static_cast<std::size_t>(d), -1);

    if (conserves) {
        Index col = 0;
        for (int n = 0; n <= basis->max_total(); ++n) {
            const auto idx = basis->sector(n);
            if (idx.empty()) continue;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(restrict_to(h, idx));
            for (Index k = 0; k < es.eigenvalues().size(); ++k, ++col) {
                values(col) = es.eigenvalues()(k);
                for (std::size_t r = 0; r < idx.size(); ++r) {
                    vectors(idx[r], col) = es.eigenvectors()(static_cast<Index>(r), k);
                }
                sector[static_cast<std::size_t>(col)] = n;
            }
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
        values = es.eigenvalues();
        vectors = es.eigenvectors();
    }

    // global ascending order; ties keep sector order
    std::vector<Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) { return values(l) < values(r); });

    Spectrum out;
    out.basis = basis;
    out.eigenvalues.resize(d);
    out.eigenvectors.resize(d, d);
    out.sector.resize(static_cast<std::size_t>(d));
    for (Index k = 0; k < d; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = values(src);
        out.eigenvectors.col(k) = vectors.col(src);
        out.sector[static_cast<std::size_t>(k)] = sector[static_cast<std::size_t>(src)];
    }

    std::vector<double> diffs;
    diffs.reserve(static_cast<std::size_t>(d * (d - 1)));
    for (Index i = 0; i < d; ++i) {
        for (Index k = 0; k < d; ++k) {
            if (i != k) diffs.push_back(out.eigenvalues(i) - out.eigenvalues(k));
        }
    }
    std::sort(diffs.begin(), diffs.end());
    out.bohr_frequencies = cluster_sorted(diffs, cluster_tol);
    return out;
}

std::vector<double> excitation_energy_estimates(const DimerParams& params, int n)
{
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    switch (params.kind) {
    case Interaction::Linear: return {params.omega + params.j, params.omega - params.j};
    case Interaction::SFWM: return {params.omega + params.y * n, params.omega - params.y * n};
    case Interaction::XPM: return {params.omega + params.z * n};
    }
    return {};
}

GroundState ground_state(const QuantumOperator& h, double degeneracy_tol)
{
    const auto spec = spectrum(h);
    const double e0 = spec.eigenvalues(0);
    Index count = 1;
    while (count < spec.eigenvalues.size() && spec.eigenvalues(count) - e0 <= degeneracy_tol) ++count;

    Eigen::VectorXcd state = spec.eigenvectors.col(0);
    if (count > 1) {
        // project the vacuum onto the degenerate subspace
        const Index vac = h.basis()->index_of({0, 0});
        const Eigen::MatrixXcd sub = spec.eigenvectors.leftCols(count);
        Eigen::VectorXcd proj = sub * sub.row(vac).adjoint();
        if (proj.norm() > 1e-12) state = proj / proj.norm();
    }

    Index big = 0;
    state.cwiseAbs().maxCoeff(&big);
    const Complex phase = std::abs(state(big)) > 0.0 ? std::conj(state(big)) / std::abs(state(big)) : Complex(1.0);
    state *= phase;

    return {e0, std::move(state), static_cast<int>(count)};
}

OverlapScan vacuum_overlap_scan(double omega, std::span<const double> y_grid, int n_max)
{
    for (std::size_t i = 1; i < y_grid.size(); ++i) {
        if (!(y_grid[i] > y_grid[i - 1])) throw std::invalid_argument("y_grid must be ascending");
    }
    const auto basis = build_basis(n_max);
    const Index vac = basis->index_of({0, 0});

    OverlapScan scan;
    for (double y : y_grid) {
        const DimerParams p{omega, 0.0, y, 0.0, Interaction::SFWM};
        const auto g = ground_state(build_hamiltonian(basis, p));
        const double overlap = std::norm(g.state(vac));
        if (!scan.points.empty() && overlap > scan.points.back().overlap + 1e-12) scan.monotone = false;
        if (!scan.critical_y && overlap < 0.5) scan.critical_y = y;
        scan.points.push_back({y, overlap});
    }
    return scan;
}

double refine_critical_y(double omega, double lo, double hi, int n_max, double tol)
{
    const auto basis = build_basis(n_max);
    const Index vac = basis->index_of({0, 0});
    auto overlap = [&](double y) {
        const DimerParams p{omega, 0.0, y, 0.0, Interaction::SFWM};
        return std::norm(ground_state(build_hamiltonian(basis, p)).state(vac));
    };
    if (!(overlap(lo) >= 0.5) || !(overlap(hi) < 0.5)) {
        throw std::invalid_argument("critical-point bracket does not straddle overlap 1/2");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (overlap(mid) >= 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace dimerheat
