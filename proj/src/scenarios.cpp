// scenarios.cpp — Scenario registry: defaults, validation and runners

#include "dimerheat/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "dimerheat/algebra.hpp"
#include "dimerheat/dynamics.hpp"
#include "dimerheat/grid.hpp"
#include "dimerheat/hamiltonians.hpp"
#include "dimerheat/lindblad.hpp"
#include "dimerheat/observables.hpp"
#include "dimerheat/semiclassical.hpp"
#include "dimerheat/thermo.hpp"

namespace dimerheat {

using nlohmann::json;

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

void write_csv(std::ostream& out, const Table& table)
{
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            if (const auto* d = std::get_if<double>(&row[c])) out << format_number(*d);
            else out << std::get<std::string>(row[c]);
        }
        out << '\n';
    }
}

namespace {

// ---- defaults -------------------------------------------------------------

json transient_defaults()
{
    return {{"omega", 1.0}, {"gamma", 0.01}, {"temperature", 0.5}, {"n_max", 8},
            {"t_final", 0.0}, {"samples", 2001}, {"method", "expm"},
            {"rel_tol", 1e-10}, {"abs_tol", 1e-12}};
}

json two_bath_defaults()
{
    json d = transient_defaults();
    d.erase("gamma");
    d["gamma1"] = 0.01;
    d["gamma2"] = 0.01;
    d["delta_fraction"] = 0.05;
    return d;
}

const std::map<std::string, json>& defaults_table()
{
    static const std::map<std::string, json> table = [] {
        std::map<std::string, json> t;
        json lin1 = transient_defaults();
        lin1["j"] = 0.2;
        lin1["samples"] = 201;
        lin1["oracle_tol"] = 1e-5;
        t["linear-one-bath"] = lin1;

        json lin2 = two_bath_defaults();
        lin2["j"] = 0.2;
        lin2["samples"] = 201;
        lin2["landauer_tol"] = 1e-6;
        t["linear-two-bath"] = lin2;

        json s1 = transient_defaults();
        s1["y"] = 0.3;
        t["sfwm-one-bath"] = s1;
        json x1 = transient_defaults();
        x1["z"] = 0.3;
        t["xpm-one-bath"] = x1;
        json s2 = two_bath_defaults();
        s2["y"] = 0.3;
        t["sfwm-two-bath"] = s2;
        json x2 = two_bath_defaults();
        x2["z"] = 0.3;
        t["xpm-two-bath"] = x2;

        t["overlap-scan"] = {{"omega", 1.0}, {"n_max", 8}, {"strength_min", 0.0},
                             {"strength_max", 0.6}, {"strength_step", 0.005}};
        t["heatmap-Q"] = {{"kind", "sfwm"}, {"omega", 1.0}, {"gamma", 0.01}, {"n_max", 8},
                          {"t_final", 0.0}, {"samples", 2001},
                          {"temperature_min", 0.1}, {"temperature_max", 1.0}, {"temperature_step", 0.05},
                          {"strength_min", 0.0}, {"strength_max", 1.0}, {"strength_step", 0.05},
                          {"threads", 0}};
        t["ness-scan"] = {{"kind", "sfwm"}, {"omega", 1.0}, {"gamma", 0.01}, {"n_max", 8},
                          {"temperature", 0.5}, {"delta_fraction", 0.05},
                          {"strength_min", 0.0}, {"strength_max", 1.0}, {"strength_step", 0.05},
                          {"threads", 0}};
        t["semiclassical"] = {{"omega", 1.0}, {"y", 0.3}, {"z", 0.0}, {"n", 2.0}, {"u0", 0.5005},
                              {"theta0", 0.7853981633974483}, {"t_final", 5.0}, {"samples", 2001},
                              {"view", "trajectory"}, {"portrait_thetas", 41}, {"portrait_us", 19}};
        t["position-pdf"] = {{"kind", "sfwm"}, {"y", 0.4}, {"z", 0.0}, {"omega", 1.0}, {"gamma", 0.01},
                             {"n_max", 8}, {"temperature", 0.5}, {"delta_fraction", 0.05},
                             {"points", 201}, {"x_max", 8.0}};
        t["algebra-verify"] = {{"n_max", 8}, {"algebra_tol", 1e-12}};
        return t;
    }();
    return table;
}

// ---- validation -----------------------------------------------------------

enum class Rule { Positive, Nonnegative, Finite, Fraction, UnitInterval, Count, SmallCount, Cutoff, Threads, Kind, Method, View };

const std::map<std::string, Rule>& rules()
{
    static const std::map<std::string, Rule> r = {
        {"omega", Rule::Positive}, {"j", Rule::Nonnegative}, {"y", Rule::Nonnegative}, {"z", Rule::Nonnegative},
        {"gamma", Rule::Positive}, {"gamma1", Rule::Nonnegative}, {"gamma2", Rule::Nonnegative},
        {"temperature", Rule::Positive}, {"delta_fraction", Rule::Fraction},
        {"n_max", Rule::Cutoff}, {"t_final", Rule::Nonnegative}, {"samples", Rule::Count},
        {"rel_tol", Rule::Positive}, {"abs_tol", Rule::Positive}, {"method", Rule::Method},
        {"oracle_tol", Rule::Positive}, {"landauer_tol", Rule::Positive}, {"algebra_tol", Rule::Positive},
        {"strength_min", Rule::Nonnegative}, {"strength_max", Rule::Nonnegative}, {"strength_step", Rule::Positive},
        {"temperature_min", Rule::Positive}, {"temperature_max", Rule::Positive}, {"temperature_step", Rule::Positive},
        {"threads", Rule::Threads}, {"kind", Rule::Kind}, {"n", Rule::Positive}, {"u0", Rule::UnitInterval},
        {"theta0", Rule::Finite}, {"view", Rule::View}, {"portrait_thetas", Rule::SmallCount},
        {"portrait_us", Rule::SmallCount}, {"points", Rule::Count}, {"x_max", Rule::Positive},
    };
    return r;
}

bool integral_rule(Rule r)
{
    return r == Rule::Count || r == Rule::SmallCount || r == Rule::Cutoff || r == Rule::Threads;
}

void check_value(const std::string& key, const json& v)
{
    const Rule rule = rules().at(key);
    if (rule == Rule::Kind || rule == Rule::Method || rule == Rule::View) {
        const std::string s = v.get<std::string>();
        const std::vector<std::string> allowed = rule == Rule::Kind ? std::vector<std::string>{"linear", "sfwm", "xpm"}
                                               : rule == Rule::Method ? std::vector<std::string>{"expm", "rk"}
                                                                      : std::vector<std::string>{"trajectory", "portrait"};
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            throw ConfigError(key, "must be one of " + list);
        }
        return;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
    if (integral_rule(rule)) {
        if (x != std::floor(x)) throw ConfigError(key, "must be an integer");
    }
    switch (rule) {
    case Rule::Positive:
        if (!(x > 0.0)) throw ConfigError(key, "must be positive");
        break;
    case Rule::Nonnegative:
        if (!(x >= 0.0)) throw ConfigError(key, "must be nonnegative");
        break;
    case Rule::Fraction:
        if (!(x >= 0.0) || !(x < 2.0)) throw ConfigError(key, "must lie in [0, 2)");
        break;
    case Rule::UnitInterval:
        if (!(x >= 0.0) || !(x <= 1.0)) throw ConfigError(key, "must lie in [0, 1]");
        break;
    case Rule::Count:
        if (x < 2 || x > 1e7) throw ConfigError(key, "must be an integer in [2, 1e7]");
        break;
    case Rule::SmallCount:
        if (x < 2 || x > 1000) throw ConfigError(key, "must be an integer in [2, 1000]");
        break;
    case Rule::Cutoff:
        if (x < 0 || x > 20) throw ConfigError(key, "must be an integer in [0, 20]");
        break;
    case Rule::Threads:
        if (x < 0 || x > 256) throw ConfigError(key, "must be an integer in [0, 256]");
        break;
    default:
        break;
    }
}

void check_range(const json& c, const std::string& prefix)
{
    if (!c.contains(prefix + "_min")) return;
    if (c[prefix + "_max"].get<double>() < c[prefix + "_min"].get<double>()) {
        throw ConfigError(prefix + "_max", "must not be below " + prefix + "_min");
    }
    const double count = (c[prefix + "_max"].get<double>() - c[prefix + "_min"].get<double>())
                       / c[prefix + "_step"].get<double>();
    if (count > 1e5) throw ConfigError(prefix + "_step", "grid would exceed 1e5 points");
}

void validate(const std::string& scenario, const json& c)
{
    for (const auto& [key, v] : c.items()) check_value(key, v);
    check_range(c, "strength");
    check_range(c, "temperature");
    if (c.contains("gamma1") && !(c["gamma1"].get<double>() + c["gamma2"].get<double>() > 0.0)) {
        throw ConfigError("gamma1", "gamma1 and gamma2 must not both vanish");
    }
    if (scenario == "heatmap-Q" || scenario == "ness-scan" || scenario == "position-pdf") {
        if (c["kind"].get<std::string>() == "linear" && c["n_max"].get<int>() < 1) {
            throw ConfigError("n_max", "must be at least 1");
        }
    }
    if (scenario == "position-pdf" && c["kind"].get<std::string>() == "linear") {
        throw ConfigError("kind", "position-pdf supports sfwm and xpm");
    }
    if (scenario == "semiclassical" && c["view"].get<std::string>() == "trajectory") {
        const double u0 = c["u0"].get<double>();
        if (u0 == 0.0 || u0 == 1.0) throw ConfigError("u0", "must lie strictly inside (0, 1)");
    }
}

// ---- helpers --------------------------------------------------------------

double num(const json& c, const char* key) { return c.at(key).get<double>(); }
int integer(const json& c, const char* key) { return static_cast<int>(c.at(key).get<double>()); }

PropagationOptions propagation_options(const json& c)
{
    PropagationOptions o;
    o.method = c.at("method").get<std::string>() == "rk" ? PropagationMethod::AdaptiveRungeKutta
                                                         : PropagationMethod::MatrixExponential;
    o.rel_tol = num(c, "rel_tol");
    o.abs_tol = num(c, "abs_tol");
    return o;
}

std::vector<double> strength_grid(const json& c)
{
    return uniform_grid(num(c, "strength_min"), num(c, "strength_max"), num(c, "strength_step"));
}

std::vector<BathSpec> two_baths(const json& c)
{
    const auto [hot, cold] = split_temperatures(num(c, "temperature"), num(c, "delta_fraction"));
    return {{hot, num(c, "gamma1")}, {cold, num(c, "gamma2")}};
}

[[noreturn]] void oracle_failure(const std::string& what, double value, double tol)
{
    std::ostringstream msg;
    msg << what << " " << value << " exceeds tolerance " << tol;
    throw ToleranceError(msg.str(), 0.0, value);
}

// ---- runners --------------------------------------------------------------

ScenarioOutput run_linear_one_bath(const json& c)
{
    const double omega = num(c, "omega"), j = num(c, "j"), gamma = num(c, "gamma"), temp = num(c, "temperature");
    const auto oracle = analytic_linear_one_bath(omega, j, gamma, temp, 0.0);
    const double t_final = num(c, "t_final") > 0.0 ? num(c, "t_final") : 10.0 * oracle.relaxation_time();
    const auto times = time_grid(t_final, static_cast<std::size_t>(integer(c, "samples")));

    const auto basis = build_basis(integer(c, "n_max"));
    const auto h = build_hamiltonian(basis, make_params(Interaction::Linear, omega, j));
    const BathSpec bath{temp, gamma};
    const auto l = build_liouvillian(h, std::span<const BathSpec>(&bath, 1));
    const auto modes = normal_mode_annihilators(basis);
    const std::vector<QuantumOperator> obs{modes.c.adjoint() * modes.c};
    const auto r = run_transient(l, vacuum_state(basis), times, obs, propagation_options(c));

    ScenarioOutput out;
    out.table.columns = {"t", "I_numeric", "I_analytic", "occ_sym_numeric", "occ_sym_analytic"};
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double occ = oracle.occupation(times[k]);
        if (k > 0) worst = std::max(worst, std::abs(r.observables[0][k] - occ) / occ);
        out.table.add_row({times[k], r.currents.total[k], oracle.current(times[k]), r.observables[0][k], occ});
    }
    const double fitted = fit_decay_rate(r.currents.times, r.currents.total);
    out.summary = {{"e_plus", oracle.e_plus}, {"relaxation_time", oracle.relaxation_time()},
                   {"max_relative_occupation_error", worst}, {"fitted_decay_rate", fitted},
                   {"expected_decay_rate", oracle.rate()},
                   {"dropped_zero_frequency_channels", l.dropped_zero_frequency()}};
    if (worst > num(c, "oracle_tol")) oracle_failure("occupation deviation from closed form", worst, num(c, "oracle_tol"));
    return out;
}

ScenarioOutput run_linear_two_bath(const json& c)
{
    const double omega = num(c, "omega"), j = num(c, "j");
    const auto baths = two_baths(c);
    const auto oracle = analytic_linear_two_bath(omega, j, baths[0].gamma, baths[1].gamma,
                                                 baths[0].temperature, baths[1].temperature, 0.0);
    const double t_final = num(c, "t_final") > 0.0 ? num(c, "t_final") : 10.0 / oracle.rate();
    const auto times = time_grid(t_final, static_cast<std::size_t>(integer(c, "samples")));

    const auto basis = build_basis(integer(c, "n_max"));
    const auto h = build_hamiltonian(basis, make_params(Interaction::Linear, omega, j));
    const auto l = build_liouvillian(h, baths);
    const auto r = run_transient(l, vacuum_state(basis), times, {}, propagation_options(c));
    const auto& cs = r.currents;

    ScenarioOutput out;
    out.table.columns = {"t", "I_hot", "I_cold", "I_total", "I_net", "I_total_analytic", "I_net_analytic"};
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double net_a = oracle.net_current(times[k]);
        worst = std::max(worst, std::abs(cs.net[k] - net_a) / std::abs(net_a));
        out.table.add_row({times[k], cs.per_bath[0][k], cs.per_bath[1][k], cs.total[k], cs.net[k],
                           oracle.total_current(times[k]), net_a});
    }
    const double mean = std::accumulate(cs.net.begin(), cs.net.end(), 0.0) / static_cast<double>(cs.net.size());
    double var = 0.0;
    for (double v : cs.net) var += (v - mean) * (v - mean);
    const double stdev = std::sqrt(var / static_cast<double>(cs.net.size()));
    out.summary = {{"t_hot", baths[0].temperature}, {"t_cold", baths[1].temperature},
                   {"landauer_net_current", oracle.net_current_steady()},
                   {"max_relative_net_error", worst}, {"net_relative_stdev", stdev / std::abs(mean)}};
    if (worst > num(c, "landauer_tol")) oracle_failure("net current deviation from closed form", worst, num(c, "landauer_tol"));
    return out;
}

ScenarioOutput run_nonlinear(const json& c, Interaction kind, bool two)
{
    const double omega = num(c, "omega");
    const double s = num(c, kind == Interaction::SFWM ? "y" : "z");
    const auto baths = two ? two_baths(c) : std::vector<BathSpec>{{num(c, "temperature"), num(c, "gamma")}};
    const double g_ref = two ? std::max(baths[0].gamma, baths[1].gamma) : baths[0].gamma;
    const double t_final = num(c, "t_final") > 0.0 ? num(c, "t_final") : 50.0 / (g_ref * omega);
    const auto times = time_grid(t_final, static_cast<std::size_t>(integer(c, "samples")));

    const auto basis = build_basis(integer(c, "n_max"));
    const auto h = build_hamiltonian(basis, make_params(kind, omega, s));
    const auto l = build_liouvillian(h, baths);
    const auto modes = normal_mode_annihilators(basis);
    const std::vector<QuantumOperator> obs{total_number(basis), modes.c.adjoint() * modes.c};
    const auto r = run_transient(l, vacuum_state(basis), times, obs, propagation_options(c));
    const auto& cs = r.currents;

    ScenarioOutput out;
    if (two) {
        out.table.columns = {"t", "I_hot", "I_cold", "I_total", "I_net", "Q", "energy", "N_total"};
    } else {
        out.table.columns = {"t", "I", "Q", "energy", "N_total", "occ_sym"};
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (two) {
            out.table.add_row({times[k], cs.per_bath[0][k], cs.per_bath[1][k], cs.total[k], cs.net[k],
                               cs.heat[k], r.energy[k], r.observables[0][k]});
        } else {
            out.table.add_row({times[k], cs.total[k], cs.heat[k], r.energy[k], r.observables[0][k],
                               r.observables[1][k]});
        }
    }
    const auto [lo, hi] = std::minmax_element(cs.total.begin(), cs.total.end());
    out.summary = {{"min_current", *lo}, {"max_current", *hi}, {"q_final", cs.heat.back()},
                   {"energy_change", r.energy.back() - r.energy.front()},
                   {"channels", l.dissipators().front().channels.size()},
                   {"dropped_zero_frequency_channels", l.dropped_zero_frequency()},
                   {"rates_nonnegative", all_rates_nonnegative(l)}};
    if (two) {
        const auto [nlo, nhi] = std::minmax_element(cs.net.begin(), cs.net.end());
        out.summary["net_min"] = *nlo;
        out.summary["net_max"] = *nhi;
    }
    return out;
}

ScenarioOutput run_overlap(const json& c)
{
    const auto grid = strength_grid(c);
    const auto scan = vacuum_overlap_scan(num(c, "omega"), grid, integer(c, "n_max"));
    ScenarioOutput out;
    out.table.columns = {"y", "overlap"};
    for (const auto& p : scan.points) out.table.add_row({p.y, p.overlap});
    out.summary = {{"monotone", scan.monotone}};
    out.summary["critical_y"] = scan.critical_y ? json(*scan.critical_y) : json(nullptr);
    return out;
}

ScenarioOutput run_heatmap(const json& c)
{
    const auto kind = parse_interaction(c["kind"].get<std::string>());
    const auto temps = uniform_grid(num(c, "temperature_min"), num(c, "temperature_max"), num(c, "temperature_step"));
    const auto strengths = strength_grid(c);
    HeatMapOptions o;
    o.omega = num(c, "omega");
    o.gamma = num(c, "gamma");
    o.n_max = integer(c, "n_max");
    o.t_final = num(c, "t_final");
    o.samples = static_cast<std::size_t>(integer(c, "samples"));
    o.threads = static_cast<unsigned>(integer(c, "threads"));
    const auto pts = heat_map_scan(kind, temps, strengths, o);

    ScenarioOutput out;
    const char* axis = kind == Interaction::SFWM ? "Y" : kind == Interaction::XPM ? "Z" : "J";
    out.table.columns = {"T", axis,
                         "Q_final", "Q_doubled", "energy_change", "I_min"};
    std::size_t negative = 0;
    double worst_convergence = 0.0;
    for (const auto& p : pts) {
        if (p.q_final < 0.0) ++negative;
        worst_convergence = std::max(worst_convergence, std::abs(p.q_doubled - p.q_final));
        out.table.add_row({p.temperature, p.strength, p.q_final, p.q_doubled, p.energy_change, p.min_current});
    }
    out.summary = {{"points", pts.size()}, {"negative_points", negative},
                   {"t_final", o.t_final > 0.0 ? o.t_final : 50.0 / (o.gamma * o.omega)},
                   {"max_doubling_change", worst_convergence}};
    return out;
}

ScenarioOutput run_ness(const json& c)
{
    const auto kind = parse_interaction(c["kind"].get<std::string>());
    const auto strengths = strength_grid(c);
    NessScanOptions o;
    o.omega = num(c, "omega");
    o.temperature = num(c, "temperature");
    o.delta_fraction = num(c, "delta_fraction");
    o.gamma = num(c, "gamma");
    o.n_max = integer(c, "n_max");
    o.threads = static_cast<unsigned>(integer(c, "threads"));
    const auto pts = ness_current_scan(kind, strengths, o);

    const auto [hot, cold] = split_temperatures(o.temperature, o.delta_fraction);
    ScenarioOutput out;
    out.table.columns = {"strength", "I_hot", "I_cold", "I_net", "residual", "degenerate"};
    std::size_t best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (p.net > pts[best].net) best = i;
        out.table.add_row({p.strength, p.current_hot, p.current_cold, p.net, p.residual, p.degenerate ? 1.0 : 0.0});
    }
    out.summary = {{"t_hot", hot}, {"t_cold", cold}};
    if (!pts.empty()) {
        out.summary["peak_strength"] = pts[best].strength;
        out.summary["peak_net_current"] = pts[best].net;
    }
    if (kind != Interaction::Linear) {
        const auto ref = analytic_linear_two_bath(o.omega, 0.0, o.gamma, o.gamma, hot, cold);
        out.summary["landauer_zero_strength"] = ref.net_current_steady();
    }
    return out;
}

ScenarioOutput run_semiclassical(const json& c)
{
    MeanFieldParams p{num(c, "omega"), num(c, "y"), num(c, "z")};
    p.validate();
    const double n = num(c, "n");
    ScenarioOutput out;
    json branches = json::array();
    for (const auto& b : stationary_solutions(p, n)) {
        const double theta = b.thetas.empty() ? 0.0 : b.thetas.front();
        branches.push_back({{"energy", b.energy}, {"r", b.r}, {"any_theta", b.any_theta},
                            {"thetas", b.thetas}, {"residual", stationary_residual(b, theta, p, n)}});
    }
    out.summary["stationary_branches"] = branches;

    if (c["view"].get<std::string>() == "portrait") {
        const int nt = integer(c, "portrait_thetas"), nu = integer(c, "portrait_us");
        std::vector<double> thetas(static_cast<std::size_t>(nt)), us(static_cast<std::size_t>(nu));
        for (int k = 0; k < nt; ++k) thetas[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / (nt - 1);
        for (int k = 0; k < nu; ++k) us[static_cast<std::size_t>(k)] = (k + 1.0) / (nu + 1.0);
        out.table.columns = {"theta", "u", "theta_rate", "u_rate"};
        for (const auto& s : phase_portrait(p, n, thetas, us)) out.table.add_row({s.theta, s.u, s.theta_rate, s.u_rate});
        return out;
    }

    const double u0 = num(c, "u0"), theta0 = num(c, "theta0");
    const auto s0 = from_polar(n, std::sqrt(u0 * n), theta0, 0.0);
    const auto times = time_grid(num(c, "t_final") > 0.0 ? num(c, "t_final") : 5.0,
                                 static_cast<std::size_t>(integer(c, "samples")));
    const auto series = integrate_mean_field(s0, p, times);
    out.table.columns = {"t", "re_a", "im_a", "re_b", "im_b", "r2", "power", "theta", "r2_closed_form"};
    double drift = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto& s = series.states[k];
        drift = std::max(drift, std::abs(s.power() - s0.power()) / s0.power());
        out.table.add_row({times[k], s.a0.real(), s.a0.imag(), s.b0.real(), s.b0.imag(), std::norm(s.a0),
                           s.power(), s.theta(), amplitude_closed_form(n, p.y, theta0, times[k])});
    }
    const auto lock = detect_phase_locking(series, p);
    out.summary["max_relative_power_drift"] = drift;
    out.summary["phase_locked"] = lock.locked;
    out.summary["lock_onset"] = lock.onset ? json(*lock.onset) : json(nullptr);
    return out;
}

ScenarioOutput run_position_pdf(const json& c)
{
    const auto kind = parse_interaction(c["kind"].get<std::string>());
    const double s = num(c, kind == Interaction::SFWM ? "y" : "z");
    const auto basis = build_basis(integer(c, "n_max"));
    const auto h = build_hamiltonian(basis, make_params(kind, num(c, "omega"), s));
    const auto [hot, cold] = split_temperatures(num(c, "temperature"), num(c, "delta_fraction"));
    const std::vector<BathSpec> baths{{hot, num(c, "gamma")}, {cold, num(c, "gamma")}};
    const auto l = build_liouvillian(h, baths);
    const auto ss = steady_state(l, vacuum_state(basis));
    const PositionGrid grid{integer(c, "points"), num(c, "x_max")};
    const auto pdf = position_pdf(ss.rho, grid);
    const auto xs = grid.coordinates();

    ScenarioOutput out;
    out.table.columns = {"x1", "x2", "p"};
    for (int i = 0; i < grid.points; ++i) {
        for (int k = 0; k < grid.points; ++k) {
            out.table.add_row({xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(k)], pdf(i, k)});
        }
    }
    out.summary = {{"normalization", integrate_grid(pdf, grid)}, {"ipr", delocalization_measure(pdf, grid)},
                   {"degenerate_null_space", ss.degenerate}, {"steady_state_residual", ss.residual},
                   {"mean_total_number", expectation(total_number(basis), ss.rho).real()}};
    return out;
}

ScenarioOutput run_algebra(const json& c)
{
    const auto basis = build_basis(integer(c, "n_max"));
    ScenarioOutput out;
    out.table.columns = {"relation", "sector", "residual"};
    double worst = 0.0;
    auto emit = [&](const RelationResidual& r) {
        for (std::size_t n = 0; n < r.per_sector.size(); ++n) {
            out.table.add_row({r.name, static_cast<double>(n), r.per_sector[n]});
            worst = std::max(worst, r.per_sector[n]);
        }
    };
    for (const auto& r : verify_su2_relations(build_su2(basis))) emit(r);
    const auto rep = verify_deformed_commutator(build_deformed(basis));
    emit(rep.commutator);
    emit(rep.adjointness);
    emit(rep.raising_residual);
    json kappa = json::array();
    for (double k : rep.raising_coefficient) kappa.push_back(std::isnan(k) ? json(nullptr) : json(k));
    out.summary = {{"max_residual", worst}, {"raising_coefficient", kappa}};
    if (worst > num(c, "algebra_tol")) oracle_failure("algebra residual", worst, num(c, "algebra_tol"));
    return out;
}

const std::map<std::string, std::function<ScenarioOutput(const json&)>>& runners()
{
    static const std::map<std::string, std::function<ScenarioOutput(const json&)>> r = {
        {"linear-one-bath", run_linear_one_bath},
        {"linear-two-bath", run_linear_two_bath},
        {"sfwm-one-bath", [](const json& c) { return run_nonlinear(c, Interaction::SFWM, false); }},
        {"sfwm-two-bath", [](const json& c) { return run_nonlinear(c, Interaction::SFWM, true); }},
        {"xpm-one-bath", [](const json& c) { return run_nonlinear(c, Interaction::XPM, false); }},
        {"xpm-two-bath", [](const json& c) { return run_nonlinear(c, Interaction::XPM, true); }},
        {"overlap-scan", run_overlap},
        {"heatmap-Q", run_heatmap},
        {"ness-scan", run_ness},
        {"semiclassical", run_semiclassical},
        {"position-pdf", run_position_pdf},
        {"algebra-verify", run_algebra},
    };
    return r;
}

json parse_override_value(const std::string& text)
{
    try {
        json v = json::parse(text);
        if (v.is_number() || v.is_string() || v.is_boolean()) return v;
    } catch (const json::parse_error&) {
    }
    return text;
}

} // namespace

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names = {
        "linear-one-bath", "linear-two-bath", "sfwm-one-bath", "sfwm-two-bath", "xpm-one-bath", "xpm-two-bath",
        "overlap-scan", "heatmap-Q", "ness-scan", "semiclassical", "position-pdf", "algebra-verify"};
    return names;
}

json scenario_defaults(const std::string& scenario)
{
    const auto it = defaults_table().find(scenario);
    if (it == defaults_table().end()) throw ConfigError("scenario", "unknown scenario '" + scenario + "'");
    return it->second;
}

json resolve_config(const std::string& scenario, const json& file, const std::vector<std::string>& overrides)
{
    json resolved = scenario_defaults(scenario);
    if (!file.is_null() && !file.is_object()) throw ConfigError("config", "must be a JSON object");

    auto assign = [&](const std::string& key, const json& value) {
        if (key == "scenario") return;
        if (!resolved.contains(key)) throw ConfigError(key, "unknown field for scenario " + scenario);
        const json& def = resolved[key];
        if (def.is_string()) {
            if (!value.is_string()) throw ConfigError(key, "expected a string");
        } else if (!value.is_number()) {
            throw ConfigError(key, "expected a number");
        }
        resolved[key] = value;
    };

    if (file.is_object()) {
        // a "scenario" entry is informational; the positional argument wins
        for (const auto& [key, value] : file.items()) assign(key, value);
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--set", "expected key=value, got '" + o + "'");
        assign(o.substr(0, eq), parse_override_value(o.substr(eq + 1)));
    }
    validate(scenario, resolved);
    return resolved;
}

ScenarioOutput run_scenario(const std::string& scenario, const json& config)
{
    const auto it = runners().find(scenario);
    if (it == runners().end()) throw ConfigError("scenario", "unknown scenario '" + scenario + "'");
    return it->second(config);
}

} // namespace dimerheat
