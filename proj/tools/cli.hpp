#pragma once

// Command-line front end: spectra, integral cross-checks, correction-order
// scans, orbit diagnostics and the small-l study. Each command fills a Table
// that is emitted as CSV or JSON.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "snyder/analytic.hpp"
#include "snyder/dynamics.hpp"
#include "snyder/model.hpp"
#include "snyder/numerics.hpp"

namespace snyder::cli {

inline constexpr const char* tool_name = "snyder";
inline constexpr const char* tool_version = "0.1.0";

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2 };

enum class Command { spectrum, verify_integrals, scan_order, orbit, l_limit };
enum class Format { csv, json };

inline std::string_view command_name(Command c)
{
    switch (c) {
    case Command::spectrum:         return "spectrum";
    case Command::verify_integrals: return "verify-integrals";
    case Command::scan_order:       return "scan-order";
    case Command::orbit:            return "orbit";
    case Command::l_limit:          return "l-limit";
    }
    return "?";
}

/// Raw, unvalidated option values as parsed from flags and config file.
struct RunConfig {
    Command command = Command::spectrum;
    double m = 1.0;
    double e2 = 1.0;
    double beta = 0.0;
    bool beta_given = false;

    int n_prime_max = 3;
    int n = 1;
    std::vector<double> beta_grid;
    std::vector<int> l_values;
    std::vector<double> l_grid;
    std::optional<double> energy;
    std::vector<double> energies;

    double x1 = 2.0, x2 = 0.0, p1 = 0.0, p2 = 0.5;
    std::optional<double> t_end;
    double local_tol = 1e-12;
    bool samples = false;

    std::optional<double> tol_quad;
    std::optional<double> tol_root;
    std::string method = "closed";

    Format format = Format::csv;
    std::string out;  // empty: standard output
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
};

/// Locale-independent equivalent of %.17g.
inline std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string csv_cell(const Cell& c)
{
    struct {
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& s) const
        {
            if (s.find_first_of(",\"\n") == std::string::npos)
                return s;
            std::string q = "\"";
            for (char ch : s) {
                if (ch == '"')
                    q += '"';
                q += ch;
            }
            return q + "\"";
        }
    } visit;
    return std::visit(visit, c);
}

inline nlohmann::ordered_json json_cell(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v))
                    return nullptr;
            }
            return v;
        },
        c);
}

inline void write_csv(std::ostream& os, const Table& t)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
    for (const auto& [key, value] : t.summary)
        os << "# " << key << '=' << csv_cell(value) << '\n';
}

inline nlohmann::ordered_json config_echo(const RunConfig& cfg)
{
    nlohmann::ordered_json j;
    j["command"] = std::string(command_name(cfg.command));
    j["m"] = cfg.m;
    j["e2"] = cfg.e2;
    j["beta"] = cfg.beta;
    switch (cfg.command) {
    case Command::spectrum:
        j["n_prime_max"] = cfg.n_prime_max;
        break;
    case Command::verify_integrals:
        j["beta_grid"] = cfg.beta_grid;
        j["l_values"] = cfg.l_values;
        j["energies"] = cfg.energies;
        if (cfg.energy)
            j["energy"] = *cfg.energy;
        break;
    case Command::scan_order:
        j["n"] = cfg.n;
        j["beta_grid"] = cfg.beta_grid;
        j["l_values"] = cfg.l_values;
        j["method"] = cfg.method;
        break;
    case Command::orbit:
        j["state"] = {cfg.x1, cfg.x2, cfg.p1, cfg.p2};
        if (cfg.t_end)
            j["t_end"] = *cfg.t_end;
        j["local_tol"] = cfg.local_tol;
        j["samples"] = cfg.samples;
        break;
    case Command::l_limit:
        if (cfg.energy)
            j["energy"] = *cfg.energy;
        j["l_grid"] = cfg.l_grid;
        j["beta_grid"] = cfg.beta_grid;
        break;
    }
    if (cfg.tol_quad)
        j["tol_quad"] = *cfg.tol_quad;
    if (cfg.tol_root)
        j["tol_root"] = *cfg.tol_root;
    j["format"] = cfg.format == Format::csv ? "csv" : "json";
    return j;
}

inline void write_json(std::ostream& os, const Table& t, const RunConfig& cfg)
{
    nlohmann::ordered_json doc;
    doc["meta"]["tool"] = tool_name;
    doc["meta"]["version"] = tool_version;
    doc["meta"]["config"] = config_echo(cfg);
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size(); ++i)
            r[t.columns[i]] = json_cell(row[i]);
        doc["rows"].push_back(std::move(r));
    }
    if (!t.summary.empty()) {
        nlohmann::ordered_json s = nlohmann::ordered_json::object();
        for (const auto& [key, value] : t.summary)
            s[key] = json_cell(value);
        doc["summary"] = std::move(s);
    }
    os << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline PhysicalParams params_of(const RunConfig& cfg) { return validate_params(cfg.m, cfg.e2, cfg.beta); }

inline SolverOptions solver_options(const RunConfig& cfg)
{
    SolverOptions opt;
    if (cfg.tol_quad) {
        if (!(*cfg.tol_quad > 0.0))
            throw ConfigError("--tol-quad must be > 0");
        opt.quad.rel_tol = *cfg.tol_quad;
    }
    if (cfg.tol_root) {
        if (!(*cfg.tol_root > 0.0))
            throw ConfigError("--tol-root must be > 0");
        opt.root_rel_tol = *cfg.tol_root;
    }
    return opt;
}

inline long long sign_of_correction(double e, double e_ref)
{
    const double rel = e / e_ref - 1.0;
    if (!std::isfinite(rel) || std::abs(rel) <= 1e-12)
        return 0;
    return rel < 0 ? -1 : 1;
}

inline std::vector<double> logspace(double lo, double hi, int count)
{
    std::vector<double> v;
    for (int i = 0; i < count; ++i)
        v.push_back(std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (count - 1)));
    return v;
}

} // namespace detail

/// Interval of slopes accepted for the leading correction of channel l.
inline std::pair<double, double> expected_slope_band(int l)
{
    return l == 0 ? std::pair{0.98, 1.02} : std::pair{1.98, 2.02};
}

inline constexpr double integral_agreement_bar = 1e-8;

struct CommandResult {
    Table table;
    int exit_code = exit_ok;
};

inline CommandResult cmd_spectrum(const RunConfig& cfg)
{
    const PhysicalParams p = detail::params_of(cfg);
    if (cfg.n_prime_max < 1)
        throw ConfigError("--n-prime-max must be >= 1");
    const auto opt = detail::solver_options(cfg);

    CommandResult res;
    res.table.columns = {"n_prime", "l", "n", "beta", "E_newton", "E_closed", "E_numeric", "E_series", "E_pert_ref",
                         "rel_gap_closed_numeric", "rel_gap_closed_pert_ref", "correction_sign", "error"};
    const auto entries = spectrum_table(p, cfg.n_prime_max, opt);
    int failures = 0;
    for (const auto& e : entries) {
        if (!e.ok())
            ++failures;
        const double gap = std::abs(e.e_closed - e.e_numeric) / std::abs(e.e_closed);
        const double pert_gap = (e.e_closed - e.e_perturbative_ref) / e.e_newton;
        res.table.rows.push_back({static_cast<long long>(e.qn.n_prime()), static_cast<long long>(e.qn.l()),
                                  static_cast<long long>(e.qn.n()), p.beta(), e.e_newton, e.e_closed, e.e_numeric,
                                  e.e_series, e.e_perturbative_ref, gap, pert_gap,
                                  detail::sign_of_correction(e.e_closed, e.e_newton), e.error});
    }
    res.table.summary.push_back({"entries", static_cast<long long>(entries.size())});
    res.table.summary.push_back({"failed_entries", static_cast<long long>(failures)});
    res.exit_code = failures == 0 ? exit_ok : exit_check_failed;
    return res;
}

inline CommandResult cmd_verify_integrals(const RunConfig& cfg)
{
    const PhysicalParams base = detail::params_of(cfg);
    const auto opt = detail::solver_options(cfg);

    std::vector<double> betas = cfg.beta_grid;
    if (betas.empty())
        betas = cfg.beta_given ? std::vector<double>{cfg.beta} : std::vector<double>{0.0, 0.05, 0.1};
    const std::vector<int> ls = cfg.l_values.empty() ? std::vector<int>{0, 1, 2, 3} : cfg.l_values;
    for (int l : ls)
        if (l < 0)
            throw ConfigError("l values must be >= 0");
    const std::vector<double> fractions = {0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.97};

    CommandResult res;
    res.table.columns = {"E", "l", "beta", "phi_closed", "phi_numeric", "err_estimate", "rel_dev", "status"};
    double max_dev = 0.0;
    long long evaluated = 0, skipped = 0, failed = 0;
    for (double b : betas) {
        const PhysicalParams p = base.with_beta(b);
        for (int l : ls) {
            std::vector<double> es;
            if (cfg.energy)
                es.push_back(*cfg.energy);
            es.insert(es.end(), cfg.energies.begin(), cfg.energies.end());
            if (es.empty()) {
                const EnergyWindow w = energy_window(p, l);
                const double scale = l == 0 ? p.m() * p.e2() * p.e2() : w.e_max;
                for (double f : fractions)
                    es.push_back(f * scale);
            }
            for (double E : es) {
                const EnergyWindow w = energy_window(p, l);
                if (!(E > 0.0) || !w.contains(E)) {
                    ++skipped;
                    res.table.rows.push_back({E, static_cast<long long>(l), b, NAN, NAN, NAN, NAN,
                                              std::string("skipped: outside energy window")});
                    continue;
                }
                try {
                    const double closed = phase_integral_closed(p, E, l).value;
                    const auto num = phase_integral_numeric(p, E, l, opt.quad);
                    const double dev = closed != 0.0 ? std::abs(num.value - closed) / std::abs(closed)
                                                     : std::abs(num.value - closed);
                    max_dev = std::max(max_dev, dev);
                    ++evaluated;
                    res.table.rows.push_back({E, static_cast<long long>(l), b, closed, num.value, num.err_estimate,
                                              dev, std::string("ok")});
                } catch (const Error& e) {
                    ++failed;
                    res.table.rows.push_back(
                        {E, static_cast<long long>(l), b, NAN, NAN, NAN, NAN, std::string(e.what())});
                }
            }
        }
    }
    const bool pass = failed == 0 && evaluated > 0 && max_dev <= integral_agreement_bar;
    res.table.summary = {{"evaluated", evaluated},  {"skipped", skipped}, {"failed", failed},
                         {"max_rel_dev", max_dev},   {"threshold", integral_agreement_bar}, {"pass", pass}};
    res.exit_code = pass ? exit_ok : exit_check_failed;
    return res;
}

inline CommandResult cmd_scan_order(const RunConfig& cfg)
{
    const PhysicalParams base = detail::params_of(cfg);
    const auto opt = detail::solver_options(cfg);
    const std::vector<double> grid = cfg.beta_grid.empty() ? detail::logspace(1e-4, 1e-2, 7) : cfg.beta_grid;
    if (grid.size() < 4)
        throw ConfigError("--beta-grid needs at least 4 points");
    const std::vector<int> ls = cfg.l_values.empty() ? std::vector<int>{0, 1, 2} : cfg.l_values;
    if (cfg.n < 1)
        throw ConfigError("--n must be >= 1");
    SolveMethod method;
    if (cfg.method == "closed")
        method = SolveMethod::closed_form;
    else if (cfg.method == "numeric")
        method = SolveMethod::numeric;
    else
        throw ConfigError("--method must be closed or numeric");

    CommandResult res;
    res.table.columns = {"l", "n", "n_prime", "slope", "slope_lo", "slope_hi", "fit_residual_rms", "points",
                         "coefficient", "series_coefficient", "pass"};
    bool all_pass = true;
    for (int l : ls) {
        if (l < 0)
            throw ConfigError("l values must be >= 0");
        const auto qn = QuantumNumbers::from_radial(cfg.n, l);
        const auto [lo, hi] = expected_slope_band(l);
        try {
            const LogLogFit fit = correction_order(base, qn, grid, method, opt);
            const int order = l == 0 ? 1 : 2;
            const double coef = correction_coefficient(base, qn, grid, order, method, opt);
            const bool pass = fit.slope >= lo && fit.slope <= hi;
            all_pass = all_pass && pass;
            res.table.rows.push_back({static_cast<long long>(l), static_cast<long long>(cfg.n),
                                      static_cast<long long>(qn.n_prime()), fit.slope, lo, hi, fit.residual_rms,
                                      static_cast<long long>(fit.points_used), coef, series_coefficient(base, qn),
                                      pass});
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvalidArgument)
                throw ConfigError(e.what());
            all_pass = false;
            res.table.rows.push_back({static_cast<long long>(l), static_cast<long long>(cfg.n),
                                      static_cast<long long>(qn.n_prime()), NAN, lo, hi, NAN, 0LL, NAN,
                                      series_coefficient(base, qn), false});
            res.table.summary.push_back({"error_l" + std::to_string(l), std::string(e.what())});
        }
    }
    res.table.summary.push_back({"pass", all_pass});
    res.exit_code = all_pass ? exit_ok : exit_check_failed;
    return res;
}

inline CommandResult cmd_orbit(const RunConfig& cfg)
{
    const PhysicalParams p = detail::params_of(cfg);
    const OrbitState s0{cfg.x1, cfg.x2, cfg.p1, cfg.p2, 0.0};
    if (!(s0.radius() > default_collision_floor))
        throw ConfigError("initial position must be away from the origin");
    if (!(cfg.local_tol > 0.0))
        throw ConfigError("--local-tol must be > 0");
    double t_end;
    double period = NAN;
    try {
        period = kepler_radial_period(s0, p);
    } catch (const Error&) {
    }
    if (cfg.t_end) {
        t_end = *cfg.t_end;
        if (!(t_end > 0.0) || !std::isfinite(t_end))
            throw ConfigError("--t-end must be > 0");
    } else {
        if (!std::isfinite(period))
            throw ConfigError("unbound initial state: --t-end is required");
        t_end = 100.0 * period;
    }

    CommandResult res;
    auto& summary = res.table.summary;
    summary.push_back({"beta", p.beta()});
    summary.push_back({"t_end", t_end});
    summary.push_back({"kepler_period", period});
    try {
        const Trajectory traj = integrate_orbit(s0, p, t_end, cfg.local_tol);
        std::optional<Precession> prec;
        std::string prec_note = "ok";
        try {
            prec = precession_per_orbit(traj);
            if (prec->circular)
                prec_note = "circular: precession undefined, reported as 0";
        } catch (const Error& e) {
            prec_note = e.what();
        }
        if (cfg.samples) {
            res.table.columns = {"t", "x1", "x2", "p1", "p2", "H", "J"};
            for (const auto& s : traj.samples) {
                const auto inv = invariants(s, p);
                res.table.rows.push_back({s.t, s.x1, s.x2, s.p1, s.p2, inv.energy, inv.angular_momentum});
            }
        } else {
            res.table.columns = {"beta", "t_end", "samples", "perihelia", "h_drift", "j_drift",
                                 "precession_per_orbit", "status"};
            res.table.rows.push_back({p.beta(), t_end, static_cast<long long>(traj.samples.size()),
                                      static_cast<long long>(traj.perihelia.size()), traj.h_drift, traj.j_drift,
                                      prec ? prec->per_orbit : NAN, prec_note});
        }
        summary.push_back({"samples", static_cast<long long>(traj.samples.size())});
        summary.push_back({"perihelia", static_cast<long long>(traj.perihelia.size())});
        summary.push_back({"h_drift", traj.h_drift});
        summary.push_back({"j_drift", traj.j_drift});
        summary.push_back({"precession_per_orbit", prec ? prec->per_orbit : NAN});
        summary.push_back({"status", prec_note});
        res.exit_code = exit_ok;
    } catch (const Error& e) {
        res.table.columns = {"beta", "t_end", "status"};
        res.table.rows.push_back({p.beta(), t_end, std::string(e.what())});
        summary.push_back({"status", std::string(e.what())});
        res.exit_code = exit_check_failed;
    }
    return res;
}

inline CommandResult cmd_l_limit(const RunConfig& cfg)
{
    const PhysicalParams base = detail::params_of(cfg);
    const double E = cfg.energy.value_or(0.125);
    const std::vector<double> ls = cfg.l_grid.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4, 1e-6} : cfg.l_grid;
    for (double l : ls)
        if (!(l > 0.0))
            throw ConfigError("--l-grid values must be > 0");
    const std::vector<double> betas = cfg.beta_grid.empty() ? std::vector<double>{base.beta()} : cfg.beta_grid;

    CommandResult res;
    res.table.columns = {"beta", "l", "phi_3d", "phi_3d_shifted", "phi_1d", "phi_3d_limit", "gap", "rel_gap", "error"};
    int failures = 0;
    for (double b : betas) {
        try {
            const auto study = l_limit_study(base.with_beta(b), E, ls);
            for (const auto& row : study.rows) {
                if (!row.error.empty())
                    ++failures;
                res.table.rows.push_back({b, row.l, row.phi_3d, row.phi_3d_shifted, row.phi_1d, study.phi_3d_limit,
                                          row.gap, row.rel_gap, row.error});
            }
        } catch (const Error& e) {
            ++failures;
            res.table.rows.push_back({b, NAN, NAN, NAN, NAN, NAN, NAN, NAN, std::string(e.what())});
        }
    }
    if (betas.size() >= 2) {
        const double l_min = *std::min_element(ls.begin(), ls.end());
        res.table.summary.push_back({"gap_fit_l", l_min});
        try {
            const auto fit = l_limit_gap_scaling(base, E, l_min, betas);
            res.table.summary.push_back({"gap_beta_slope", fit.slope});
            res.table.summary.push_back({"gap_fit_residual_rms", fit.residual_rms});
        } catch (const Error& e) {
            res.table.summary.push_back({"gap_beta_slope", std::string(e.what())});
        }
    }
    res.table.summary.push_back({"failed_rows", static_cast<long long>(failures)});
    res.exit_code = failures == 0 ? exit_ok : exit_check_failed;
    return res;
}

inline CommandResult run_command(const RunConfig& cfg)
{
    switch (cfg.command) {
    case Command::spectrum:         return cmd_spectrum(cfg);
    case Command::verify_integrals: return cmd_verify_integrals(cfg);
    case Command::scan_order:       return cmd_scan_order(cfg);
    case Command::orbit:            return cmd_orbit(cfg);
    case Command::l_limit:          return cmd_l_limit(cfg);
    }
    throw ConfigError("unknown command");
}

// ---------------------------------------------------------------------------
// Parsing

/// Binds every option to cfg. All options live on the root app and
/// subcommands fall through, so a config file stays a flat key = value list.
inline void configure_app(CLI::App& app, RunConfig& cfg, std::vector<CLI::App*>& subs, std::string& format)
{
    app.set_config("--config", "", "flat key = value file; keys are flag names without dashes");
    app.add_option("--m", cfg.m, "mass m (default 1)");
    app.add_option("--e2", cfg.e2, "Coulomb coupling e^2 (default 1)");
    app.add_option("--beta", cfg.beta, "deformation beta (default 0)");
    app.add_option("--n-prime-max", cfg.n_prime_max, "spectrum: largest principal number n'");
    app.add_option("--n", cfg.n, "scan-order: radial quantum number n");
    app.add_option("--beta-grid", cfg.beta_grid, "verify-integrals/scan-order/l-limit: deformation grid")->delimiter(',');
    app.add_option("--l-values", cfg.l_values, "verify-integrals/scan-order: angular momenta")->delimiter(',');
    app.add_option("--l-grid", cfg.l_grid, "l-limit: small positive l values")->delimiter(',');
    app.add_option("--energy", cfg.energy, "verify-integrals/l-limit: binding energy E");
    app.add_option("--energies", cfg.energies, "verify-integrals: explicit energy grid")->delimiter(',');
    app.add_option("--x1", cfg.x1, "orbit: initial x1");
    app.add_option("--x2", cfg.x2, "orbit: initial x2");
    app.add_option("--p1", cfg.p1, "orbit: initial p1");
    app.add_option("--p2", cfg.p2, "orbit: initial p2");
    app.add_option("--t-end", cfg.t_end, "orbit: integration time (default 100 Kepler periods)");
    app.add_option("--local-tol", cfg.local_tol, "orbit: local error tolerance");
    app.add_flag("--samples", cfg.samples, "orbit: emit every accepted step");
    app.add_option("--tol-quad", cfg.tol_quad, "relative quadrature tolerance");
    app.add_option("--tol-root", cfg.tol_root, "relative root bracket width");
    app.add_option("--method", cfg.method, "scan-order: closed or numeric")->check(CLI::IsMember({"closed", "numeric"}));
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "output path (default standard output)");

    for (Command c : {Command::spectrum, Command::verify_integrals, Command::scan_order, Command::orbit,
                      Command::l_limit}) {
        auto* sub = app.add_subcommand(std::string(command_name(c)));
        sub->fallthrough();
        subs.push_back(sub);
    }
    app.require_subcommand(1, 1);
}

/// Parses argv into a config and runs it. Diagnostics go to err.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bohr-Sommerfeld spectra of the Coulomb problem with Snyder-deformed brackets", tool_name};
    RunConfig cfg;
    std::vector<CLI::App*> subs;
    std::string format = "csv";
    configure_app(app, cfg, subs, format);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, d;
        const int code = app.exit(e, o, d);
        out << o.str();
        err << d.str();
        return code == 0 ? exit_ok : exit_config_error;
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed())
            cfg.command = static_cast<Command>(i);
    cfg.format = format == "json" ? Format::json : Format::csv;
    cfg.beta_given = app.count("--beta") > 0;

    CommandResult result;
    try {
        result = run_command(cfg);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const Error& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config_error;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            err << "cannot open output file " << cfg.out << '\n';
            return exit_config_error;
        }
        sink = &file;
    }
    if (cfg.format == Format::json)
        write_json(*sink, result.table, cfg);
    else
        write_csv(*sink, result.table);
    return result.exit_code;
}

} // namespace snyder::cli
