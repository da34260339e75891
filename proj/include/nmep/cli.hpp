#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nmep/csv.hpp"
#include "nmep/manifest.hpp"
#include "nmep/verify.hpp"

namespace nmep::cli {

// Exit codes: 0 success, 1 invalid input, 2 solver/oracle failure,
// 3 verification failure.
enum ExitCode { kOk = 0, kInvalidInput = 1, kSolverFailure = 2, kVerifyFailure = 3 };

namespace detail {

struct ConfigArgs {
    std::string config_file;
    double omega0 = 1.0;
    double delta_omega = 0.0;
    int n_modes = 4001;
    double coupling = 0.0;
    double gamma = 0.0;
    bool lab_frame = false;
    bool coupling_set = false;
    bool gamma_set = false;
};

inline void add_config_options(CLI::App* sub, ConfigArgs& a) {
    sub->add_option("--config", a.config_file, "key=value configuration file; flags override it");
    sub->add_option("--omega0", a.omega0, "carrier frequency (default 1)");
    sub->add_option("--delta-omega", a.delta_omega, "reservoir frequency step");
    sub->add_option("--n-modes", a.n_modes, "reservoir mode count N+1, odd (default 4001)");
    sub->add_option("--coupling", a.coupling, "coupling g (exclusive with --gamma)")
        ->each([&a](const std::string&) { a.coupling_set = true; });
    sub->add_option("--gamma", a.gamma, "target decay rate; g is derived (exclusive with --coupling)")
        ->each([&a](const std::string&) { a.gamma_set = true; });
    sub->add_flag("--lab-frame", a.lab_frame, "keep the carrier (default: rotating frame)");
}

inline void apply_config_file(ConfigArgs& a, const CLI::App* sub) {
    if (a.config_file.empty()) return;
    std::ifstream in(a.config_file);
    if (!in) throw invalid_config("cannot open config file: " + a.config_file);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_config("config file line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        const auto trim = [](std::string& s) {
            const auto bb = s.find_first_not_of(" \t");
            const auto ee = s.find_last_not_of(" \t");
            s = (bb == std::string::npos) ? std::string{} : s.substr(bb, ee - bb + 1);
        };
        trim(key);
        trim(val);

        // flags override the file: skip keys given on the command line
        const auto given = [&](const std::string& flag) { return sub->count(flag) > 0; };
        try {
            if (key == "omega0") {
                if (!given("--omega0")) a.omega0 = std::stod(val);
            } else if (key == "delta_omega") {
                if (!given("--delta-omega")) a.delta_omega = std::stod(val);
            } else if (key == "n_modes") {
                if (!given("--n-modes")) a.n_modes = std::stoi(val);
            } else if (key == "coupling") {
                if (!given("--coupling") && !given("--gamma")) {
                    a.coupling = std::stod(val);
                    a.coupling_set = true;
                }
            } else if (key == "gamma") {
                if (!given("--coupling") && !given("--gamma")) {
                    a.gamma = std::stod(val);
                    a.gamma_set = true;
                }
            } else if (key == "rotating_frame") {
                if (!given("--lab-frame"))
                    a.lab_frame = (val == "false" || val == "0" || val == "off");
            } else {
                throw invalid_config("config file: unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw invalid_config("config file line " + std::to_string(lineno) + ": bad value for " + key);
        }
    }
}

inline SystemConfig resolve_config(ConfigArgs& a, const CLI::App* sub) {
    apply_config_file(a, sub);
    if (a.coupling_set && a.gamma_set)
        throw invalid_config("exactly one of --coupling/--gamma may be given");
    if (!a.coupling_set && !a.gamma_set)
        throw invalid_config("one of --coupling/--gamma is required");
    SystemConfig c;
    c.omega0 = a.omega0;
    c.delta_omega = a.delta_omega;
    c.n_modes = a.n_modes;
    c.rotating_frame = !a.lab_frame;
    c.coupling = a.coupling_set ? a.coupling : coupling_for_rate(a.gamma, a.delta_omega);
    c.validate();
    return c;
}

// "--t-max 3TR" means 3 * T_R; a bare number is absolute time.
inline double parse_tmax(const std::string& s, double T_R) {
    std::string body = s;
    bool in_tr = false;
    if (body.size() > 2 && (body.substr(body.size() - 2) == "TR" || body.substr(body.size() - 2) == "tr")) {
        in_tr = true;
        body = body.substr(0, body.size() - 2);
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(body, &used);
    } catch (const std::exception&) {
        throw invalid_config("cannot parse --t-max value '" + s + "'");
    }
    if (used != body.size()) throw invalid_config("cannot parse --t-max value '" + s + "'");
    if (!(v > 0.0)) throw invalid_config("--t-max must be positive");
    return in_tr ? v * T_R : v;
}

inline std::string method_name(EigenMethod m) {
    switch (m) {
        case EigenMethod::transcendental_infinite: return "transcendental-infinite";
        case EigenMethod::transcendental_finite: return "transcendental-finite";
        case EigenMethod::dense_oracle: return "dense-oracle";
    }
    return "?";
}

} // namespace detail

// --- subcommand handlers ------------------------------------------------------

inline int cmd_eigen(const SystemConfig& cfg, const std::string& method, int k_max,
                     const std::string& out_path) {
    const Rates r = derive_rates(cfg);
    EigenDecomposition dec;
    if (method == "infinite")
        dec = infinite_truncated_decomposition(cfg, k_max);
    else if (method == "finite")
        dec = finite_decomposition(cfg);
    else if (method == "dense")
        dec = diagonalize_oracle(build_matrix(cfg), cfg);
    else
        throw invalid_config("--method must be infinite|finite|dense");

    CsvWriter csv(out_path, {"k", "omega_tilde", "alpha", "weight", "residual"});
    double worst_residual = 0.0;
    for (const auto& m : dec.modes) {
        double res;
        if (dec.method == EigenMethod::transcendental_infinite)
            res = std::abs(alpha_equation_infinite(m.alpha, m.k, r.gamma, cfg.delta_omega));
        else if (dec.method == EigenMethod::transcendental_finite)
            res = std::abs(eigen_residual_shifted(m.k, m.alpha, cfg));
        else
            res = std::abs(eigen_residual(m.omega_tilde, cfg));
        worst_residual = std::max(worst_residual, res);
        csv.row({format_int(m.k), format_double(m.omega_tilde), format_double(m.alpha),
                 format_double(m.weight), format_double(res)});
    }
    csv.close();

    json man = make_manifest("eigen");
    man["config"] = config_json(cfg);
    man["parameters"] = json{{"method", method},
                             {"k_max", dec.method == EigenMethod::transcendental_infinite
                                           ? (k_max < 0 ? default_k_max(cfg) : k_max)
                                           : cfg.bath_size() / 2}};
    const double completeness_tol =
        dec.method == EigenMethod::transcendental_infinite
            ? 4.0 * r.gamma / (std::numbers::pi * (k_max < 0 ? default_k_max(cfg) : k_max) * cfg.delta_omega)
            : 1e-10;
    add_check(man, {"weight_completeness", std::abs(dec.weight_sum() - 1.0), completeness_tol,
                    std::abs(dec.weight_sum() - 1.0) <= completeness_tol});
    const double res_tol = dec.method == EigenMethod::transcendental_infinite ? 1e-14 * cfg.delta_omega
                           : dec.method == EigenMethod::transcendental_finite ? 1e-12 * cfg.delta_omega
                                                                              : 1e-9;
    add_check(man, {"max_residual", worst_residual, res_tol, worst_residual <= res_tol});
    man["outputs"].push_back(out_path);
    write_json_file(out_path + ".manifest.json", man);
    return kOk;
}

inline int cmd_evolve(const SystemConfig& cfg, const std::string& t_max_str, int samples_per_tr,
                      const std::string& method, const std::string& mode, double dt, bool store_b,
                      int k_max, const std::string& out_path) {
    const Rates r = derive_rates(cfg);
    const double t_max = detail::parse_tmax(t_max_str, r.T_R);
    const int samples = std::max(1, static_cast<int>(std::llround(samples_per_tr * t_max / r.T_R)));
    const std::vector<double> grid = uniform_grid(t_max, samples);

    StateTrajectory traj;
    if (method == "eigenbasis") {
        EigenbasisMode m;
        if (mode == "finite")
            m = EigenbasisMode::finite;
        else if (mode == "infinite")
            m = EigenbasisMode::infinite_truncated;
        else
            throw invalid_config("--mode must be finite|infinite");
        traj = evolve_eigenbasis(cfg, grid, m, store_b, k_max);
    } else if (method == "rk4") {
        traj = evolve_rk4(cfg, grid, dt, store_b);
    } else {
        throw invalid_config("--method must be eigenbasis|rk4");
    }

    const bool have_norm = !traj.norm.empty();
    std::vector<std::string> header{"t", "re_a", "im_a", "abs2_a"};
    if (have_norm) header.push_back("norm");
    CsvWriter csv(out_path, header);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{format_double(grid[i]), format_double(traj.a[i].real()),
                                     format_double(traj.a[i].imag()), format_double(std::norm(traj.a[i]))};
        if (have_norm) row.push_back(format_double(traj.norm[i]));
        csv.row(row);
    }
    csv.close();

    json man = make_manifest("evolve");
    man["config"] = config_json(cfg);
    man["parameters"] = json{{"method", method},
                             {"mode", method == "eigenbasis" ? mode : "full-state"},
                             {"t_max", t_max},
                             {"samples", samples},
                             {"samples_per_TR", samples_per_tr},
                             {"store_b", store_b}};
    if (method == "rk4") {
        man["parameters"]["dt_requested"] = dt;
        man["parameters"]["dt_bound"] = rk4_step_bound(cfg);
    } else {
        man["parameters"]["k_max"] =
            (mode == "infinite") ? (k_max < 0 ? default_k_max(cfg) : k_max) : cfg.bath_size() / 2;
    }
    add_check(man, {"weight_completeness_above_0.99", 1.0 - traj.weight_sum, 0.01,
                    !traj.truncation_warning});
    const double a0_dev = std::abs(traj.a.front() - std::complex<double>{1.0, 0.0});
    if (method == "rk4" || mode == "finite")
        add_check(man, {"initial_amplitude", a0_dev, 1e-10, a0_dev <= 1e-10});
    if (have_norm) {
        double drift = 0.0;
        for (double nv : traj.norm) drift = std::max(drift, std::abs(nv - 1.0));
        const double tol = (method == "rk4") ? 1e-8 : 1e-10;
        add_check(man, {"norm_conservation", drift, tol, drift <= tol});
    }
    man["outputs"].push_back(out_path);
    write_json_file(out_path + ".manifest.json", man);
    return kOk;
}

inline int cmd_revivals(const SystemConfig& cfg, const std::string& t_max_str, int samples_per_tr,
                        int n_max, const std::string& out_path) {
    const Rates r = derive_rates(cfg);
    const double t_max = detail::parse_tmax(t_max_str, r.T_R);
    if (n_max < 0) n_max = static_cast<int>(std::floor(t_max / r.T_R));
    const int samples = std::max(1, static_cast<int>(std::llround(samples_per_tr * t_max / r.T_R)));
    const std::vector<double> grid = uniform_grid(t_max, samples);
    const std::vector<double> recon = reconstruct(grid, cfg, n_max);

    std::vector<std::string> header{"t"};
    for (int n = 0; n <= n_max; ++n) header.push_back("a_" + std::to_string(n));
    header.push_back("reconstructed");
    CsvWriter csv(out_path, header);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{format_double(grid[i])};
        for (int n = 0; n <= n_max; ++n) {
            const double s = grid[i] - n * r.T_R;
            row.push_back(format_double(s >= 0.0 ? revival_amplitude(n, s, r.gamma) : 0.0));
        }
        row.push_back(format_double(recon[i]));
        csv.row(row);
    }
    csv.close();

    json man = make_manifest("revivals");
    man["config"] = config_json(cfg);
    man["parameters"] = json{{"n_max", n_max}, {"t_max", t_max}, {"samples", samples}};
    double zero_dev = 0.0;
    for (int n = 1; n <= n_max; ++n)
        zero_dev = std::max(zero_dev, std::abs(revival_amplitude(n, 0.0, r.gamma)));
    add_check(man, {"switch_on_continuity", zero_dev, 0.0, zero_dev <= 0.0});
    man["outputs"].push_back(out_path);
    write_json_file(out_path + ".manifest.json", man);
    return kOk;
}

inline int cmd_spectrum(const SystemConfig& cfg, int order, double span_gammas, double step_gammas,
                        const std::string& window_lo, const std::string& window_hi, int samples_per_tr,
                        const std::string& out_path) {
    const Rates r = derive_rates(cfg);
    const std::vector<double> om = symmetric_grid(span_gammas * r.gamma, step_gammas * r.gamma);
    const SpectrumGrid analytic = analytic_spectrum(order, om, r.gamma);
    const PeakList peaks = find_peaks(analytic, /*magnitude=*/true, r.gamma);

    const bool windowed = !window_lo.empty() || !window_hi.empty();
    SpectrumGrid wspec;
    if (windowed) {
        if (window_lo.empty() || window_hi.empty())
            throw invalid_config("--window-lo and --window-hi must be given together");
        const double lo = (window_lo == "0") ? 0.0 : detail::parse_tmax(window_lo, r.T_R);
        const double hi = detail::parse_tmax(window_hi, r.T_R);
        const int samples = std::max(1, static_cast<int>(std::llround(samples_per_tr * hi / r.T_R)));
        const StateTrajectory traj = evolve_eigenbasis(cfg, uniform_grid(hi, samples));
        wspec = windowed_spectrum(traj, lo, hi, om, order);
    }

    std::vector<std::string> header{"omega", "S_analytic", "abs2_S_analytic"};
    if (windowed) {
        header.push_back("re_S_windowed");
        header.push_back("im_S_windowed");
        header.push_back("abs2_S_windowed");
    }
    CsvWriter csv(out_path, header);
    for (std::size_t i = 0; i < om.size(); ++i) {
        std::vector<std::string> row{format_double(om[i]), format_double(analytic.values[i].real()),
                                     format_double(std::norm(analytic.values[i]))};
        if (windowed) {
            row.push_back(format_double(wspec.values[i].real()));
            row.push_back(format_double(wspec.values[i].imag()));
            row.push_back(format_double(std::norm(wspec.values[i])));
        }
        csv.row(row);
    }
    csv.close();

    json peaks_json{{"order", order}, {"peaks", json::array()}, {"count", peaks.peaks.size()}};
    for (const auto& p : peaks.peaks)
        peaks_json["peaks"].push_back(
            json{{"omega", p.omega}, {"height", p.height}, {"fwhm", p.fwhm}});
    if (windowed) {
        const PeakList wp = find_peaks(wspec, /*magnitude=*/true, r.gamma);
        peaks_json["windowed_peaks"] = json::array();
        for (const auto& p : wp.peaks)
            peaks_json["windowed_peaks"].push_back(
                json{{"omega", p.omega}, {"height", p.height}, {"fwhm", p.fwhm}});
    }
    const std::string peaks_path = out_path + ".peaks.json";
    write_json_file(peaks_path, peaks_json);

    json man = make_manifest("spectrum");
    man["config"] = config_json(cfg);
    man["parameters"] = json{{"order", order},
                             {"omega_span_gammas", span_gammas},
                             {"omega_step_gammas", step_gammas},
                             {"windowed", windowed},
                             {"peak_merge_radius", r.gamma / 100.0},
                             {"peak_rule", "strict neighbour inequality on |S|^2"}};
    double even = 0.0, smax = 0.0;
    for (std::size_t i = 0; i < om.size(); ++i) smax = std::max(smax, std::abs(analytic.values[i].real()));
    for (std::size_t i = 0; i < om.size(); ++i)
        even = std::max(even, std::abs(analytic.values[i].real() - analytic.values[om.size() - 1 - i].real()));
    add_check(man, {"analytic_evenness", even / smax, 1e-12, even / smax <= 1e-12});
    man["outputs"].push_back(out_path);
    man["outputs"].push_back(peaks_path);
    write_json_file(out_path + ".manifest.json", man);
    return kOk;
}

inline int cmd_ep_matrix(double gamma, int order, const std::string& out_path) {
    const EPMatrix m = ep_matrix(order, gamma);
    const JordanAnalysis ja = jordan_analysis(m);

    json j{{"order", order},
           {"eigenvalue", ja.eigenvalue},
           {"algebraic_multiplicity", ja.algebraic_multiplicity},
           {"geometric_multiplicity", ja.geometric_multiplicity},
           {"nilpotency_index", ja.nilpotency_index}};
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int c = 0; c < m.dim(); ++c) row.push_back(m.entry(i, c));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    write_json_file(out_path, j);

    json man = make_manifest("ep-matrix");
    man["parameters"] = json{{"order", order}, {"gamma", gamma}};
    const bool ok = ja.geometric_multiplicity == 1 && ja.nilpotency_index == order + 1;
    add_check(man, {"jordan_block_structure", ok ? 0.0 : 1.0, 0.0, ok});
    man["outputs"].push_back(out_path);
    write_json_file(out_path + ".manifest.json", man);
    return kOk;
}

inline int cmd_verify(const std::string& suite, const std::string& out_path) {
    if (suite != "quick" && suite != "full")
        throw invalid_config("--suite must be quick|full");
    const std::vector<CheckResult> checks = verify::run_suite(suite == "full");

    json man = make_manifest("verify");
    man["parameters"] = json{{"suite", suite}};
    bool all_pass = true;
    std::vector<std::string> failures;
    for (const auto& c : checks) {
        add_check(man, c);
        std::ostringstream line;
        line << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << c.measured
             << "  tolerance=" << c.tolerance;
        std::cout << line.str() << '\n';
        if (!c.pass) {
            all_pass = false;
            failures.push_back(c.name);
        }
    }
    man["failures"] = failures;
    if (!out_path.empty()) write_json_file(out_path, man);
    std::cout << (all_pass ? "verify: all checks passed" : "verify: FAILURES present") << '\n';
    return all_pass ? kOk : kVerifyFailure;
}

// --- entry point ---------------------------------------------------------------

inline int run(const std::vector<std::string>& args) {
    CLI::App app{"coupled oscillator-reservoir revival dynamics and spectra"};
    app.require_subcommand(1);

    detail::ConfigArgs cfg_eigen, cfg_evolve, cfg_revivals, cfg_spectrum;
    std::string out_eigen, out_evolve, out_revivals, out_spectrum, out_ep, out_verify;

    auto* sub_eigen = app.add_subcommand("eigen", "eigenfrequencies, shifts and weights");
    detail::add_config_options(sub_eigen, cfg_eigen);
    std::string eigen_method = "finite";
    int eigen_kmax = -1;
    sub_eigen->add_option("--method", eigen_method, "infinite|finite|dense (default finite)");
    sub_eigen->add_option("--k-max", eigen_kmax, "truncation for --method infinite");
    sub_eigen->add_option("--out", out_eigen, "output CSV path")->required();

    auto* sub_evolve = app.add_subcommand("evolve", "time evolution of the oscillator amplitude");
    detail::add_config_options(sub_evolve, cfg_evolve);
    std::string ev_tmax = "3TR", ev_method = "eigenbasis", ev_mode = "finite";
    int ev_spt = 2000, ev_kmax = -1;
    double ev_dt = -1.0;
    bool ev_store_b = false;
    sub_evolve->add_option("--t-max", ev_tmax, "horizon: absolute time or <k>TR (default 3TR)");
    sub_evolve->add_option("--samples-per-tr", ev_spt, "samples per revival period (default 2000)");
    sub_evolve->add_option("--method", ev_method, "eigenbasis|rk4 (default eigenbasis)");
    sub_evolve->add_option("--mode", ev_mode, "eigenbasis mode: finite|infinite (default finite)");
    sub_evolve->add_option("--dt", ev_dt, "rk4 step (default: half the stability bound)");
    sub_evolve->add_flag("--store-b", ev_store_b, "store reservoir amplitudes (enables norm column)");
    sub_evolve->add_option("--k-max", ev_kmax, "truncation for --mode infinite");
    sub_evolve->add_option("--out", out_evolve, "output CSV path")->required();

    auto* sub_revivals = app.add_subcommand("revivals", "closed-form revival amplitudes");
    detail::add_config_options(sub_revivals, cfg_revivals);
    std::string rv_tmax = "3TR";
    int rv_nmax = -1, rv_spt = 2000;
    sub_revivals->add_option("--t-max", rv_tmax, "horizon: absolute time or <k>TR (default 3TR)");
    sub_revivals->add_option("--n-max", rv_nmax, "highest revival order (default floor(t_max/T_R))");
    sub_revivals->add_option("--samples-per-tr", rv_spt, "samples per revival period (default 2000)");
    sub_revivals->add_option("--out", out_revivals, "output CSV path")->required();

    auto* sub_spectrum = app.add_subcommand("spectrum", "analytic and windowed revival spectra");
    detail::add_config_options(sub_spectrum, cfg_spectrum);
    int sp_order = 0, sp_spt = 2000;
    double sp_span = 20.0, sp_step = 1.0 / 200.0;
    std::string sp_wlo, sp_whi;
    sub_spectrum->add_option("--order", sp_order, "revival order n")->required();
    sub_spectrum->add_option("--omega-span", sp_span, "grid half-width in units of gamma (default 20)");
    sub_spectrum->add_option("--omega-step", sp_step, "grid spacing in units of gamma (default 1/200)");
    sub_spectrum->add_option("--window-lo", sp_wlo, "windowed transform start (absolute or <k>TR)");
    sub_spectrum->add_option("--window-hi", sp_whi, "windowed transform end (absolute or <k>TR)");
    sub_spectrum->add_option("--samples-per-tr", sp_spt, "trajectory sampling for the window (default 2000)");
    sub_spectrum->add_option("--out", out_spectrum, "output CSV path")->required();

    auto* sub_ep = app.add_subcommand("ep-matrix", "revival-chain matrix and its Jordan structure");
    double ep_gamma = 0.0;
    int ep_order = 0;
    sub_ep->add_option("--gamma", ep_gamma, "decay rate")->required();
    sub_ep->add_option("--order", ep_order, "revival order n (matrix is (n+1)x(n+1))")->required();
    sub_ep->add_option("--out", out_ep, "output JSON path")->required();

    auto* sub_verify = app.add_subcommand("verify", "run the module invariant suites");
    std::string vf_suite = "quick";
    sub_verify->add_option("--suite", vf_suite, "quick|full (default quick)");
    sub_verify->add_option("--out", out_verify, "manifest JSON path");

    std::vector<const char*> argv;
    argv.push_back("nmep");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (sub_eigen->parsed())
            return cmd_eigen(detail::resolve_config(cfg_eigen, sub_eigen), eigen_method, eigen_kmax, out_eigen);
        if (sub_evolve->parsed())
            return cmd_evolve(detail::resolve_config(cfg_evolve, sub_evolve), ev_tmax, ev_spt, ev_method,
                              ev_mode, ev_dt, ev_store_b, ev_kmax, out_evolve);
        if (sub_revivals->parsed())
            return cmd_revivals(detail::resolve_config(cfg_revivals, sub_revivals), rv_tmax, rv_spt, rv_nmax,
                                out_revivals);
        if (sub_spectrum->parsed())
            return cmd_spectrum(detail::resolve_config(cfg_spectrum, sub_spectrum), sp_order, sp_span, sp_step,
                                sp_wlo, sp_whi, sp_spt, out_spectrum);
        if (sub_ep->parsed()) return cmd_ep_matrix(ep_gamma, ep_order, out_ep);
        if (sub_verify->parsed()) return cmd_verify(vf_suite, out_verify);
    } catch (const invalid_config& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const solver_error& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}

} // namespace nmep::cli
