// SPDX-License-Identifier: Apache-2.0
//
// gridppp command-line front end: analytic curves, Monte Carlo simulation,
// deployment fitting, and raw realization dumps as CSV/JSON tables.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridppp/association.hpp"
#include "gridppp/coverage.hpp"
#include "gridppp/distributions.hpp"
#include "gridppp/fitting.hpp"
#include "gridppp/io.hpp"
#include "gridppp/model.hpp"
#include "gridppp/montecarlo.hpp"
#include "gridppp/processes.hpp"

namespace {

using namespace gridppp;

double env_abs_tol(double fallback) {
    if (const char* v = std::getenv("GRIDPPP_ABS_TOL")) {
        try {
            const double t = std::stod(v);
            if (t > 0.0) return t;
        } catch (const std::exception&) {
        }
        throw std::runtime_error("GRIDPPP_ABS_TOL must be a positive number");
    }
    return fallback;
}

void emit(const Table& t, const std::string& format, const std::string& output) {
    std::string text;
    if (format == "json")
        text = to_json(t).dump(2) + "\n";
    else
        text = to_csv(t);
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write output file: " + output);
        out << text;
    }
}

PathLossModel parse_pathloss(const std::string& spec) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == sep) {
                out.push_back(cur);
                cur.clear();
            } else
                cur += ch;
        }
        out.push_back(cur);
        return out;
    };
    const auto head = split(spec, ':');
    if (head[0] == "powerlaw") {
        if (head.size() != 2)
            throw std::runtime_error("pathloss: expected powerlaw:ALPHA");
        return PathLossModel::power_law(std::stod(head[1]));
    }
    if (head[0] == "bounded") {
        if (head.size() != 2)
            throw std::runtime_error("pathloss: expected bounded:C0,ALPHA");
        const auto p = split(head[1], ',');
        if (p.size() != 2) throw std::runtime_error("pathloss: expected bounded:C0,ALPHA");
        return PathLossModel::bounded_single_slope(std::stod(p[0]), std::stod(p[1]));
    }
    if (head[0] == "dual") {
        if (head.size() != 2)
            throw std::runtime_error("pathloss: expected dual:C0,R1,ALPHA1,ALPHA2");
        const auto p = split(head[1], ',');
        if (p.size() != 4)
            throw std::runtime_error("pathloss: expected dual:C0,R1,ALPHA1,ALPHA2");
        return PathLossModel::dual_slope(std::stod(p[0]), std::stod(p[1]),
                                         std::stod(p[2]), std::stod(p[3]));
    }
    throw std::runtime_error("pathloss: unknown variant '" + head[0] + "'");
}

DeploymentData load_deployment(const std::string& path, const std::string& coords) {
    PointsCsv pc = read_points_csv_file(path);
    const bool latlon = coords.empty() ? pc.is_latlon : (coords == "latlon");
    if (latlon) return project_latlon(pc.rows);
    std::vector<Point> pts;
    pts.reserve(pc.rows.size());
    for (const auto& [x, y] : pc.rows) pts.push_back({x, y});
    return make_deployment(std::move(pts));
}

CovMethod parse_method(const std::string& m) {
    if (m == "exact") return CovMethod::Exact;
    if (m == "lower") return CovMethod::Lower;
    if (m == "upper") return CovMethod::Upper;
    throw CLI::ValidationError("--method", "must be exact, lower or upper");
}

int run(int argc, char** argv) {
    CLI::App app{"gridppp: lattice-plus-Poisson cellular network model toolkit"};
    app.require_subcommand(1);
    // global options (--format, --output) may appear after the subcommand
    app.fallthrough();

    std::string format = "csv";
    std::string output;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", output, "Output file (default: stdout)");

    // ---- coverage -------------------------------------------------------
    auto* cov = app.add_subcommand(
        "coverage", "Analytic SIR coverage probability curve");
    double rho_lambda = 1.0, eta = 1.0, alpha = 4.0;
    std::string t_db_spec = "-10:20:2";
    std::string method = "exact";
    int window = 0, upper_window = 0, threads = 1;
    cov->add_option("--rho-lambda", rho_lambda, "Intensity ratio lambda_p/lambda_g")
        ->required();
    cov->add_option("--eta", eta, "Power ratio p_p/p_g")->capture_default_str();
    cov->add_option("--alpha", alpha, "Path-loss exponent (> 2)")
        ->capture_default_str();
    cov->add_option("--t-db", t_db_spec,
                    "SIR threshold(s) in dB: value or start:stop:step")
        ->capture_default_str();
    cov->add_option("--method", method, "exact, lower or upper")
        ->capture_default_str();
    cov->add_option("--window", window,
                    "Lattice truncation half-width (0 = default)")
        ->capture_default_str();
    cov->add_option("--upper-window", upper_window,
                    "Spatial product window half-width k for --method upper "
                    "(W = [-(2k+1)s/2,(2k+1)s/2]^2)")
        ->capture_default_str();
    cov->add_option("--threads", threads, "Evaluate thresholds concurrently")
        ->capture_default_str();

    // ---- associate ------------------------------------------------------
    auto* assoc = app.add_subcommand(
        "associate", "Association probability of the typical user");
    double a_rho_lambda = 1.0, a_eta = 1.0, a_alpha = 4.0;
    bool with_bounds = false;
    assoc->add_option("--rho-lambda", a_rho_lambda, "Intensity ratio")->required();
    assoc->add_option("--eta", a_eta, "Power ratio")->capture_default_str();
    assoc->add_option("--alpha", a_alpha, "Path-loss exponent")
        ->capture_default_str();
    assoc->add_flag("--bounds", with_bounds, "Also emit closed-form bounds");

    // ---- ndist ----------------------------------------------------------
    auto* nd = app.add_subcommand(
        "ndist", "Analytic nearest-distance CDF/PDF tables");
    std::string component = "both";
    double nd_s = 1.0, nd_lambda_p = 1.0;
    std::string r_spec;
    nd->add_option("--component", component, "grid, ppp or both")
        ->check(CLI::IsMember({"grid", "ppp", "both"}))
        ->capture_default_str();
    nd->add_option("--s", nd_s, "Lattice pitch")->capture_default_str();
    nd->add_option("--lambda-p", nd_lambda_p, "PPP intensity")
        ->capture_default_str();
    nd->add_option("--r", r_spec, "Radii: value or start:stop:step")->required();

    // ---- simulate -------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimation");
    double s_lambda_g = 1.0, s_lambda_p = 1.0, s_p_g = 1.0, s_p_p = 1.0,
           s_alpha = 4.0;
    std::string s_t_db = "0", s_stat = "coverage", s_pathloss = "";
    std::uint64_t s_trials = 100000, s_seed = 0;
    int s_m = 12, s_threads = 1;
    sim->add_option("--lambda-g", s_lambda_g, "Grid intensity")
        ->capture_default_str();
    sim->add_option("--lambda-p", s_lambda_p, "PPP intensity")
        ->capture_default_str();
    sim->add_option("--p-g", s_p_g, "Grid transmit power")->capture_default_str();
    sim->add_option("--p-p", s_p_p, "PPP transmit power")->capture_default_str();
    sim->add_option("--alpha", s_alpha, "Path-loss exponent")
        ->capture_default_str();
    sim->add_option("--t-db", s_t_db, "SIR threshold(s) in dB")
        ->capture_default_str();
    sim->add_option("--stat", s_stat, "coverage or association")
        ->check(CLI::IsMember({"coverage", "association"}))
        ->capture_default_str();
    sim->add_option("--pathloss", s_pathloss,
                    "powerlaw:A | bounded:C0,A | dual:C0,R1,A1,A2 "
                    "(default powerlaw with --alpha)");
    sim->add_option("--trials", s_trials, "Trial count")->capture_default_str();
    sim->add_option("--seed", s_seed, "Master seed")->capture_default_str();
    sim->add_option("--m", s_m, "Torus window size (m s x m s)")
        ->capture_default_str();
    sim->add_option("--threads", s_threads, "Worker threads")
        ->capture_default_str();

    // ---- sample ---------------------------------------------------------
    auto* smp = app.add_subcommand(
        "sample", "Dump one labeled realization as x,y,label");
    double sm_lambda_g = 1.0, sm_lambda_p = 1.0;
    std::uint64_t sm_seed = 0;
    int sm_m = 12;
    smp->add_option("--lambda-g", sm_lambda_g, "Grid intensity")
        ->capture_default_str();
    smp->add_option("--lambda-p", sm_lambda_p, "PPP intensity")
        ->capture_default_str();
    smp->add_option("--m", sm_m, "Torus window size")->capture_default_str();
    smp->add_option("--seed", sm_seed, "Seed")->capture_default_str();

    // ---- paircorr -------------------------------------------------------
    auto* pc = app.add_subcommand(
        "paircorr", "Pair-correlation estimate of a deployment file");
    std::string pc_input, pc_coords = "";
    double pc_bandwidth = 0.0;
    pc->add_option("--input", pc_input, "CSV with header x,y or lat,lon")
        ->required();
    pc->add_option("--coords", pc_coords, "planar or latlon (default: by header)")
        ->check(CLI::IsMember({"planar", "latlon"}));
    pc->add_option("--bandwidth", pc_bandwidth,
                   "Kernel bandwidth (0 = rule of thumb)");

    // ---- fit ------------------------------------------------------------
    auto* fit = app.add_subcommand(
        "fit", "Fit the model to a deployment and optionally predict coverage");
    std::string f_input, f_coords = "", f_t_db = "-10:20:2";
    double f_alpha = 4.0, f_eta = 1.0;
    bool f_predict = false;
    fit->add_option("--input", f_input, "CSV with header x,y or lat,lon")
        ->required();
    fit->add_option("--coords", f_coords, "planar or latlon (default: by header)")
        ->check(CLI::IsMember({"planar", "latlon"}));
    fit->add_option("--alpha", f_alpha, "Path-loss exponent for prediction")
        ->capture_default_str();
    fit->add_option("--eta", f_eta, "Power ratio for prediction")
        ->capture_default_str();
    fit->add_flag("--predict-coverage", f_predict,
                  "Append the fitted model's coverage curve");
    fit->add_option("--t-db", f_t_db, "Prediction threshold grid in dB")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help or the one-line diagnostic
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    const double abs_tol = env_abs_tol(1e-9);

    if (cov->parsed()) {
        CoverageQuery proto(rho_lambda, eta, alpha, SirThreshold(1.0));
        proto.win.n = window;
        proto.quad.abs_tol = env_abs_tol(proto.quad.abs_tol);
        proto.quad.rel_tol = proto.quad.abs_tol;
        const auto grid = parse_range(t_db_spec);
        const auto rows = coverage_curve(proto, grid, parse_method(method),
                                         upper_window, threads);
        Table t;
        t.columns = {"t_db", "p_cov", "method", "err_bound"};
        for (const auto& row : rows)
            t.add_row({row.t_db, row.result.p_cov,
                       std::string(to_string(row.result.method)),
                       row.result.error_bound});
        emit(t, format, output);
        return 0;
    }

    if (assoc->parsed()) {
        QuadratureSpec spec;
        spec.abs_tol = abs_tol;
        spec.rel_tol = abs_tol;
        const auto res = assoc_exact(a_rho_lambda, a_eta, a_alpha, spec);
        const double rho = a_rho_lambda * std::pow(a_eta, 2.0 / a_alpha);
        Table t;
        t.columns = {"rho_lambda", "eta", "alpha", "rho",
                     "p_assoc_ppp", "p_assoc_grid"};
        std::vector<Table::Cell> row{a_rho_lambda, a_eta, a_alpha, rho,
                                     res.p_assoc_ppp, res.p_assoc_grid};
        if (with_bounds) {
            const auto b = assoc_bounds(rho);
            t.columns.push_back("lower");
            t.columns.push_back("upper");
            row.emplace_back(b.lower);
            row.emplace_back(b.upper);
        }
        t.add_row(std::move(row));
        emit(t, format, output);
        return 0;
    }

    if (nd->parsed()) {
        const auto rs = parse_range(r_spec);
        Table t;
        const bool has_pdf = component != "both";
        t.columns = has_pdf ? std::vector<std::string>{"r", "cdf", "pdf"}
                            : std::vector<std::string>{"r", "cdf"};
        for (double r : rs) {
            if (component == "grid")
                t.add_row({r, grid_nearest_cdf(r, nd_s), grid_nearest_pdf(r, nd_s)});
            else if (component == "ppp")
                t.add_row({r, ppp_nearest_cdf(r, nd_lambda_p),
                           ppp_nearest_pdf(r, nd_lambda_p)});
            else
                t.add_row({r, superposition_nearest_cdf(r, nd_s, nd_lambda_p)});
        }
        emit(t, format, output);
        return 0;
    }

    if (sim->parsed()) {
        ModelConfig cfg(s_lambda_g, s_lambda_p, s_p_g, s_p_p, s_alpha);
        McOptions opts;
        opts.window.m = s_m;
        opts.seed = s_seed;
        opts.threads = s_threads;
        Table t;
        if (s_stat == "coverage") {
            const PathLossModel pl = s_pathloss.empty()
                                         ? PathLossModel::power_law(s_alpha)
                                         : parse_pathloss(s_pathloss);
            const auto grid = parse_range(s_t_db);
            std::vector<double> lin;
            for (double db : grid)
                lin.push_back(SirThreshold::from_db(db).t_linear);
            const auto ests = estimate_coverage_curve(cfg, pl, lin, s_trials, opts);
            t.columns = {"t_db", "p_cov", "ci95_lo", "ci95_hi",
                         "trials", "seed", "method"};
            for (std::size_t i = 0; i < grid.size(); ++i)
                t.add_row({grid[i], ests[i].value, ests[i].ci_lo, ests[i].ci_hi,
                           static_cast<long long>(ests[i].trials),
                           static_cast<long long>(ests[i].seed),
                           std::string("mc")});
        } else {
            const auto est = estimate_association(cfg, s_trials, opts);
            t.columns = {"p_assoc_ppp", "ci95_lo", "ci95_hi",
                         "trials", "seed", "method"};
            t.add_row({est.value, est.ci_lo, est.ci_hi,
                       static_cast<long long>(est.trials),
                       static_cast<long long>(est.seed), std::string("mc")});
        }
        emit(t, format, output);
        return 0;
    }

    if (smp->parsed()) {
        ModelConfig cfg(sm_lambda_g, sm_lambda_p, 1.0, 1.0, 4.0);
        RngStream rng(sm_seed, 0);
        SimWindow w{sm_m};
        const auto ps = sample_superposition(cfg, w, rng);
        Table t;
        t.columns = {"x", "y", "label"};
        for (std::size_t i = 0; i < ps.points.size(); ++i)
            t.add_row({ps.points[i].x, ps.points[i].y,
                       std::string(ps.labels[i] == PointLabel::Grid ? "grid"
                                                                    : "ppp")});
        emit(t, format, output);
        return 0;
    }

    if (pc->parsed()) {
        const auto data = load_deployment(pc_input, pc_coords);
        const auto est = estimate_pcf(
            data, pc_bandwidth > 0.0 ? std::optional<double>(pc_bandwidth)
                                     : std::nullopt);
        Table t;
        t.columns = {"r", "g_hat", "kappa_avg", "lambda_hat", "bandwidth"};
        for (std::size_t i = 0; i < est.r_grid.size(); ++i)
            t.add_row({est.r_grid[i], est.g_hat[i], est.kappa_avg,
                       est.lambda_hat, est.bandwidth});
        emit(t, format, output);
        return 0;
    }

    if (fit->parsed()) {
        const auto data = load_deployment(f_input, f_coords);
        const auto fm = fit_model(data);
        nlohmann::json doc;
        doc["n_points"] = data.points.size();
        doc["kappa_avg"] = fm.kappa_avg;
        doc["kappa_clamped"] = fm.kappa_clamped;
        doc["rho_lambda_hat"] = fm.rho_lambda_hat;
        doc["lambda_hat"] = fm.lambda_hat;
        doc["lambda_g_hat"] = fm.lambda_g_hat;
        doc["lambda_p_hat"] = fm.lambda_p_hat;
        doc["bandwidth"] = fm.pcf.bandwidth;
        if (f_predict) {
            CoverageQuery proto(fm.rho_lambda_hat, f_eta, f_alpha,
                                SirThreshold(1.0));
            const auto grid = parse_range(f_t_db);
            const auto rows = coverage_curve(proto, grid);
            nlohmann::json curve = nlohmann::json::array();
            for (const auto& row : rows)
                curve.push_back({{"t_db", row.t_db},
                                 {"p_cov", row.result.p_cov},
                                 {"err_bound", row.result.error_bound}});
            doc["coverage"] = std::move(curve);
        }
        if (format == "csv" && !f_predict) {
            Table t;
            t.columns = {"n_points", "kappa_avg", "rho_lambda_hat",
                         "lambda_hat", "lambda_g_hat", "lambda_p_hat",
                         "bandwidth"};
            t.add_row({static_cast<long long>(data.points.size()), fm.kappa_avg,
                       fm.rho_lambda_hat, fm.lambda_hat, fm.lambda_g_hat,
                       fm.lambda_p_hat, fm.pcf.bandwidth});
            emit(t, "csv", output);
        } else {
            const std::string text = doc.dump(2) + "\n";
            if (output.empty() || output == "-") {
                std::cout << text;
            } else {
                std::ofstream out(output, std::ios::binary);
                if (!out)
                    throw std::runtime_error("cannot write output file: " + output);
                out << text;
            }
        }
        return 0;
    }

    return 2;  // unreachable: require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "gridppp: error: " << e.what() << "\n";
        return 1;
    }
}
