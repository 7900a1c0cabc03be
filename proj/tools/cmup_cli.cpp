// Command-line front end: solving, sweeping, Airy evaluation, invariant
// checks, and figure-data emission with CSV/JSON schemas and a manifest.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmup/airy_approx.hpp"
#include "cmup/checks.hpp"
#include "cmup/config.hpp"
#include "cmup/dataset.hpp"
#include "cmup/numerics.hpp"
#include "cmup/oracle.hpp"
#include "cmup/solver.hpp"
#include "cmup/version.hpp"

namespace {

namespace io = cmup::io;
namespace airy = cmup::airyapprox;
using cmup::numerics::pi;

// Argument problems CLI11 cannot express; reported as usage errors (exit 2).
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string joined_command(int argc, char** argv) {
    std::string cmd = "cmup"; // normalized program name for reproducibility
    for (int i = 1; i < argc; ++i) {
        cmd += ' ';
        cmd += argv[i];
    }
    return cmd;
}

cmup::ToleranceConfig resolve_config(const std::string& config_path) {
    if (!config_path.empty()) return cmup::load_tolerance_config(config_path);
    return cmup::tolerance_config_from_env();
}

void write_wavefunction_csv(const std::string& path, int grid,
                            const std::function<double(double)>& psi) {
    io::CsvTable t({"phi", "psi"});
    for (int i = 0; i < grid; ++i) {
        const double phi = -pi + 2.0 * pi * i / (grid - 1);
        t.add_row({io::cell(phi), io::cell(psi(phi))});
    }
    io::write_text_file(path, t.render());
}

io::json summary_json(const cmup::CmupState& st) {
    io::json j;
    j["a"] = st.problem.a;
    j["regime"] = cmup::regime_name(st.problem.regime);
    j["x0"] = st.x0;
    j["lambda"] = st.lambda;
    j["mu"] = st.mu;
    j["delta_phi"] = st.delta_phi();
    j["delta_lz"] = st.delta_lz();
    j["product"] = st.product;
    j["bound"] = st.bound;
    j["p_boundary"] = st.p_boundary;
    return j;
}

struct SolveArgs {
    double a = 0.0;
    std::string regime;
    double delta_phi = 0.0;
    bool has_target = false;
    double tol = 1e-6;
    int grid = 721;
    std::string output = "solve";
};

int run_solve(const SolveArgs& args, const cmup::ToleranceConfig& cfg,
              const std::string& command_line) {
    const cmup::CmupState st =
        args.has_target
            ? cmup::solve_for_delta_phi(args.delta_phi, args.tol, cfg)
            : cmup::build_state(cmup::regime_from_name(args.regime), args.a, cfg);

    write_wavefunction_csv(args.output + "_wavefunction.csv", args.grid,
                           [&](double phi) { return cmup::wavefunction_phi(st, phi); });
    const io::json summary = summary_json(st);
    io::write_text_file(args.output + "_summary.json", summary.dump(2) + "\n");
    io::write_manifest(args.output + "_manifest.json",
                       io::make_manifest(command_line, cfg));

    std::cout << summary.dump(2) << "\n";
    std::cerr << "wrote " << args.output << "_wavefunction.csv, " << args.output
              << "_summary.json, " << args.output << "_manifest.json\n";
    return 0;
}

struct SweepArgs {
    double c_lo = 0.0;
    double c_hi = 0.0;
    int points = 0;
    std::string format = "csv";
    std::string output = "sweep";
};

int run_sweep(const SweepArgs& args, const cmup::ToleranceConfig& cfg,
              const std::string& command_line) {
    const auto rows = cmup::sweep(args.c_lo, args.c_hi, args.points, cfg);
    std::size_t ok = 0;
    for (const auto& r : rows) ok += r.status == "ok";

    std::string data_path;
    if (args.format == "csv") {
        data_path = args.output + ".csv";
        io::CsvTable t({"control", "a", "regime", "x0", "lambda", "mu",
                        "mu_over_lambda", "delta_phi", "delta_lz", "product",
                        "bound", "status"});
        for (const auto& r : rows)
            t.add_row({io::cell(r.control), io::cell(r.a),
                       cmup::regime_name(r.regime), io::cell(r.x0),
                       io::cell(r.lambda), io::cell(r.mu),
                       io::cell(r.mu_over_lambda), io::cell(r.delta_phi),
                       io::cell(r.delta_lz), io::cell(r.product),
                       io::cell(r.bound), r.status});
        io::write_text_file(data_path, t.render());
    } else {
        data_path = args.output + ".json";
        io::json arr = io::json::array();
        for (const auto& r : rows) {
            io::json j;
            j["control"] = r.control;
            j["a"] = r.a;
            j["regime"] = cmup::regime_name(r.regime);
            j["x0"] = r.x0;
            j["lambda"] = r.lambda;
            j["mu"] = r.mu;
            j["mu_over_lambda"] = r.mu_over_lambda;
            j["delta_phi"] = r.delta_phi;
            j["delta_lz"] = r.delta_lz;
            j["product"] = r.product;
            j["bound"] = r.bound;
            j["status"] = r.status;
            arr.push_back(std::move(j));
        }
        io::write_text_file(data_path, arr.dump(2) + "\n");
    }
    io::write_manifest(args.output + "_manifest.json",
                       io::make_manifest(command_line, cfg));

    std::cout << "wrote " << data_path << ": " << rows.size() << " rows, " << ok
              << " ok\n";
    return 10 * ok >= 9 * rows.size() ? 0 : 4;
}

struct AiryArgs {
    double lambda = 0.0;
    bool has_single = false;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    int points = 0;
    bool has_range = false;
    bool log_spacing = false;
    bool emit_wavefunction = false;
    int grid = 721;
    std::string output = "airy";
};

int run_airy(const AiryArgs& args, const cmup::ToleranceConfig& cfg,
             const std::string& command_line) {
    std::vector<double> lambdas;
    if (args.has_single) {
        lambdas.push_back(args.lambda);
    } else {
        if (!(args.lambda_lo < args.lambda_hi))
            throw usage_error("airy: needs --lambda-lo < --lambda-hi");
        if (args.points < 2) throw usage_error("airy: needs --points >= 2");
        for (int i = 0; i < args.points; ++i) {
            if (i == 0) {
                lambdas.push_back(args.lambda_lo);
                continue;
            }
            if (i == args.points - 1) {
                lambdas.push_back(args.lambda_hi);
                continue;
            }
            const double f = static_cast<double>(i) / (args.points - 1);
            lambdas.push_back(
                args.log_spacing
                    ? std::exp(std::log(args.lambda_lo) +
                               f * (std::log(args.lambda_hi) - std::log(args.lambda_lo)))
                    : args.lambda_lo + f * (args.lambda_hi - args.lambda_lo));
        }
    }

    // Compute every row before writing anything, so a below-threshold lambda
    // aborts with the library's message (naming the threshold) and no files.
    std::vector<airy::AiryProduct> products;
    products.reserve(lambdas.size());
    for (const double lam : lambdas)
        products.push_back(airy::airy_uncertainty_product(lam));

    io::CsvTable t({"lambda", "ratio_sqrt_exact", "ratio_sqrt_approx", "c_norm",
                    "delta_phi", "delta_lz", "product", "bound"});
    for (std::size_t i = 0; i < products.size(); ++i) {
        const auto& p = products[i];
        t.add_row({io::cell(lambdas[i]), io::cell(p.ratio_sqrt),
                   io::cell(airy::ratio_from_lambda_approx(lambdas[i])),
                   io::cell(p.c_norm), io::cell(p.delta_phi),
                   io::cell(std::sqrt(p.lz_variance)), io::cell(p.product),
                   io::cell(p.bound)});
    }
    io::write_text_file(args.output + ".csv", t.render());

    if (args.emit_wavefunction) {
        const airy::AiryState st = airy::make_airy_state(lambdas.front());
        write_wavefunction_csv(
            args.output + "_wavefunction.csv", args.grid,
            [&](double phi) { return airy::airy_wavefunction(st, phi); });
    }
    io::write_manifest(args.output + "_manifest.json",
                       io::make_manifest(command_line, cfg));

    std::cout << "wrote " << args.output << ".csv: " << products.size()
              << " rows\n";
    return 0;
}

int run_check(bool quick, double perturb_a1p, const cmup::ToleranceConfig& cfg) {
    cmup::checks::CheckOptions opt;
    opt.quick = quick;
    opt.a1p_perturbation = perturb_a1p;
    const auto results = cmup::checks::run_checks(cfg, opt);

    std::size_t passed = 0;
    std::string failed_names;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " — "
                  << r.detail << "\n";
        if (r.pass) {
            ++passed;
        } else {
            if (!failed_names.empty()) failed_names += ", ";
            failed_names += r.name;
        }
    }
    std::cout << passed << "/" << results.size() << " checks passed\n";
    if (passed == results.size()) return 0;
    std::cout << "FAILED: " << failed_names << "\n";
    return 1;
}

// --- figure datasets ---

std::string dphi_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", t);
    std::string s = buf;
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

void figure_fig1(const std::string& prefix, const cmup::ToleranceConfig& cfg) {
    const std::vector<double> targets = {1.0, 1.5, 2.5, 3.0};
    std::vector<cmup::CmupState> states;
    for (const double t : targets)
        states.push_back(cmup::solve_for_delta_phi(t, 1e-8, cfg));
    const cmup::CmupState flat = cmup::build_state(cmup::Regime::flat, 0.0, cfg);

    std::vector<std::string> header = {"phi"};
    header.push_back("psi_dphi_" + dphi_label(targets[0]));
    header.push_back("psi_dphi_" + dphi_label(targets[1]));
    header.push_back("psi_flat");
    header.push_back("psi_dphi_" + dphi_label(targets[2]));
    header.push_back("psi_dphi_" + dphi_label(targets[3]));
    io::CsvTable t(header);
    const int grid = 721;
    for (int i = 0; i < grid; ++i) {
        const double phi = -pi + 2.0 * pi * i / (grid - 1);
        t.add_row({io::cell(phi),
                   io::cell(cmup::wavefunction_phi(states[0], phi)),
                   io::cell(cmup::wavefunction_phi(states[1], phi)),
                   io::cell(cmup::wavefunction_phi(flat, phi)),
                   io::cell(cmup::wavefunction_phi(states[2], phi)),
                   io::cell(cmup::wavefunction_phi(states[3], phi))});
    }
    io::write_text_file(prefix + ".csv", t.render());
}

void figure_fig2(const std::string& prefix, const cmup::ToleranceConfig& cfg) {
    io::CsvTable t({"delta_phi", "mu_over_lambda", "source"});
    const int n_num = 49;
    for (int i = 0; i < n_num; ++i) {
        const double target = 0.6 + (3.0 - 0.6) * i / (n_num - 1);
        const cmup::CmupState st = cmup::solve_for_delta_phi(target, 1e-8, cfg);
        const double ratio = st.problem.regime == cmup::Regime::flat
                                 ? pi * pi / 3.0
                                 : st.mu / st.lambda;
        t.add_row({io::cell(st.delta_phi()), io::cell(ratio), "numeric"});
    }
    // The approximation's rows cover only lambdas above its validity
    // threshold, where the boundary condition has a solution.
    const double lo = 1.2 * airy::validity_threshold_lambda();
    const int n_airy = 41;
    for (int i = 0; i < n_airy; ++i) {
        const double lam = std::exp(std::log(lo) +
                                    (std::log(1e4) - std::log(lo)) * i / (n_airy - 1));
        const airy::AiryState st = airy::make_airy_state(lam);
        t.add_row({io::cell(std::sqrt(st.phi_variance)),
                   io::cell(st.mu_mag / st.lambda_mag), "airy"});
    }
    io::write_text_file(prefix + ".csv", t.render());
}

void add_sweep_style_row(io::CsvTable& t, const cmup::CmupState& st) {
    const double control = st.problem.regime == cmup::Regime::small
                               ? -st.problem.a
                               : st.problem.a;
    const double ratio = st.problem.regime == cmup::Regime::flat
                             ? pi * pi / 3.0
                             : st.mu / st.lambda;
    t.add_row({io::cell(control), io::cell(st.problem.a),
               cmup::regime_name(st.problem.regime), io::cell(st.x0),
               io::cell(st.lambda), io::cell(st.mu), io::cell(ratio),
               io::cell(st.delta_phi()), io::cell(st.delta_lz()),
               io::cell(st.product), io::cell(st.bound), "ok"});
}

io::CsvTable sweep_style_table() {
    return io::CsvTable({"control", "a", "regime", "x0", "lambda", "mu",
                         "mu_over_lambda", "delta_phi", "delta_lz", "product",
                         "bound", "status"});
}

void figure_fig3(const std::string& prefix, const cmup::ToleranceConfig& cfg) {
    std::vector<double> targets;
    const int n = 61;
    for (int i = 0; i < n; ++i) targets.push_back(0.6 + (3.0 - 0.6) * i / (n - 1));
    targets.push_back(pi / std::sqrt(3.0)); // the exact dividing point
    std::sort(targets.begin(), targets.end());

    io::CsvTable t = sweep_style_table();
    for (const double target : targets)
        add_sweep_style_row(t, cmup::solve_for_delta_phi(target, 1e-8, cfg));
    io::write_text_file(prefix + ".csv", t.render());
}

void figure_fig5(const std::string& prefix, const cmup::ToleranceConfig& cfg) {
    const double flat_point = pi / std::sqrt(3.0);
    io::CsvTable t = sweep_style_table();
    const int n = 41;
    for (int i = 0; i < n; ++i) {
        const double target = 0.55 + (flat_point - 0.55) * i / (n - 1);
        add_sweep_style_row(t, cmup::solve_for_delta_phi(target, 1e-8, cfg));
    }
    io::write_text_file(prefix + ".csv", t.render());
}

void figure_fig6(const std::string& prefix, const cmup::ToleranceConfig& cfg) {
    io::CsvTable t({"delta_phi_target", "phi", "psi_numeric", "psi_airy"});
    for (const double target : {2.8, 2.9, 3.0}) {
        const cmup::CmupState num = cmup::solve_for_delta_phi(target, 1e-8, cfg);
        const airy::AiryState approx =
            airy::make_airy_state(std::abs(num.lambda));
        const int grid = 241; // [0, pi]; both profiles are even
        for (int i = 0; i < grid; ++i) {
            const double phi = pi * i / (grid - 1);
            t.add_row({io::cell(target), io::cell(phi),
                       io::cell(cmup::wavefunction_phi(num, phi)),
                       io::cell(airy::airy_wavefunction(approx, phi))});
        }
    }
    io::write_text_file(prefix + ".csv", t.render());
}

void figure_fig7(const std::string& prefix, const cmup::ToleranceConfig& cfg) {
    io::CsvTable t({"source", "delta_phi", "product"});
    // Numeric rows stop where the branch does: at the configured a ceiling.
    const cmup::CmupState edge =
        cmup::build_state(cmup::Regime::large, cfg.a_max, cfg);
    const double t_max = edge.delta_phi();
    const int n_num = 26;
    for (int i = 0; i < n_num - 1; ++i) {
        const double target = 2.0 + (t_max - 2.0) * i / (n_num - 1);
        const cmup::CmupState st = cmup::solve_for_delta_phi(target, 1e-8, cfg);
        t.add_row({"numeric", io::cell(st.delta_phi()), io::cell(st.product)});
    }
    t.add_row({"numeric", io::cell(t_max), io::cell(edge.product)});
    // The approximation continues past the ceiling toward delta_phi -> pi.
    const int n_airy = 49;
    for (int i = 0; i < n_airy; ++i) {
        const double lam =
            std::exp(std::log(1.0) + (std::log(1e6) - std::log(1.0)) * i / (n_airy - 1));
        const airy::AiryProduct p = airy::airy_uncertainty_product(lam);
        t.add_row({"airy", io::cell(p.delta_phi), io::cell(p.product)});
    }
    io::write_text_file(prefix + ".csv", t.render());
}

int run_figure(const std::string& id, std::string output,
               const cmup::ToleranceConfig& cfg, const std::string& command_line) {
    const std::vector<std::string> valid = {"fig1", "fig2", "fig3",
                                            "fig5", "fig6", "fig7"};
    if (std::find(valid.begin(), valid.end(), id) == valid.end()) {
        std::string msg =
            id == "fig4"
                ? "fig4 is intentionally absent (its remaining curves need "
                  "data outside this library's scope)"
                : "unknown figure id '" + id + "'";
        msg += "; valid ids: fig1, fig2, fig3, fig5, fig6, fig7";
        throw usage_error(msg);
    }
    if (output.empty()) output = id;

    std::vector<std::string> notes;
    if (id == "fig3" || id == "fig5")
        notes.push_back("CMUP curves only; the figure's intelligent-state "
                        "overlays are out of scope");

    if (id == "fig1") figure_fig1(output, cfg);
    else if (id == "fig2") figure_fig2(output, cfg);
    else if (id == "fig3") figure_fig3(output, cfg);
    else if (id == "fig5") figure_fig5(output, cfg);
    else if (id == "fig6") figure_fig6(output, cfg);
    else figure_fig7(output, cfg);

    io::write_manifest(output + "_manifest.json",
                       io::make_manifest(command_line, cfg, notes));
    std::cout << "wrote " << output << ".csv and " << output
              << "_manifest.json\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained minimum uncertainty product (CMUP) states of "
                 "the angle/angular-momentum pair"};
    app.set_version_flag("--version", std::string(cmup::artifact_version));
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "tolerance config file (key = value lines); also read from $" +
                       std::string(cmup::tolerance_config_env_var));

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "solve one CMUP state and write wavefunction + summary");
    auto* opt_a = solve->add_option("--a", solve_args.a,
                                    "scaled eigenvalue magnitude a = |mu| / (2 sqrt(|lambda|))");
    auto* opt_regime =
        solve->add_option("--regime", solve_args.regime, "flat, small, or large")
            ->check(CLI::IsMember({"flat", "small", "large"}));
    auto* opt_target = solve->add_option("--delta-phi", solve_args.delta_phi,
                                         "solve for this angle uncertainty instead");
    opt_a->needs(opt_regime);
    opt_regime->needs(opt_a);
    opt_target->excludes(opt_a)->excludes(opt_regime);
    solve->add_option("--tol", solve_args.tol, "delta-phi match tolerance")
        ->check(CLI::PositiveNumber);
    solve->add_option("--grid", solve_args.grid, "wavefunction sample count")
        ->check(CLI::Range(2, 1000000));
    solve->add_option("--output", solve_args.output, "output file prefix");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "sweep the control parameter across both branches");
    sweep->add_option("--c-lo", sweep_args.c_lo, "control lower end")->required();
    sweep->add_option("--c-hi", sweep_args.c_hi, "control upper end")->required();
    sweep->add_option("--points", sweep_args.points, "row count")->required();
    sweep->add_option("--format", sweep_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--output", sweep_args.output, "output file prefix");

    AiryArgs airy_args;
    CLI::App* airy_cmd = app.add_subcommand(
        "airy", "evaluate the boundary-condition approximation");
    auto* opt_lambda =
        airy_cmd->add_option("--lambda", airy_args.lambda, "single |lambda|");
    auto* opt_llo =
        airy_cmd->add_option("--lambda-lo", airy_args.lambda_lo, "sweep start");
    auto* opt_lhi =
        airy_cmd->add_option("--lambda-hi", airy_args.lambda_hi, "sweep end");
    auto* opt_lpts =
        airy_cmd->add_option("--points", airy_args.points, "sweep row count");
    airy_cmd->add_flag("--log", airy_args.log_spacing,
                       "logarithmic lambda spacing");
    auto* opt_emit = airy_cmd->add_flag("--emit-wavefunction",
                                        airy_args.emit_wavefunction,
                                        "also write the wavefunction grid");
    airy_cmd->add_option("--grid", airy_args.grid, "wavefunction sample count")
        ->check(CLI::Range(2, 1000000));
    airy_cmd->add_option("--output", airy_args.output, "output file prefix");
    opt_lambda->excludes(opt_llo)->excludes(opt_lhi)->excludes(opt_lpts);
    opt_llo->needs(opt_lhi)->needs(opt_lpts);
    opt_lhi->needs(opt_llo);
    opt_lpts->needs(opt_llo);
    opt_emit->needs(opt_lambda);

    bool check_quick = false;
    double perturb_a1p = 0.0;
    CLI::App* check = app.add_subcommand(
        "check", "run the invariant and oracle-equivalence suite");
    check->add_flag("--quick", check_quick, "trimmed grids, under 10 seconds");
    check->add_option("--perturb-a1p", perturb_a1p,
                      "test-only hook: offset the |a1'| reference");

    std::string figure_id;
    std::string figure_output;
    CLI::App* figure = app.add_subcommand(
        "figure", "emit the dataset bundle for one figure");
    figure->add_option("--id", figure_id, "fig1, fig2, fig3, fig5, fig6, or fig7")
        ->required();
    figure->add_option("--output", figure_output,
                       "output file prefix (default: the id)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command_line = joined_command(argc, argv);
    try {
        const cmup::ToleranceConfig cfg = resolve_config(config_path);
        if (solve->parsed()) {
            solve_args.has_target = opt_target->count() > 0;
            if (!solve_args.has_target && opt_a->count() == 0)
                throw usage_error(
                    "solve: needs either --a with --regime, or --delta-phi");
            return run_solve(solve_args, cfg, command_line);
        }
        if (sweep->parsed()) return run_sweep(sweep_args, cfg, command_line);
        if (airy_cmd->parsed()) {
            airy_args.has_single = opt_lambda->count() > 0;
            airy_args.has_range = opt_llo->count() > 0;
            if (!airy_args.has_single && !airy_args.has_range)
                throw usage_error(
                    "airy: needs either --lambda, or --lambda-lo with "
                    "--lambda-hi and --points");
            return run_airy(airy_args, cfg, command_line);
        }
        if (check->parsed()) return run_check(check_quick, perturb_a1p, cfg);
        if (figure->parsed())
            return run_figure(figure_id, figure_output, cfg, command_line);
        std::cerr << app.help();
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cmup::range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cmup::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cmup::search_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
