#include "medest/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "medest/enumeration.hpp"
#include "medest/errors.hpp"
#include "medest/estimators.hpp"
#include "medest/montecarlo.hpp"
#include "medest/population.hpp"
#include "medest/report.hpp"
#include "medest/theory.hpp"

namespace medest {

namespace {

struct TableOpts {
    std::string format = "text";
    int precision = -1;  // -1 keeps each table's own default
};

void emit(ReportTable table, const TableOpts& opts, std::ostream& out) {
    if (opts.precision >= 0) table.precision = opts.precision;
    if (opts.format == "csv") {
        format_csv(table, out);
    } else if (opts.format == "json") {
        format_json(table, out);
    } else {
        format_text(table, out);
        out << '\n';
    }
}

// "all" or a comma list of catalog names, with "qA-qB" ranges ("q2-q5").
std::vector<PresetId> parse_preset_list(const std::string& text) {
    std::vector<PresetId> out;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        if (token == "all") {
            out.assign(std::begin(kAllPresets), std::end(kAllPresets));
            continue;
        }
        const auto dash = token.find('-');
        if (dash != std::string::npos) {
            const auto lo = preset_from_name(token.substr(0, dash));
            const auto hi = preset_from_name(token.substr(dash + 1));
            if (!lo || !hi || static_cast<int>(*lo) > static_cast<int>(*hi)) {
                throw CLI::ValidationError("--estimators",
                                           "bad range '" + token + "'");
            }
            for (int i = static_cast<int>(*lo); i <= static_cast<int>(*hi);
                 ++i) {
                out.push_back(static_cast<PresetId>(i));
            }
            continue;
        }
        const auto id = preset_from_name(token);
        if (!id) {
            throw CLI::ValidationError(
                "--estimators", "unknown estimator '" + token +
                                    "' (expected q1..q10, a range, or 'all')");
        }
        out.push_back(*id);
    }
    if (out.empty()) {
        throw CLI::ValidationError("--estimators", "empty estimator list");
    }
    return out;
}

std::vector<EstimatorSpec> load_spec_files(
    const std::vector<std::string>& paths) {
    std::vector<EstimatorSpec> out;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) {
            throw parse_error("cannot open estimator spec: " + path);
        }
        try {
            out.push_back(parse_estimator_spec(in));
        } catch (const parse_error& err) {
            throw parse_error(path + ": " + err.what());
        }
    }
    return out;
}

// Parameter sets for table commands: either a saved table or populations
// enumerated on the spot.
struct SetSource {
    std::string params_path;
    std::vector<std::string> population_paths;
    std::vector<int> sizes;
    int workers = 1;

    void attach(CLI::App* cmd, bool params_only) {
        auto* params = cmd->add_option(
            "--params", params_path,
            "parameter table CSV (as written by analyze --dump-params)");
        params->check(CLI::ExistingFile);
        if (!params_only) {
            auto* pops = cmd->add_option("--population", population_paths,
                                         "population CSV (y,x per row); "
                                         "repeatable");
            pops->check(CLI::ExistingFile);
            auto* sizes_opt =
                cmd->add_option("--n", sizes, "sample sizes, e.g. --n 3,5")
                    ->delimiter(',');
            cmd->add_option("--workers", workers,
                            "enumeration threads")
                ->check(CLI::Range(1, 256));
            pops->needs(sizes_opt);
            params->excludes(pops);
        }
    }

    std::vector<ParameterSet> gather() const {
        if (!params_path.empty()) {
            return load_parameter_file(params_path);
        }
        if (population_paths.empty()) {
            throw CLI::RequiredError(
                "--params or --population/--n");
        }
        std::vector<Population> pops;
        pops.reserve(population_paths.size());
        for (const auto& path : population_paths) {
            pops.push_back(load_population_file(path));
        }
        return compute_parameter_sets(pops, sizes, workers);
    }
};

double mbar_anchor(const Population& pop, int n, int workers) {
    // Analytic order-statistic route when it applies (odd n, distinct y),
    // full enumeration otherwise.
    try {
        return median_distribution_fast(pop, n).mean_m;
    } catch (const std::domain_error&) {
        return exact_sampling_distribution(pop, n, workers).mean_m;
    }
}

int run_analyze(const SetSource& source, const TableOpts& table_opts,
                const std::vector<PresetId>& presets,
                const std::vector<std::string>& spec_paths,
                const std::string& mode, std::uint64_t reps,
                std::uint64_t seed, const std::string& dump_path) {
    std::vector<Population> pops;
    pops.reserve(source.population_paths.size());
    for (const auto& path : source.population_paths) {
        pops.push_back(load_population_file(path));
    }
    const auto sets =
        compute_parameter_sets(pops, source.sizes, source.workers);

    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) {
            throw parse_error("cannot write parameter table: " + dump_path);
        }
        write_parameter_csv(sets, out);
    }

    emit(table_parameters(sets), table_opts, std::cout);

    // Optimum weight slope, the attainable MSE floor, and the classical
    // ratio estimator for reference; k is quoted for the neutral transform
    // (nu = 1), where the slope and k coincide.
    ReportTable optimum;
    optimum.title = "Optimum and classical ratio reference";
    optimum.row_header = "quantity";
    optimum.precision = 6;
    for (const auto& set : sets) optimum.col_labels.push_back(set.name);
    const auto add_row = [&](const char* label, auto fn) {
        optimum.row_labels.emplace_back(label);
        auto& row = optimum.cells.emplace_back();
        for (const auto& set : sets) row.push_back(fn(set.moments()));
    };
    add_row("k_opt", [](const RelativeMoments& m) { return k_opt(m, 1.0); });
    add_row("min_mse", [](const RelativeMoments& m) { return min_mse(m); });
    add_row("corr_ym", [](const RelativeMoments& m) { return corr_ym(m); });
    add_row("bias_ratio",
            [](const RelativeMoments& m) { return bias_classical_ratio(m); });
    add_row("mse_ratio",
            [](const RelativeMoments& m) { return mse_classical_ratio(m); });
    emit(std::move(optimum), table_opts, std::cout);

    const auto customs = load_spec_files(spec_paths);

    std::size_t set_index = 0;
    for (std::size_t p = 0; p < pops.size(); ++p) {
        for (int n : source.sizes) {
            const ParameterSet& set = sets[set_index++];
            const RelativeMoments mom = set.moments();

            std::vector<EstimatorSpec> specs;
            for (PresetId id : presets) {
                specs.push_back(preset(id, set.beta1, set.rho_xy));
            }
            specs.insert(specs.end(), customs.begin(), customs.end());

            ReportTable detail;
            detail.title = "Estimators on " + set.name +
                           (mode == "mc" ? " (simulated MSE)"
                                         : " (exact MSE)");
            detail.row_header = "estimator";
            detail.precision = 6;
            detail.col_labels = {"bias_fo", "mse_fo", "mse_" + mode,
                                 "mean_" + mode, "failures"};
            if (mode == "mc") detail.col_labels.push_back("std_error");

            std::optional<McResult> mc;
            if (mode == "mc") {
                McConfig cfg;
                cfg.n = n;
                cfg.replicates = reps;
                cfg.seed = seed;
                cfg.workers = source.workers;
                mc = mc_run(pops[p], specs, set.mbar, cfg);
                std::ostringstream note;
                note << "simulation: " << reps << " replicates, seed "
                     << seed;
                detail.notes.push_back(note.str());
            }

            for (std::size_t s = 0; s < specs.size(); ++s) {
                const auto& spec = specs[s];
                detail.row_labels.push_back(spec.name);
                auto& row = detail.cells.emplace_back();
                const double nu_value = nu(spec.a, spec.b, set.mbar);
                row.push_back(bias_t(mom, spec, nu_value));
                row.push_back(mse_t(mom, spec));
                if (mode == "mc") {
                    const auto& r = mc->estimators[s];
                    row.push_back(r.mse);
                    row.push_back(r.mean);
                    row.push_back(static_cast<double>(r.failures));
                    row.push_back(r.std_error);
                } else {
                    const ExactMseResult exact = exact_estimator_mse(
                        pops[p], n, spec, set.mbar, source.workers);
                    row.push_back(exact.mse);
                    row.push_back(exact.mean);
                    row.push_back(static_cast<double>(exact.failures));
                }
            }
            emit(std::move(detail), table_opts, std::cout);
        }
    }
    return 0;
}

int run_weights(const SetSource& source, const TableOpts& table_opts,
                double a, double b, double alpha, double g, double delta) {
    const auto sets = source.gather();
    ReportTable table;
    table.title = "Optimum weights (alpha=" + std::to_string(alpha) +
                  ", g=" + std::to_string(g) +
                  ", delta=" + std::to_string(delta) + ")";
    table.row_header = "quantity";
    table.precision = 6;
    for (const auto& set : sets) table.col_labels.push_back(set.name);

    const char* labels[] = {"nu",       "k",  "bias_t1", "bias_t2", "w0",
                            "w1",       "w2", "sum_w",   "slope",   "bias_t"};
    for (const char* label : labels) table.row_labels.emplace_back(label);
    table.cells.assign(std::size(labels), {});

    for (const auto& set : sets) {
        const RelativeMoments mom = set.moments();
        const double nu_value = nu(a, b, set.mbar);
        const double k = k_opt(mom, nu_value);
        const WeightSolution sol =
            solve_weights(mom, nu_value, alpha, g, delta, k);
        EstimatorSpec spec;
        spec.name = "t";
        spec.w0 = sol.w0;
        spec.w1 = sol.w1;
        spec.w2 = sol.w2;
        spec.a = a;
        spec.b = b;
        spec.alpha = alpha;
        spec.g = g;
        spec.delta = delta;

        double values[] = {nu_value,
                           k,
                           bias_t1(mom, nu_value, alpha, g),
                           bias_t2(mom, nu_value, delta),
                           sol.w0,
                           sol.w1,
                           sol.w2,
                           sol.w0 + sol.w1 + sol.w2,
                           composite_w(spec),
                           bias_t(mom, spec, nu_value)};
        for (std::size_t r = 0; r < std::size(values); ++r) {
            table.cells[r].push_back(values[r]);
        }
    }
    emit(std::move(table), table_opts, std::cout);
    return 0;
}

int run_simulate(const std::string& pop_path, int n, std::uint64_t reps,
                 std::uint64_t seed, int workers, const TableOpts& table_opts,
                 const std::vector<PresetId>& presets,
                 const std::vector<std::string>& spec_paths) {
    const Population pop = load_population_file(pop_path);
    const PopulationParams params = population_params(pop);
    const double mbar = mbar_anchor(pop, n, workers);

    std::vector<EstimatorSpec> specs;
    for (PresetId id : presets) {
        specs.push_back(preset(id, params.beta1_x, params.rho_xy));
    }
    for (auto& spec : load_spec_files(spec_paths)) {
        specs.push_back(std::move(spec));
    }

    McConfig cfg;
    cfg.n = n;
    cfg.replicates = reps;
    cfg.seed = seed;
    cfg.workers = workers;
    const McResult result = mc_run(pop, specs, mbar, cfg);

    ReportTable table;
    table.title = "Simulated MSE on " + pop.name() + ", n=" +
                  std::to_string(n);
    table.row_header = "estimator";
    table.precision = 6;
    table.col_labels = {"mse", "std_error", "mean", "replicates", "failures"};
    for (const auto& r : result.estimators) {
        table.row_labels.push_back(r.name);
        table.cells.push_back({r.mse, r.std_error, r.mean,
                               static_cast<double>(r.replicates),
                               static_cast<double>(r.failures)});
    }
    std::ostringstream note;
    note << reps << " replicates, seed " << seed << ", Mbar anchor "
         << std::setprecision(12) << mbar;
    table.notes.push_back(note.str());
    emit(std::move(table), table_opts, std::cout);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{
        "medest: population-mean estimation from the sample median\n"
        "Computes exact sampling moments of (ybar, xbar, m) under "
        "without-replacement sampling, first-order bias/MSE of the "
        "median-based estimator family, optimal mixing weights, and "
        "Monte Carlo cross-checks."};
    app.require_subcommand(1);
    // App-level options (--format, --precision, --estimators) may appear
    // after the subcommand name; unmatched ones fall through to the app.

    TableOpts table_opts;
    app.add_option("--format", table_opts.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--precision", table_opts.precision,
                   "decimal places in tables")
        ->check(CLI::Range(0, 17));

    std::string estimators = "all";
    app.add_option("--estimators", estimators,
                   "catalog members, e.g. q1,q3-q5 or 'all'")
        ->capture_default_str();


    // analyze: enumerate populations, report everything.
    auto* analyze = app.add_subcommand(
        "analyze", "enumerate populations and report moments, biases, MSEs");
    analyze->fallthrough();
    SetSource analyze_source;
    {
        auto* pops = analyze
                         ->add_option("--population",
                                      analyze_source.population_paths,
                                      "population CSV (y,x per row); "
                                      "repeatable")
                         ->required()
                         ->check(CLI::ExistingFile);
        analyze->add_option("--n", analyze_source.sizes,
                            "sample sizes, e.g. --n 3,5")
            ->required()
            ->delimiter(',');
        analyze->add_option("--workers", analyze_source.workers,
                            "enumeration threads")
            ->check(CLI::Range(1, 256));
        (void)pops;
    }
    std::string analyze_mode = "exact";
    analyze->add_option("--mode", analyze_mode,
                        "how to cross-check each estimator's MSE")
        ->check(CLI::IsMember({"exact", "mc"}))
        ->capture_default_str();
    std::uint64_t analyze_reps = 100000;
    std::uint64_t analyze_seed = 42;
    analyze->add_option("--reps", analyze_reps,
                        "replicates for --mode mc");
    analyze->add_option("--seed", analyze_seed, "RNG seed for --mode mc");
    std::string dump_path;
    analyze->add_option("--dump-params", dump_path,
                        "also write the computed parameter table as CSV");
    std::vector<std::string> analyze_specs;
    analyze->add_option("--spec", analyze_specs,
                        "extra estimator spec file (key=value); repeatable")
        ->check(CLI::ExistingFile);

    // mse / pre: the study tables, from saved parameters or populations.
    auto* mse_cmd = app.add_subcommand(
        "mse", "first-order MSE table across estimators and parameter sets");
    mse_cmd->fallthrough();
    SetSource mse_source;
    mse_source.attach(mse_cmd, false);

    auto* pre_cmd = app.add_subcommand(
        "pre", "percent relative efficiency table (vs the sample mean)");
    pre_cmd->fallthrough();
    SetSource pre_source;
    pre_source.attach(pre_cmd, false);

    // weights: solve for the optimum mixing weights.
    auto* weights_cmd = app.add_subcommand(
        "weights", "solve the three-equation system for optimal weights");
    weights_cmd->fallthrough();
    SetSource weights_source;
    weights_source.attach(weights_cmd, false);
    double w_a = 1.0, w_b = 0.0, w_alpha = 1.0, w_g = 1.0, w_delta = 1.0;
    weights_cmd->add_option("--a", w_a, "median transform scale")
        ->capture_default_str();
    weights_cmd->add_option("--b", w_b, "median transform shift")
        ->capture_default_str();
    weights_cmd->add_option("--alpha", w_alpha, "t1 mixing constant")
        ->capture_default_str();
    weights_cmd->add_option("--g", w_g, "t1 exponent")
        ->capture_default_str();
    weights_cmd->add_option("--delta", w_delta, "t2 exponent")
        ->capture_default_str();

    // simulate: Monte Carlo only.
    auto* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo MSE estimates");
    sim_cmd->fallthrough();
    std::string sim_pop;
    int sim_n = 0;
    std::uint64_t sim_reps = 100000;
    std::uint64_t sim_seed = 42;
    int sim_workers = 1;
    std::vector<std::string> sim_specs;
    sim_cmd->add_option("--population", sim_pop, "population CSV")
        ->required()
        ->check(CLI::ExistingFile);
    sim_cmd->add_option("--n", sim_n, "sample size")->required();
    sim_cmd->add_option("--reps", sim_reps, "replicates")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_seed, "RNG seed")
        ->capture_default_str();
    sim_cmd->add_option("--workers", sim_workers, "simulation threads")
        ->check(CLI::Range(1, 256));
    sim_cmd->add_option("--spec", sim_specs,
                        "extra estimator spec file (key=value); repeatable")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const auto presets = parse_preset_list(estimators);
        if (*analyze) {
            return run_analyze(analyze_source, table_opts, presets,
                               analyze_specs, analyze_mode, analyze_reps,
                               analyze_seed, dump_path);
        }
        if (*mse_cmd) {
            emit(table_mse(mse_source.gather(), presets), table_opts,
                 std::cout);
            return 0;
        }
        if (*pre_cmd) {
            emit(table_pre(pre_source.gather(), presets), table_opts,
                 std::cout);
            return 0;
        }
        if (*weights_cmd) {
            return run_weights(weights_source, table_opts, w_a, w_b, w_alpha,
                               w_g, w_delta);
        }
        if (*sim_cmd) {
            return run_simulate(sim_pop, sim_n, sim_reps, sim_seed,
                                sim_workers, table_opts, presets, sim_specs);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace medest
