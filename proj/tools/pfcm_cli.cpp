// pfcm: cluster complete or incomplete datasets with PFCM / OCSPFCM /
// NPSPFCM, sweep cluster counts with the Xie-Beni index, generate Gaussian
// mixture benchmarks, inject missingness, and run the full evaluation grid.

#include <CLI11.hpp>

#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pfcm/pfcm.hpp"

namespace {

using namespace pfcm;

struct AlgorithmFlags {
    Parameters params;
    std::string weight_form = "paper";
    std::string harden_by = "t";

    void attach(CLI::App* cmd) {
        cmd->add_option("--m", params.m, "Fuzzifier m (> 1)")->capture_default_str();
        cmd->add_option("--tau", params.tau, "Possibilistic exponent tau (> 1)")
            ->capture_default_str();
        cmd->add_option("--alpha", params.alpha, "Fuzzy weight a (> 0)")->capture_default_str();
        cmd->add_option("--beta", params.beta, "Possibilistic weight b (>= 0)")
            ->capture_default_str();
        cmd->add_option("--epsilon", params.epsilon, "Centroid convergence threshold")
            ->capture_default_str();
        cmd->add_option("--max-iter", params.max_iter, "Iteration cap")->capture_default_str();
        cmd->add_option("--weight-form", weight_form, "Centroid weight form: paper | classic")
            ->check(CLI::IsMember({"paper", "classic"}))
            ->capture_default_str();
        cmd->add_option("--harden", harden_by,
                        "Membership matrix hardened for labels: t (typicality) | u (fuzzy)")
            ->check(CLI::IsMember({"t", "u"}))
            ->capture_default_str();
    }

    Parameters resolved() const {
        Parameters p = params;
        p.weight_form = weight_form == "classic" ? WeightForm::ClassicPfcm
                                                 : WeightForm::PaperLiteral;
        return p;
    }

    Hardening hardening() const {
        return harden_by == "u" ? Hardening::Fuzzy : Hardening::Typicality;
    }
};

struct DataFlags {
    std::string path;
    int label_column = std::numeric_limits<int>::min();
    bool zscore_flag = false;

    void attach(CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--data", path, "Input CSV file");
        if (required) opt->required();
        cmd->add_option("--label-column", label_column,
                        "Class column to drop (0-based; negative counts from the end)");
        cmd->add_flag("--zscore", zscore_flag, "Standardize features before clustering");
    }

    LoadedCsv load() const {
        CsvOptions opts;
        if (label_column != std::numeric_limits<int>::min()) opts.label_column = label_column;
        LoadedCsv loaded = load_csv(path, opts);
        if (zscore_flag) loaded.data = zscore(loaded.data);
        return loaded;
    }
};

std::pair<std::size_t, std::size_t> parse_c_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw ConfigError("--c-range expects the form A..B, got '" + text + "'");
    try {
        const std::size_t lo = std::stoul(text.substr(0, dots));
        const std::size_t hi = std::stoul(text.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw ConfigError("--c-range expects integers, got '" + text + "'");
    }
}

void print_run_summary(const RunResult& r, Hardening h) {
    const Labels labels = harden(r.partition, h);
    std::vector<std::size_t> sizes(r.centroids.count(), 0);
    for (const auto l : labels) ++sizes[l];
    std::printf("converged: %s after %zu iterations\n", r.converged ? "yes" : "no (cap hit)",
                r.iterations);
    if (!r.objective_trace.empty())
        std::printf("objective: %s\n", format_double(r.objective_trace.back()).c_str());
    std::printf("cluster sizes:");
    for (const auto s : sizes) std::printf(" %zu", s);
    std::printf("\ncentroids:\n");
    for (std::size_t i = 0; i < r.centroids.count(); ++i) {
        std::printf("  [%zu]", i);
        for (std::size_t j = 0; j < r.centroids.dim(); ++j)
            std::printf(" %s", format_double(r.centroids.v(i, j)).c_str());
        std::printf("\n");
    }
}

int cmd_cluster(const DataFlags& data_flags, const AlgorithmFlags& algo,
                const std::string& strategy, std::size_t c, std::uint64_t seed,
                const std::string& out) {
    const LoadedCsv loaded = data_flags.load();
    Parameters p = algo.resolved();
    p.c = c;
    RunResult result;
    if (strategy == "pfcm") {
        result = run_pfcm(loaded.data, p, seed);
    } else {
        result = run_incomplete(loaded.data, p,
                                strategy == "ocs" ? Strategy::OCS : Strategy::NPS, seed);
    }
    print_run_summary(result, algo.hardening());
    if (!out.empty()) {
        save_csv(out, result.imputed, loaded.header, loaded.labels);
        std::printf("imputed dataset written to %s\n", out.c_str());
    }
    return 0;
}

int cmd_validity(const DataFlags& data_flags, const AlgorithmFlags& algo,
                 const std::string& c_range, std::uint64_t seed) {
    const LoadedCsv loaded = data_flags.load();
    const auto [lo, hi] = parse_c_range(c_range);
    const CountSelection sel =
        select_cluster_count(loaded.data, lo, hi, algo.resolved(), seed);
    std::printf("c    xie-beni\n");
    for (const auto& cand : sel.table) {
        if (cand.degenerate)
            std::printf("%-4zu (degenerate, skipped)\n", cand.c);
        else
            std::printf("%-4zu %s\n", cand.c, format_double(cand.xb).c_str());
    }
    std::printf("chosen c: %zu\n", sel.chosen);
    return 0;
}

int cmd_generate(const std::string& config_path, std::size_t n, std::size_t s,
                 double separation, std::uint64_t seed, bool no_labels,
                 const std::string& out) {
    MixtureSpec spec;
    if (!config_path.empty()) {
        spec = mixture_from_config(KeyValueFile::parse_file(config_path));
    } else {
        spec = default_two_component(n, s, seed, separation);
    }
    const GeneratedMixture gen = generate_mixture(spec);
    std::vector<std::string> header;
    for (std::size_t j = 0; j < gen.data.s(); ++j) header.push_back("f" + std::to_string(j + 1));
    std::vector<std::string> labels;
    if (!no_labels) {
        header.push_back("component");
        for (const auto l : gen.labels) labels.push_back(std::to_string(l + 1));
    }
    save_csv(out, gen.data, header, labels);
    std::printf("%zu x %zu mixture written to %s\n", gen.data.n(), gen.data.s(), out.c_str());
    return 0;
}

int cmd_inject(const DataFlags& data_flags, const std::string& config_path, double fraction,
               std::uint64_t seed, const std::string& out) {
    const LoadedCsv loaded = data_flags.load();
    const InjectionSpec spec = config_path.empty()
                                   ? InjectionSpec{fraction, seed}
                                   : injection_from_config(KeyValueFile::parse_file(config_path));
    const DataSet injected = inject_missing(loaded.data, spec);
    save_csv(out, injected, loaded.header, loaded.labels);
    std::printf("%zu cells masked (fraction %s), written to %s\n",
                injected.mask.missing_count(), format_double(spec.fraction).c_str(), out.c_str());
    return 0;
}

int cmd_experiment(const DataFlags& data_flags, const std::string& mixture_config,
                   const AlgorithmFlags& algo, std::size_t c, const std::string& c_range,
                   const std::vector<double>& fractions, std::size_t trials,
                   const std::vector<std::string>& strategy_names, std::uint64_t seed,
                   bool pin_injection, bool pin_init, bool plots, const std::string& out) {
    DataSet data;
    if (!mixture_config.empty()) {
        data = generate_mixture(mixture_from_config(KeyValueFile::parse_file(mixture_config))).data;
    } else {
        if (data_flags.path.empty())
            throw ConfigError("experiment needs --data or --config");
        data = data_flags.load().data;
    }

    ExperimentSpec spec;
    spec.params = algo.resolved();
    spec.params.c = c;
    if (!c_range.empty()) spec.c_range = parse_c_range(c_range);
    if (!fractions.empty()) spec.fractions = fractions;
    spec.trials = trials;
    spec.strategies.clear();
    for (const auto& name : strategy_names) {
        if (name == "ocs")
            spec.strategies.push_back(Strategy::OCS);
        else if (name == "nps")
            spec.strategies.push_back(Strategy::NPS);
        else
            throw ConfigError("unknown strategy '" + name + "' (expected ocs or nps)");
    }
    spec.base_seed = seed;
    spec.hardening = algo.hardening();
    spec.pin_injection = pin_injection;
    spec.pin_init = pin_init;

    const BaseResult base = run_base(data, spec);
    std::printf("base run: c = %zu, %zu iterations, converged = %s\n", base.c,
                base.run.iterations, base.run.converged ? "yes" : "no");
    const auto records = run_grid(data, spec, base);
    const auto aggregates = aggregate(records);
    emit_report(aggregates, records, out, plots);

    std::printf("%-5s %-9s %-6s %-10s %-10s %-10s\n", "strat", "fraction", "count", "accuracy",
                "iters", "cent.err");
    for (const auto& a : aggregates)
        std::printf("%-5s %-9s %-6zu %-10.4f %-10.2f %-10.6f\n", strategy_name(a.strategy),
                    format_double(a.fraction).c_str(), a.count, a.accuracy.mean,
                    a.iterations.mean, a.centroid_error.mean);
    std::printf("report written to %s\n", out.c_str());
    return 0;
}

int cmd_report(const std::string& trials_path, bool plots, const std::string& out) {
    const auto records = load_trials(trials_path);
    emit_report(aggregate(records), records, out, plots);
    std::printf("re-aggregated %zu records into %s\n", records.size(), out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Possibilistic fuzzy c-means clustering for complete and incomplete data"};
    app.require_subcommand(1);

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Run PFCM / OCSPFCM / NPSPFCM on one dataset");
    DataFlags cluster_data;
    AlgorithmFlags cluster_algo;
    std::string cluster_strategy = "pfcm";
    std::size_t cluster_c = 2;
    std::uint64_t cluster_seed = 0;
    std::string cluster_out;
    cluster_data.attach(cluster);
    cluster_algo.attach(cluster);
    cluster->add_option("--strategy", cluster_strategy, "pfcm | ocs | nps")
        ->check(CLI::IsMember({"pfcm", "ocs", "nps"}))
        ->capture_default_str();
    cluster->add_option("--c", cluster_c, "Cluster count")->capture_default_str();
    cluster->add_option("--seed", cluster_seed, "RNG seed")->capture_default_str();
    cluster->add_option("--out", cluster_out, "Write the imputed dataset here");

    // validity
    auto* validity = app.add_subcommand("validity", "Xie-Beni sweep over a cluster-count range");
    DataFlags validity_data;
    AlgorithmFlags validity_algo;
    std::string validity_range = "2..5";
    std::uint64_t validity_seed = 0;
    validity_data.attach(validity);
    validity_algo.attach(validity);
    validity->add_option("--c-range", validity_range, "Inclusive range A..B")
        ->capture_default_str();
    validity->add_option("--seed", validity_seed, "RNG seed")->capture_default_str();

    // generate
    auto* generate = app.add_subcommand("generate", "Write a Gaussian mixture dataset");
    std::string gen_config;
    std::size_t gen_n = 1000, gen_s = 2;
    double gen_separation = 8.0;
    std::uint64_t gen_seed = 0;
    bool gen_no_labels = false;
    std::string gen_out;
    generate->add_option("--config", gen_config, "Mixture key=value config file");
    generate->add_option("--n", gen_n, "Point count (two-component default spec)")
        ->capture_default_str();
    generate->add_option("--s", gen_s, "Feature count")->capture_default_str();
    generate->add_option("--separation", gen_separation, "Per-axis mean offset")
        ->capture_default_str();
    generate->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    generate->add_flag("--no-labels", gen_no_labels, "Omit the ground-truth component column");
    generate->add_option("--out", gen_out, "Output CSV")->required();

    // inject
    auto* inject = app.add_subcommand("inject", "Inject missing cells into a complete dataset");
    DataFlags inject_data;
    std::string inject_config;
    double inject_fraction = 0.05;
    std::uint64_t inject_seed = 0;
    std::string inject_out;
    inject_data.attach(inject);
    inject->add_option("--config", inject_config, "Injection key=value config (fraction, seed)");
    inject->add_option("--fraction", inject_fraction, "Missing-cell fraction in [0,1)")
        ->capture_default_str();
    inject->add_option("--seed", inject_seed, "RNG seed")->capture_default_str();
    inject->add_option("--out", inject_out, "Output CSV (missing cells become '?')")->required();

    // experiment
    auto* experiment = app.add_subcommand(
        "experiment", "Base clustering, injection grid, 30-trial aggregation, report");
    DataFlags exp_data;
    AlgorithmFlags exp_algo;
    std::string exp_config;
    std::size_t exp_c = 2;
    std::string exp_c_range;
    std::vector<double> exp_fractions;
    std::size_t exp_trials = 30;
    std::vector<std::string> exp_strategies = {"ocs", "nps"};
    std::uint64_t exp_seed = 0;
    bool exp_pin_injection = false, exp_pin_init = false, exp_plots = false;
    std::string exp_out = "report";
    exp_data.attach(experiment, /*required=*/false);
    exp_algo.attach(experiment);
    experiment->add_option("--config", exp_config, "Mixture config instead of --data");
    experiment->add_option("--c", exp_c, "Fixed cluster count")->capture_default_str();
    experiment->add_option("--c-range", exp_c_range, "Choose c by Xie-Beni over A..B");
    experiment->add_option("--fractions", exp_fractions, "Missing fractions")
        ->delimiter(',');
    experiment->add_option("--trials", exp_trials, "Trials per cell")->capture_default_str();
    experiment->add_option("--strategies", exp_strategies, "Subset of ocs,nps")
        ->delimiter(',');
    experiment->add_option("--seed", exp_seed, "Base seed of the grid")->capture_default_str();
    experiment->add_flag("--pin-injection", exp_pin_injection,
                         "Use trial 0's missingness pattern for all trials");
    experiment->add_flag("--pin-init", exp_pin_init,
                         "Use trial 0's centroid initialization for all trials");
    experiment->add_flag("--plots", exp_plots, "Also write SVG line charts");
    experiment->add_option("--out", exp_out, "Report directory")->capture_default_str();

    // report
    auto* report = app.add_subcommand("report", "Re-aggregate an existing trials.csv");
    std::string report_trials;
    bool report_plots = false;
    std::string report_out = "report";
    report->add_option("--trials", report_trials, "trials.csv produced by `experiment`")
        ->required();
    report->add_flag("--plots", report_plots, "Also write SVG line charts");
    report->add_option("--out", report_out, "Report directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // flag misuse is a configuration error
    }

    try {
        if (cluster->parsed())
            return cmd_cluster(cluster_data, cluster_algo, cluster_strategy, cluster_c,
                               cluster_seed, cluster_out);
        if (validity->parsed())
            return cmd_validity(validity_data, validity_algo, validity_range, validity_seed);
        if (generate->parsed())
            return cmd_generate(gen_config, gen_n, gen_s, gen_separation, gen_seed,
                                gen_no_labels, gen_out);
        if (inject->parsed())
            return cmd_inject(inject_data, inject_config, inject_fraction, inject_seed, inject_out);
        if (experiment->parsed())
            return cmd_experiment(exp_data, exp_config, exp_algo, exp_c, exp_c_range,
                                  exp_fractions, exp_trials, exp_strategies, exp_seed,
                                  exp_pin_injection, exp_pin_init, exp_plots, exp_out);
        if (report->parsed()) return cmd_report(report_trials, report_plots, report_out);
    } catch (const pfcm::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 1;
    } catch (const pfcm::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const pfcm::DegenerateError& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
