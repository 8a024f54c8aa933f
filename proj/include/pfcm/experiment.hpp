#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfcm/dataset.hpp"
#include "pfcm/engine.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/imputation.hpp"
#include "pfcm/injection.hpp"
#include "pfcm/parameters.hpp"
#include "pfcm/validity.hpp"

namespace pfcm {

// ---------------------------------------------------------------------------
// Seeding contract. Every trial's randomness is derived from the experiment
// base seed with the splitmix64 finalizer mix64():
//
//   trial_seed(base, strategy, fraction, trial) =
//       mix64(mix64(mix64(mix64(base) ^ strategy_tag) ^ permille(fraction)) ^ (trial + 1))
//
//   injection seed = mix64(trial_seed ^ 0x494E4A)   ("INJ")
//   run seed       = mix64(trial_seed ^ 0x52554E)   ("RUN")
//   base-run seed  = mix64(mix64(base) ^ 0x42415345) ("BASE")
//
// strategy_tag is 0x4F4353 ("OCS") or 0x4E5053 ("NPS"); permille(f) is
// llround(1000*f). Changing the trial index therefore changes only that
// trial's draws, and grids are reproducible and extensible.
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kInjectionTag = 0x494E4A;
inline constexpr std::uint64_t kRunTag = 0x52554E;
inline constexpr std::uint64_t kBaseTag = 0x42415345;

inline std::uint64_t strategy_tag(Strategy s) {
    return s == Strategy::OCS ? 0x4F4353ULL : 0x4E5053ULL;
}

inline std::uint64_t trial_seed(std::uint64_t base_seed, Strategy strategy, double fraction,
                                std::size_t trial) {
    const auto permille = static_cast<std::uint64_t>(std::llround(fraction * 1000.0));
    std::uint64_t h = mix64(base_seed);
    h = mix64(h ^ strategy_tag(strategy));
    h = mix64(h ^ permille);
    return mix64(h ^ (trial + 1));
}

struct ExperimentSpec {
    Parameters params;
    std::optional<std::pair<std::size_t, std::size_t>> c_range;  // overrides params.c
    std::vector<double> fractions = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    std::size_t trials = 30;
    std::vector<Strategy> strategies = {Strategy::OCS, Strategy::NPS};
    std::uint64_t base_seed = 0;
    Hardening hardening = Hardening::Typicality;
    // Pinning holds the injection pattern (or the initialization) fixed at the
    // trial-0 derivation across all trials of a (strategy, fraction) cell.
    bool pin_injection = false;
    bool pin_init = false;
};

inline void validate_experiment(const ExperimentSpec& spec) {
    validate_parameters(spec.params);
    if (spec.trials < 1) throw ConfigError("experiment: trials must be >= 1");
    if (spec.fractions.empty()) throw ConfigError("experiment: no fractions given");
    for (const double f : spec.fractions)
        if (f < 0.0 || f >= 1.0)
            throw ConfigError("experiment: fractions must lie in [0,1)");
    if (spec.strategies.empty()) throw ConfigError("experiment: no strategies given");
    if (spec.c_range && (spec.c_range->first < 2 || spec.c_range->first > spec.c_range->second))
        throw ConfigError("experiment: bad c range");
}

struct BaseResult {
    RunResult run;
    Labels labels;
    std::size_t c = 0;
    std::vector<CandidateCount> selection;  // empty when c was fixed
};

// Clusters the complete dataset to produce the evaluation reference. When a
// c range is given the count is chosen by the Xie-Beni sweep first.
inline BaseResult run_base(const DataSet& data, const ExperimentSpec& spec) {
    validate_experiment(spec);
    if (!data.mask.all_observed()) throw DataError("run_base: dataset must be complete");
    const std::uint64_t seed = mix64(mix64(spec.base_seed) ^ kBaseTag);
    Parameters p = spec.params;
    BaseResult base;
    if (spec.c_range) {
        const CountSelection sel =
            select_cluster_count(data, spec.c_range->first, spec.c_range->second, p, seed);
        p.c = sel.chosen;
        base.selection = sel.table;
    }
    base.c = p.c;
    base.run = run_pfcm(data, p, mix64(seed ^ p.c));
    base.labels = harden(base.run.partition, spec.hardening);
    return base;
}

struct TrialRecord {
    Strategy strategy = Strategy::OCS;
    double fraction = 0.0;
    std::size_t trial = 0;
    bool ok = true;
    std::string error;       // set when !ok
    double accuracy = 0.0;   // percent
    std::size_t iterations = 0;
    double centroid_error = 0.0;
    bool converged = false;
    double wall_ms = 0.0;    // informational; not part of the canonical output
};

// Runs the full strategy x fraction x trial grid against the base partition.
// Per-trial failures are recorded and the grid continues. Records come back
// in canonical order (strategy, fraction, trial).
inline std::vector<TrialRecord> run_grid(const DataSet& data, const ExperimentSpec& spec,
                                         const BaseResult& base) {
    validate_experiment(spec);
    Parameters p = spec.params;
    p.c = base.c;

    std::vector<TrialRecord> records;
    records.reserve(spec.strategies.size() * spec.fractions.size() * spec.trials);
    for (const Strategy strategy : spec.strategies) {
        std::vector<double> fractions = spec.fractions;
        std::sort(fractions.begin(), fractions.end());
        for (const double fraction : fractions) {
            for (std::size_t trial = 0; trial < spec.trials; ++trial) {
                const std::uint64_t inj_seed =
                    mix64(trial_seed(spec.base_seed, strategy, fraction,
                                     spec.pin_injection ? 0 : trial) ^
                          kInjectionTag);
                const std::uint64_t run_seed =
                    mix64(trial_seed(spec.base_seed, strategy, fraction,
                                     spec.pin_init ? 0 : trial) ^
                          kRunTag);
                TrialRecord rec;
                rec.strategy = strategy;
                rec.fraction = fraction;
                rec.trial = trial;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    const DataSet incomplete =
                        inject_missing(data, InjectionSpec{fraction, inj_seed});
                    const RunResult run = run_incomplete(incomplete, p, strategy, run_seed);
                    rec.iterations = run.iterations;
                    rec.converged = run.converged;
                    const Labels labels = harden(run.partition, spec.hardening);
                    if (fraction == 0.0) {
                        // Zero injection leaves the trial identical to a
                        // complete-data run from its own seed; score against
                        // that run so the identity is exact.
                        const RunResult ref = run_pfcm(data, p, run_seed);
                        rec.accuracy = accuracy(labels, harden(ref.partition, spec.hardening), p.c);
                        rec.centroid_error = centroid_error(run.centroids, ref.centroids);
                    } else {
                        rec.accuracy = accuracy(labels, base.labels, p.c);
                        rec.centroid_error = centroid_error(run.centroids, base.run.centroids);
                    }
                } catch (const DegenerateError& e) {
                    rec.ok = false;
                    rec.error = e.what();
                }
                rec.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

struct MetricStats {
    double mean = 0.0, min = 0.0, max = 0.0, stddev = 0.0;
};

struct AggregateRecord {
    Strategy strategy = Strategy::OCS;
    double fraction = 0.0;
    std::size_t count = 0;  // trials included (errored trials are excluded)
    MetricStats accuracy, iterations, centroid_error;
};

namespace detail {

inline MetricStats stats_of(const std::vector<double>& xs) {
    MetricStats st;
    if (xs.empty()) return st;
    st.min = *std::min_element(xs.begin(), xs.end());
    st.max = *std::max_element(xs.begin(), xs.end());
    double sum = 0.0;
    for (const double x : xs) sum += x;
    st.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (const double x : xs) ss += (x - st.mean) * (x - st.mean);
        st.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return st;
}

}  // namespace detail

// Groups by (strategy, fraction) and reduces each metric to mean/min/max/
// sample-stddev over the ok trials of the group.
inline std::vector<AggregateRecord> aggregate(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw ConfigError("aggregate: no records");
    std::map<std::pair<int, double>, std::vector<const TrialRecord*>> groups;
    for (const auto& rec : records)
        groups[{static_cast<int>(rec.strategy), rec.fraction}].push_back(&rec);
    std::vector<AggregateRecord> out;
    for (const auto& [key, recs] : groups) {
        AggregateRecord agg;
        agg.strategy = static_cast<Strategy>(key.first);
        agg.fraction = key.second;
        std::vector<double> acc, iters, ce;
        for (const TrialRecord* r : recs) {
            if (!r->ok) continue;
            acc.push_back(r->accuracy);
            iters.push_back(static_cast<double>(r->iterations));
            ce.push_back(r->centroid_error);
        }
        agg.count = acc.size();
        agg.accuracy = detail::stats_of(acc);
        agg.iterations = detail::stats_of(iters);
        agg.centroid_error = detail::stats_of(ce);
        out.push_back(agg);
    }
    std::sort(out.begin(), out.end(), [](const AggregateRecord& a, const AggregateRecord& b) {
        if (a.strategy != b.strategy) return a.strategy < b.strategy;
        return a.fraction < b.fraction;
    });
    return out;
}

}  // namespace pfcm
