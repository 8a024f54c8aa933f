#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "pfcm/dataset.hpp"
#include "pfcm/distance.hpp"
#include "pfcm/engine.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/matrix.hpp"
#include "pfcm/parameters.hpp"

namespace pfcm {

using Labels = std::vector<std::size_t>;

// Largest cluster count for which exhaustive permutation matching is allowed.
inline constexpr std::size_t kMaxAlignClusters = 8;

// Xie-Beni index: sum_i sum_k u_ik^m ||x_k - v_i||^2 / (n * min_{i!=j} ||v_i - v_j||^2).
// Squared norms in both numerator and denominator. Smaller is better.
inline double xie_beni(const DataSet& data, const Matrix& u, const Centroids& centroids,
                       double m) {
    const std::size_t c = centroids.count();
    if (c < 2) throw ConfigError("xie_beni: needs at least 2 clusters");
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = i + 1; j < c; ++j)
            min_sep = std::min(min_sep, squared_distance(centroids.v.row(i), centroids.v.row(j)));
    if (min_sep < 1e-12)
        throw DegenerateError("xie_beni: coincident centroids, squared separation below 1e-12");
    const Matrix d2 = squared_distances(data, centroids);
    double num = 0.0;
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t k = 0; k < data.n(); ++k)
            num += std::pow(u(i, k), m) * d2(i, k);
    return num / (static_cast<double>(data.n()) * min_sep);
}

// Crisp labels by per-column argmax; ties go to the lowest cluster index.
// Works on any membership matrix (fuzzy or possibilistic).
inline Labels harden(const Matrix& memberships) {
    const std::size_t c = memberships.rows(), n = memberships.cols();
    Labels labels(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        double best = memberships(0, k);
        for (std::size_t i = 1; i < c; ++i)
            if (memberships(i, k) > best) {
                best = memberships(i, k);
                labels[k] = i;
            }
    }
    return labels;
}

// Which membership matrix the evaluation pipeline hardens. Typicality is the
// default: on the reference datasets it is what reproduces the published base
// partition sizes.
enum class Hardening { Fuzzy, Typicality };

inline Labels harden(const Partition& partition, Hardening h = Hardening::Typicality) {
    return harden(h == Hardening::Fuzzy ? partition.u : partition.t);
}

// Bijective map trial-cluster index -> base-cluster index.
struct Alignment {
    std::vector<std::size_t> perm;

    std::size_t map(std::size_t trial_cluster) const { return perm[trial_cluster]; }
};

namespace detail {

template <typename Score>
std::vector<std::size_t> best_permutation(std::size_t c, Score&& score, bool maximize) {
    if (c > kMaxAlignClusters)
        throw ConfigError("permutation matching supports at most " +
                          std::to_string(kMaxAlignClusters) + " clusters");
    std::vector<std::size_t> perm(c), best_perm(c);
    std::iota(perm.begin(), perm.end(), 0);
    best_perm = perm;
    double best = maximize ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    do {
        const double s = score(perm);
        if (maximize ? s > best : s < best) {
            best = s;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best_perm;
}

}  // namespace detail

// Permutation of trial labels maximizing agreement with the base labels,
// found by exhaustive search over all c! permutations.
inline Alignment align_labels(const Labels& trial, const Labels& base, std::size_t c) {
    if (trial.size() != base.size())
        throw DataError("align_labels: label vectors differ in length");
    // agreement counts: agree[i][b] = #positions with trial==i and base==b
    std::vector<std::vector<double>> agree(c, std::vector<double>(c, 0.0));
    for (std::size_t k = 0; k < trial.size(); ++k) ++agree[trial[k]][base[k]];
    auto perm = detail::best_permutation(
        c, [&](const std::vector<std::size_t>& pm) {
            double s = 0.0;
            for (std::size_t i = 0; i < c; ++i) s += agree[i][pm[i]];
            return s;
        },
        /*maximize=*/true);
    return Alignment{std::move(perm)};
}

// Percentage of points on the right cluster under the best label alignment.
inline double accuracy(const Labels& trial, const Labels& base, std::size_t c) {
    const Alignment alignment = align_labels(trial, base, c);
    std::size_t matched = 0;
    for (std::size_t k = 0; k < trial.size(); ++k)
        matched += (alignment.map(trial[k]) == base[k]);
    return 100.0 * static_cast<double>(matched) / static_cast<double>(trial.size());
}

// Mean Euclidean distance between matched centroids, matching chosen to
// minimize the total distance. Independent of the accuracy alignment.
inline double centroid_error(const Centroids& trial, const Centroids& base) {
    if (trial.count() != base.count() || trial.dim() != base.dim())
        throw DataError("centroid_error: centroid shape mismatch");
    const std::size_t c = trial.count();
    std::vector<std::vector<double>> dist(c, std::vector<double>(c));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t b = 0; b < c; ++b)
            dist[i][b] = std::sqrt(squared_distance(trial.v.row(i), base.v.row(b)));
    auto perm = detail::best_permutation(
        c, [&](const std::vector<std::size_t>& pm) {
            double s = 0.0;
            for (std::size_t i = 0; i < c; ++i) s += dist[i][pm[i]];
            return s;
        },
        /*maximize=*/false);
    double total = 0.0;
    for (std::size_t i = 0; i < c; ++i) total += dist[i][perm[i]];
    return total / static_cast<double>(c);
}

struct CandidateCount {
    std::size_t c;
    double xb;        // NaN when degenerate
    bool degenerate;
};

struct CountSelection {
    std::size_t chosen;
    std::vector<CandidateCount> table;
};

// Runs the complete-data algorithm for each candidate c and picks the count
// with the smallest Xie-Beni index; ties and skipped (degenerate) candidates
// resolve toward the smallest c. Each candidate runs from seed mix64(seed ^ c).
inline CountSelection select_cluster_count(const DataSet& data, std::size_t c_min,
                                           std::size_t c_max, const Parameters& base_params,
                                           std::uint64_t seed) {
    if (c_min < 2 || c_min > c_max || c_max >= data.n())
        throw ConfigError("select_cluster_count: need 2 <= c_min <= c_max < n");
    CountSelection sel;
    sel.chosen = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = c_min; c <= c_max; ++c) {
        Parameters p = base_params;
        p.c = c;
        CandidateCount cand{c, std::numeric_limits<double>::quiet_NaN(), false};
        try {
            const RunResult r = run_pfcm(data, p, mix64(seed ^ c));
            cand.xb = xie_beni(data, r.partition.u, r.centroids, p.m);
            if (cand.xb < best) {
                best = cand.xb;
                sel.chosen = c;
            }
        } catch (const DegenerateError&) {
            cand.degenerate = true;
        }
        sel.table.push_back(cand);
    }
    if (sel.chosen == 0)
        throw DegenerateError("select_cluster_count: every candidate count was degenerate");
    return sel;
}

}  // namespace pfcm
