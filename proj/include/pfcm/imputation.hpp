#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pfcm/dataset.hpp"
#include "pfcm/engine.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/parameters.hpp"
#include "pfcm/partition.hpp"

namespace pfcm {

// The two missing-value update rules. OCS rewrites each missing cell as the
// weight-blended centroid coordinate; NPS copies the coordinate of the
// nearest centroid.
enum class Strategy { OCS, NPS };

inline const char* strategy_name(Strategy s) { return s == Strategy::OCS ? "ocs" : "nps"; }

// Initial fill: every missing cell (k,j) takes an observed value drawn
// uniformly at random from the observed entries of the same column j.
// Consumes no draws when nothing is missing.
inline DataSet init_missing(const DataSet& data, Rng& rng) {
    DataSet out = data;
    std::vector<std::vector<std::size_t>> observed_rows(data.s());
    for (std::size_t j = 0; j < data.s(); ++j)
        for (std::size_t k = 0; k < data.n(); ++k)
            if (data.mask.observed(k, j)) observed_rows[j].push_back(k);
    for (std::size_t k = 0; k < data.n(); ++k)
        for (std::size_t j = 0; j < data.s(); ++j)
            if (!data.mask.observed(k, j)) {
                const auto& col = observed_rows[j];
                out.values(k, j) = data.values(col[rng.next_index(col.size())], j);
            }
    return out;
}

inline DataSet init_missing(const DataSet& data, std::uint64_t seed) {
    Rng rng(seed);
    return init_missing(data, rng);
}

// Optimal completion update. For each missing cell (k,j):
//   y_kj = sum_i w_ik v_ij / sum_i w_ik,   w_ik per p.weight_form.
// The summation runs over clusters; the per-point weights make the imputation
// a convex combination of the centroid coordinates of column j.
inline DataSet ocs_impute(const DataSet& data, const Matrix& u, const Matrix& t,
                          const Centroids& centroids, const Parameters& p) {
    DataSet out = data;
    const std::size_t c = centroids.count();
    std::vector<double> w(c);
    for (std::size_t k = 0; k < data.n(); ++k) {
        if (data.mask.observed_in_row(k) == data.s()) continue;
        double wsum = 0.0;
        for (std::size_t i = 0; i < c; ++i) {
            w[i] = combined_weight(u(i, k), t(i, k), p);
            wsum += w[i];
        }
        if (wsum <= 0.0)
            throw DegenerateError("ocs_impute: point " + std::to_string(k) +
                                  " has zero total weight");
        for (std::size_t j = 0; j < data.s(); ++j) {
            if (data.mask.observed(k, j)) continue;
            double acc = 0.0;
            for (std::size_t i = 0; i < c; ++i) acc += w[i] * centroids.v(i, j);
            out.values(k, j) = acc / wsum;
        }
    }
    return out;
}

// Nearest prototype update. Each point with missing cells copies the
// corresponding coordinates of its nearest centroid, nearest by the
// full-dimensional squared distance over the current imputed values.
// Ties go to the lowest cluster index.
inline DataSet nps_impute(const DataSet& data, const Centroids& centroids) {
    DataSet out = data;
    const std::size_t c = centroids.count();
    for (std::size_t k = 0; k < data.n(); ++k) {
        if (data.mask.observed_in_row(k) == data.s()) continue;
        std::size_t nearest = 0;
        double best = squared_distance(data.values.row(k), centroids.v.row(0));
        for (std::size_t i = 1; i < c; ++i) {
            const double d2 = squared_distance(data.values.row(k), centroids.v.row(i));
            if (d2 < best) {
                best = d2;
                nearest = i;
            }
        }
        for (std::size_t j = 0; j < data.s(); ++j)
            if (!data.mask.observed(k, j)) out.values(k, j) = centroids.v(nearest, j);
    }
    return out;
}

// Incomplete-data loop: random fill, random centroid init, then the usual
// membership/centroid updates with the strategy's imputation applied after
// every failed convergence check. Observed cells are never touched. The
// returned imputed dataset carries an all-true mask.
inline RunResult run_incomplete(const DataSet& data, const Parameters& p, Strategy strategy,
                                std::uint64_t seed) {
    validate_parameters(p, data.n());
    DataSet::validate(data);

    Rng rng(seed);
    DataSet working = init_missing(data, rng);
    Centroids v = initial_centroids(working, p.c, rng);

    RunResult result;
    for (std::size_t l = 1; l <= p.max_iter; ++l) {
        auto st = detail::advance(working, v, p);
        const double shift = frobenius_diff(st.next.v, v.v);
        v = std::move(st.next);
        result.partition = Partition{std::move(st.u), std::move(st.t), std::move(st.delta)};
        result.iterations = l;
        result.objective_trace.push_back(
            objective_value(working, result.partition.u, result.partition.t,
                            result.partition.delta, v, p));
        if (shift < p.epsilon) {
            result.converged = true;
            break;
        }
        working = strategy == Strategy::OCS
                      ? ocs_impute(working, result.partition.u, result.partition.t, v, p)
                      : nps_impute(working, v);
    }
    result.centroids = std::move(v);
    working.mask = Mask(working.n(), working.s(), true);
    result.imputed = std::move(working);
    return result;
}

}  // namespace pfcm
