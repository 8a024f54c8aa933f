#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pfcm/dataset.hpp"
#include "pfcm/distance.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/matrix.hpp"
#include "pfcm/parameters.hpp"
#include "pfcm/partition.hpp"
#include "pfcm/rng.hpp"

namespace pfcm {

// Distances below this are treated as coincidence with a centroid.
inline constexpr double kZeroDistance = 1e-12;
// Lower bound on the typicality scales; keeps the possibilistic update finite
// when a cluster collapses onto its members.
inline constexpr double kDeltaFloor = 1e-10;

// Fuzzy membership update: u_ik = 1 / sum_j (d2_ik / d2_jk)^(1/(m-1)).
// Columns containing a (near-)zero distance get the crisp singular assignment,
// all mass on the lowest-index coincident cluster.
inline Matrix fuzzy_memberships(const Matrix& d2, double m) {
    const std::size_t c = d2.rows(), n = d2.cols();
    const double expo = 1.0 / (m - 1.0);
    Matrix u(c, n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t coincident = c;
        for (std::size_t i = 0; i < c; ++i)
            if (d2(i, k) < kZeroDistance) {
                coincident = i;
                break;
            }
        if (coincident < c) {
            for (std::size_t i = 0; i < c; ++i) u(i, k) = (i == coincident) ? 1.0 : 0.0;
            continue;
        }
        for (std::size_t i = 0; i < c; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < c; ++j)
                sum += std::pow(d2(i, k) / d2(j, k), expo);
            u(i, k) = 1.0 / sum;
        }
    }
    return u;
}

// Typicality scales: delta_i = sum_k u_ik^m d2_ik / sum_k u_ik^m, floored.
inline std::vector<double> typicality_scales(const Matrix& u, const Matrix& d2, double m) {
    const std::size_t c = u.rows(), n = u.cols();
    std::vector<double> delta(c);
    for (std::size_t i = 0; i < c; ++i) {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double um = std::pow(u(i, k), m);
            num += um * d2(i, k);
            den += um;
        }
        const double d = den > 0.0 ? num / den : 0.0;
        delta[i] = d > kDeltaFloor ? d : kDeltaFloor;
    }
    return delta;
}

// Possibilistic membership update: t_ik = 1 / (1 + ((beta/delta_i) d2_ik)^(1/(tau-1))).
// beta = 0 gives t == 1 everywhere (the 0^x = 0 limit convention).
inline Matrix possibilistic_memberships(const Matrix& d2, const std::vector<double>& delta,
                                        double beta, double tau) {
    const std::size_t c = d2.rows(), n = d2.cols();
    const double expo = 1.0 / (tau - 1.0);
    Matrix t(c, n);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t k = 0; k < n; ++k)
            t(i, k) = 1.0 / (1.0 + std::pow(beta / delta[i] * d2(i, k), expo));
    return t;
}

// Weighted-mean centroid update, weights per `p.weight_form`.
inline Centroids update_centroids(const DataSet& data, const Matrix& u, const Matrix& t,
                                  const Parameters& p) {
    const std::size_t c = u.rows(), n = u.cols(), s = data.s();
    Matrix v(c, s);
    for (std::size_t i = 0; i < c; ++i) {
        double wsum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double w = combined_weight(u(i, k), t(i, k), p);
            wsum += w;
            const auto xk = data.values.row(k);
            for (std::size_t j = 0; j < s; ++j) v(i, j) += w * xk[j];
        }
        if (wsum <= 0.0)
            throw DegenerateError("update_centroids: cluster " + std::to_string(i) +
                                  " has zero total weight");
        for (std::size_t j = 0; j < s; ++j) v(i, j) /= wsum;
    }
    return Centroids{std::move(v)};
}

// Objective J = sum_k sum_i (alpha u^m + beta t^tau) d2 + sum_i delta_i sum_k (1-t)^tau.
// Always uses the classic interior weights, independent of p.weight_form.
inline double objective_value(const DataSet& data, const Matrix& u, const Matrix& t,
                              const std::vector<double>& delta, const Centroids& centroids,
                              const Parameters& p) {
    const Matrix d2 = squared_distances(data, centroids);
    const std::size_t c = u.rows(), n = u.cols();
    double j1 = 0.0, j2 = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        double penalty = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            j1 += (p.alpha * std::pow(u(i, k), p.m) + p.beta * std::pow(t(i, k), p.tau)) * d2(i, k);
            penalty += std::pow(1.0 - t(i, k), p.tau);
        }
        j2 += delta[i] * penalty;
    }
    return j1 + j2;
}

// Initial centroids: c distinct data points drawn without replacement.
inline Centroids initial_centroids(const DataSet& data, std::size_t c, Rng& rng) {
    const auto idx = rng.sample_distinct(data.n(), c);
    Matrix v(c, data.s());
    for (std::size_t i = 0; i < c; ++i) {
        const auto src = data.values.row(idx[i]);
        for (std::size_t j = 0; j < data.s(); ++j) v(i, j) = src[j];
    }
    return Centroids{std::move(v)};
}

namespace detail {

// One pass of the membership/centroid updates shared by the complete-data
// loop and the incomplete-data loops.
struct IterationState {
    Matrix u, t;
    std::vector<double> delta;
    Centroids next;
};

inline IterationState advance(const DataSet& data, const Centroids& current,
                              const Parameters& p) {
    IterationState st;
    const Matrix d2 = squared_distances(data, current);
    st.u = fuzzy_memberships(d2, p.m);
    st.delta = typicality_scales(st.u, d2, p.m);
    st.t = possibilistic_memberships(d2, st.delta, p.beta, p.tau);
    st.next = update_centroids(data, st.u, st.t, p);
    return st;
}

}  // namespace detail

// Complete-data alternating optimization. Convergence is declared when the
// Frobenius norm of the whole centroid-matrix change drops below epsilon;
// hitting the iteration cap instead is flagged, not an error.
inline RunResult run_pfcm(const DataSet& data, const Parameters& p, std::uint64_t seed) {
    if (!data.mask.all_observed())
        throw DataError("run_pfcm: dataset has missing values, use run_incomplete");
    validate_parameters(p, data.n());

    Rng rng(seed);
    Centroids v = initial_centroids(data, p.c, rng);

    RunResult result;
    result.imputed = data;
    for (std::size_t l = 1; l <= p.max_iter; ++l) {
        auto st = detail::advance(data, v, p);
        const double shift = frobenius_diff(st.next.v, v.v);
        v = std::move(st.next);
        result.partition = Partition{std::move(st.u), std::move(st.t), std::move(st.delta)};
        result.iterations = l;
        result.objective_trace.push_back(
            objective_value(data, result.partition.u, result.partition.t,
                            result.partition.delta, v, p));
        if (shift < p.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.centroids = std::move(v);
    return result;
}

}  // namespace pfcm
