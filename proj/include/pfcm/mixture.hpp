#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pfcm/dataset.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/matrix.hpp"
#include "pfcm/rng.hpp"

namespace pfcm {

struct MixtureComponent {
    std::vector<double> mean;
    Matrix covariance;  // s x s, symmetric positive-definite
    double weight = 0.0;
};

struct MixtureSpec {
    std::vector<MixtureComponent> components;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    std::size_t dim() const { return components.empty() ? 0 : components[0].mean.size(); }
};

// Lower-triangular Cholesky factor; rejects non-SPD input.
inline Matrix cholesky(const Matrix& a) {
    const std::size_t s = a.rows();
    if (a.cols() != s) throw ConfigError("cholesky: matrix not square");
    Matrix l(s, s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            if (i == j) {
                if (sum <= 0.0)
                    throw ConfigError("covariance matrix is not positive-definite");
                l(i, i) = std::sqrt(sum);
            } else {
                l(i, j) = sum / l(j, j);
            }
        }
    }
    return l;
}

inline void validate_mixture(const MixtureSpec& spec) {
    if (spec.components.empty()) throw ConfigError("mixture: no components");
    if (spec.n < 2) throw ConfigError("mixture: need n >= 2");
    const std::size_t s = spec.dim();
    if (s == 0) throw ConfigError("mixture: zero-dimensional mean");
    double wsum = 0.0;
    for (const auto& comp : spec.components) {
        if (comp.mean.size() != s) throw ConfigError("mixture: component dimensions differ");
        if (comp.covariance.rows() != s || comp.covariance.cols() != s)
            throw ConfigError("mixture: covariance shape mismatch");
        if (!(comp.weight > 0.0)) throw ConfigError("mixture: weights must be positive");
        wsum += comp.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw ConfigError("mixture: weights must sum to 1 (got " + std::to_string(wsum) + ")");
}

struct GeneratedMixture {
    DataSet data;                      // all-true mask
    std::vector<std::size_t> labels;   // ground-truth component per point
};

// Samples n points: component by categorical weight, then mean + L*z with
// L the Cholesky factor and z standard normal. Deterministic per seed.
inline GeneratedMixture generate_mixture(const MixtureSpec& spec) {
    validate_mixture(spec);
    const std::size_t s = spec.dim();

    std::vector<Matrix> factors;
    factors.reserve(spec.components.size());
    for (const auto& comp : spec.components) factors.push_back(cholesky(comp.covariance));

    Rng rng(spec.seed);
    Matrix values(spec.n, s);
    std::vector<std::size_t> labels(spec.n);
    std::vector<double> z(s);
    for (std::size_t k = 0; k < spec.n; ++k) {
        const double pick = rng.next_double();
        std::size_t comp = spec.components.size() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < spec.components.size(); ++i) {
            acc += spec.components[i].weight;
            if (pick < acc) {
                comp = i;
                break;
            }
        }
        labels[k] = comp;
        for (std::size_t j = 0; j < s; ++j) z[j] = rng.next_normal();
        const auto& l = factors[comp];
        const auto& mean = spec.components[comp].mean;
        for (std::size_t j = 0; j < s; ++j) {
            double x = mean[j];
            for (std::size_t q = 0; q <= j; ++q) x += l(j, q) * z[q];
            values(k, j) = x;
        }
    }
    return GeneratedMixture{DataSet::complete(std::move(values)), std::move(labels)};
}

// Two equal-weight components with identity covariance, the second mean
// offset by `separation` along every axis.
inline MixtureSpec default_two_component(std::size_t n, std::size_t s, std::uint64_t seed,
                                         double separation = 8.0) {
    MixtureSpec spec;
    spec.n = n;
    spec.seed = seed;
    Matrix identity(s, s);
    for (std::size_t j = 0; j < s; ++j) identity(j, j) = 1.0;
    spec.components.push_back({std::vector<double>(s, 0.0), identity, 0.5});
    spec.components.push_back({std::vector<double>(s, separation), identity, 0.5});
    return spec;
}

}  // namespace pfcm
