#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pfcm/dataset.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/rng.hpp"

namespace pfcm {

struct InjectionSpec {
    double fraction = 0.0;  // missing-cell fraction in [0,1)
    std::uint64_t seed = 0;
};

// Marks exactly round(fraction * n * s) cells as missing, chosen uniformly at
// random with rejection so that every row and every column keeps at least one
// observed cell. Values are preserved under the mask for later auditing; only
// the mask changes.
inline DataSet inject_missing(const DataSet& data, const InjectionSpec& spec) {
    if (!data.mask.all_observed())
        throw DataError("inject_missing: input must be complete");
    if (spec.fraction < 0.0 || spec.fraction >= 1.0)
        throw ConfigError("inject_missing: fraction must lie in [0,1)");

    const std::size_t n = data.n(), s = data.s();
    const auto target = static_cast<std::size_t>(
        std::llround(spec.fraction * static_cast<double>(n) * static_cast<double>(s)));
    const std::size_t max_removable = n * s - std::max(n, s);
    if (target > max_removable)
        throw ConfigError("inject_missing: fraction " + std::to_string(spec.fraction) +
                          " leaves some row or column without observed cells");

    DataSet out = data;
    std::vector<std::size_t> row_obs(n, s), col_obs(s, n);
    Rng rng(spec.seed);
    std::size_t placed = 0, attempts = 0;
    const std::size_t attempt_cap = 1000 * n * s + 1000;
    while (placed < target) {
        if (++attempts > attempt_cap)
            throw ConfigError("inject_missing: could not satisfy coverage constraints");
        const std::size_t k = rng.next_index(n);
        const std::size_t j = rng.next_index(s);
        if (!out.mask.observed(k, j)) continue;
        if (row_obs[k] <= 1 || col_obs[j] <= 1) continue;
        out.mask.set(k, j, false);
        --row_obs[k];
        --col_obs[j];
        ++placed;
    }
    return out;
}

}  // namespace pfcm
