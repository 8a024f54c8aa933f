#pragma once

#include "pfcm/dataset.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/matrix.hpp"
#include "pfcm/partition.hpp"

namespace pfcm {

// Entry (i,k) is the squared Euclidean distance between point k and centroid i,
// computed over all s features of the current (imputed) values.
inline Matrix squared_distances(const DataSet& data, const Centroids& centroids) {
    if (centroids.dim() != data.s())
        throw DataError("squared_distances: feature dimension mismatch");
    const std::size_t c = centroids.count(), n = data.n();
    Matrix d2(c, n);
    for (std::size_t i = 0; i < c; ++i) {
        const auto vi = centroids.v.row(i);
        for (std::size_t k = 0; k < n; ++k)
            d2(i, k) = squared_distance(data.values.row(k), vi);
    }
    return d2;
}

}  // namespace pfcm
