#pragma once

#include <cstddef>
#include <vector>

#include "pfcm/dataset.hpp"
#include "pfcm/matrix.hpp"

namespace pfcm {

// Fuzzy memberships u (c x n, columns sum to 1), possibilistic memberships
// t (c x n, entries in (0,1]) and the per-cluster typicality scales delta.
struct Partition {
    Matrix u;
    Matrix t;
    std::vector<double> delta;

    std::size_t clusters() const { return u.rows(); }
    std::size_t points() const { return u.cols(); }
};

struct Centroids {
    Matrix v;  // c x s

    std::size_t count() const { return v.rows(); }
    std::size_t dim() const { return v.cols(); }
};

// Converged state of one clustering run. `imputed` carries the final data
// with an all-true mask; for complete-data runs it equals the input.
// `objective_trace` holds the objective value at the end of each iteration,
// recorded for diagnostics (the update rules are not exact coordinate
// minimizers of the printed objective, so the trace need not be monotone).
struct RunResult {
    Partition partition;
    Centroids centroids;
    std::size_t iterations = 0;
    bool converged = false;
    DataSet imputed;
    std::vector<double> objective_trace;
};

}  // namespace pfcm
