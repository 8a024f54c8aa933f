#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pfcm/errors.hpp"
#include "pfcm/matrix.hpp"

namespace pfcm {

// Boolean observation mask aligned with a data matrix; true = observed.
class Mask {
public:
    Mask() = default;
    Mask(std::size_t rows, std::size_t cols, bool fill = true)
        : rows_(rows), cols_(cols), bits_(rows * cols, fill ? 1 : 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool observed(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool value) { bits_[i * cols_ + j] = value ? 1 : 0; }

    bool all_observed() const {
        for (const auto b : bits_)
            if (!b) return false;
        return true;
    }

    std::size_t missing_count() const {
        std::size_t n = 0;
        for (const auto b : bits_) n += (b == 0);
        return n;
    }

    std::size_t observed_in_row(std::size_t i) const {
        std::size_t n = 0;
        for (std::size_t j = 0; j < cols_; ++j) n += observed(i, j);
        return n;
    }

    std::size_t observed_in_col(std::size_t j) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < rows_; ++i) n += observed(i, j);
        return n;
    }

    bool operator==(const Mask& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<unsigned char> bits_;
};

// An n x s numeric table together with its observation mask. Missing cells
// hold the placeholder 0.0 until an imputation pass overwrites them, so the
// numeric kernels never see non-finite values.
struct DataSet {
    Matrix values;
    Mask mask;

    DataSet() = default;
    DataSet(Matrix v, Mask m) : values(std::move(v)), mask(std::move(m)) { validate(*this); }

    static DataSet complete(Matrix v) {
        Mask m(v.rows(), v.cols(), true);
        return DataSet(std::move(v), std::move(m));
    }

    std::size_t n() const { return values.rows(); }
    std::size_t s() const { return values.cols(); }

    bool row_complete(std::size_t k) const { return mask.observed_in_row(k) == s(); }

    // Enforces the structural invariants: shape agreement, n >= 2, s >= 1,
    // at least one observed cell in every row and column, every cell finite.
    // Masked cells must hold a defined value (0.0 placeholder at load time,
    // possibly an audit or imputed value later) so arithmetic never sees
    // non-finite input.
    static void validate(const DataSet& d) {
        if (d.values.rows() != d.mask.rows() || d.values.cols() != d.mask.cols())
            throw DataError("DataSet: value/mask shape mismatch");
        if (d.n() < 2) throw DataError("DataSet: need at least 2 data points");
        if (d.s() < 1) throw DataError("DataSet: need at least 1 feature");
        for (std::size_t k = 0; k < d.n(); ++k)
            if (d.mask.observed_in_row(k) == 0)
                throw DataError("DataSet: row " + std::to_string(k) + " has no observed cell");
        for (std::size_t j = 0; j < d.s(); ++j)
            if (d.mask.observed_in_col(j) == 0)
                throw DataError("DataSet: column " + std::to_string(j) + " has no observed cell");
        for (std::size_t k = 0; k < d.n(); ++k)
            for (std::size_t j = 0; j < d.s(); ++j)
                if (!std::isfinite(d.values(k, j)))
                    throw DataError("DataSet: non-finite value at (" + std::to_string(k) + "," +
                                    std::to_string(j) + ")");
    }
};

// Column mean/stddev over observed cells only, then (x - mean) / std per cell.
// Columns with zero spread are left centered but unscaled.
inline DataSet zscore(const DataSet& d) {
    DataSet out = d;
    for (std::size_t j = 0; j < d.s(); ++j) {
        double sum = 0.0;
        std::size_t cnt = 0;
        for (std::size_t k = 0; k < d.n(); ++k)
            if (d.mask.observed(k, j)) {
                sum += d.values(k, j);
                ++cnt;
            }
        const double mean = sum / static_cast<double>(cnt);
        double ss = 0.0;
        for (std::size_t k = 0; k < d.n(); ++k)
            if (d.mask.observed(k, j)) {
                const double c = d.values(k, j) - mean;
                ss += c * c;
            }
        const double sd = std::sqrt(ss / static_cast<double>(cnt));
        for (std::size_t k = 0; k < d.n(); ++k)
            if (d.mask.observed(k, j))
                out.values(k, j) = sd > 0.0 ? (d.values(k, j) - mean) / sd : d.values(k, j) - mean;
    }
    return out;
}

}  // namespace pfcm
