#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pfcm/errors.hpp"

namespace pfcm {

// Dense row-major matrix of doubles. Small and deliberately boring: the
// algorithms in this library only need element access and row views.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
        std::size_t i = 0;
        for (const auto& r : rows) {
            if (r.size() != m.cols_) throw DataError("Matrix::from_rows: ragged rows");
            std::size_t j = 0;
            for (double v : r) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> flat() const { return {data_.data(), data_.size()}; }
    std::span<double> flat() { return {data_.data(), data_.size()}; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        d2 += diff * diff;
    }
    return d2;
}

// Frobenius norm of the elementwise difference.
inline double frobenius_diff(const Matrix& a, const Matrix& b) {
    double sum = 0.0;
    const auto fa = a.flat(), fb = b.flat();
    for (std::size_t i = 0; i < fa.size(); ++i) {
        const double d = fa[i] - fb[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace pfcm
