#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace groklab {

// Dense row-major matrix. Deliberately minimal: the numeric routines in this
// project operate on raw loops, not expression templates.
template <typename T>
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T{}) {}

    T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }
};

using RMat = Mat<double>;
using CMat = Mat<std::complex<double>>;

inline double frobenius_norm(const RMat& m) {
    double s = 0.0;
    for (double v : m.data) s += v * v;
    return std::sqrt(s);
}

inline double frobenius_norm(const CMat& m) {
    double s = 0.0;
    for (const auto& v : m.data) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace groklab
