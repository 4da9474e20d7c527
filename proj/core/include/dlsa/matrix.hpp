#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace dlsa {

/// Dense row-major matrix, sized once at construction.
template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, T init = T{})
        : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols, init) {}

    T& operator()(int r, int c) {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return v_[static_cast<size_t>(r) * cols_ + c];
    }
    const T& operator()(int r, int c) const {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return v_[static_cast<size_t>(r) * cols_ + c];
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    void fill(T x) { v_.assign(v_.size(), x); }
    const std::vector<T>& data() const { return v_; }

    bool operator==(const Mat&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> v_;
};

/// Dense rank-3 tensor (e.g. per-link per-commodity rates).
template <typename T>
class Ten3 {
public:
    Ten3() = default;
    Ten3(int d0, int d1, int d2, T init = T{})
        : d0_(d0), d1_(d1), d2_(d2),
          v_(static_cast<size_t>(d0) * d1 * d2, init) {}

    T& operator()(int i, int j, int k) {
        assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
        return v_[(static_cast<size_t>(i) * d1_ + j) * d2_ + k];
    }
    const T& operator()(int i, int j, int k) const {
        assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
        return v_[(static_cast<size_t>(i) * d1_ + j) * d2_ + k];
    }

    int dim0() const { return d0_; }
    int dim1() const { return d1_; }
    int dim2() const { return d2_; }
    const std::vector<T>& data() const { return v_; }

    bool operator==(const Ten3&) const = default;

private:
    int d0_ = 0, d1_ = 0, d2_ = 0;
    std::vector<T> v_;
};

}  // namespace dlsa
