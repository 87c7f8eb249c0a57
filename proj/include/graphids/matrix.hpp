#pragma once

#include <cstddef>
#include <vector>

namespace graphids {

// Dense square matrix, row-major. Everything here is K x K with small K.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int n, double fill = 0.0) : n_(n), v_(static_cast<std::size_t>(n) * n, fill) {}

    int size() const { return n_; }
    double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * n_ + j]; }

    bool operator==(const Matrix&) const = default;

    // y = A x
    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(n_, 0.0);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

  private:
    int n_ = 0;
    std::vector<double> v_;
};

inline Matrix identity_matrix(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

inline Matrix ones_matrix(int n) { return Matrix(n, 1.0); }

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double sum(const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x;
    return s;
}

// Lowest index wins ties throughout the library.
inline int argmax_lowest(const std::vector<double>& a) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(a.size()); ++i)
        if (a[i] > a[best]) best = i;
    return best;
}

} // namespace graphids
