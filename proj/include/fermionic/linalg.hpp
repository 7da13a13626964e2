#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fermionic/errors.hpp"

namespace fermionic {

// Small dense square matrix, row-major. Sized for phase spaces (n <= 16),
// so everything below is plain O(n^3) with nothing fancier than partial
// pivoting.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int n() const { return n_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    Mat transposed() const {
        Mat t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double inf_norm() const {
        // max absolute row sum
        double best = 0.0;
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    double max_abs() const {
        double best = 0.0;
        for (double v : a_) best = std::max(best, std::abs(v));
        return best;
    }

    bool all_finite() const {
        for (double v : a_) {
            if (!std::isfinite(v)) return false;
        }
        return true;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat c(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat c(a.n_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
        return c;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat c(a.n_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
        return c;
    }

    friend Mat operator*(double s, const Mat& a) {
        Mat c(a.n_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = s * a.a_[i];
        return c;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s;
        }
        return y;
    }

private:
    int n_ = 0;
    std::vector<double> a_;
};

// Lower Cholesky factor of an SPD matrix. Throws NotPositiveDefinite on a
// nonpositive pivot.
inline Mat cholesky(const Mat& g) {
    const int n = g.n();
    Mat l(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) throw NotPositiveDefinite();
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

// Determinant via LU with partial pivoting; returns 0 for singular input.
inline double determinant(Mat m) {
    const int n = m.n();
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (m(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = m(r, col) / m(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return det;
}

// Gauss-Jordan inverse with partial pivoting.
inline Mat inverse(Mat m) {
    const int n = m.n();
    Mat inv = Mat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (m(piv, col) == 0.0) throw InvalidParameter("matrix is singular");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const double d = m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                m(r, j) -= f * m(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Matrix exponential by scaling-and-squaring with a Taylor series on the
// scaled matrix. The series is summed until the term norm falls below
// 1e-13 relative, then squared back up; adequate to machine precision for
// the n <= 16 matrices used here.
inline Mat expm(const Mat& a) {
    const int n = a.n();
    const double norm = a.inf_norm();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Mat b = scale * a;

    Mat result = Mat::identity(n);
    Mat term = Mat::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = (1.0 / k) * (term * b);
        result = result + term;
        if (term.max_abs() <= 1e-13 * std::max(1.0, result.max_abs()) && k >= 4) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

}  // namespace fermionic
