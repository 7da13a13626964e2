#pragma once

#include <cmath>
#include <utility>

#include "fermionic/errors.hpp"
#include "fermionic/linalg.hpp"

namespace fermionic {

inline constexpr int kMaxDim = 16;  // blade space has 2^dim components

// Inner product g on the phase space: an SPD Gram matrix. Symmetry must hold
// exactly as stored; positive-definiteness is established by Cholesky at
// construction. Immutable afterwards.
class Metric {
public:
    explicit Metric(Mat gram) : gram_(std::move(gram)) {
        const int n = gram_.n();
        if (n < 1) throw InvalidParameter("metric dimension must be at least 1");
        if (n > kMaxDim) throw DimTooLarge();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (gram_(i, j) != gram_(j, i)) throw NonSymmetric();
        const Mat chol = cholesky(gram_);  // throws NotPositiveDefinite
        det_ = 1.0;
        for (int i = 0; i < n; ++i) det_ *= chol(i, i) * chol(i, i);
        inverse_ = inverse(gram_);
    }

    static Metric identity(int n) { return Metric(Mat::identity(n)); }

    int dim() const { return gram_.n(); }
    const Mat& gram() const { return gram_; }
    const Mat& gram_inverse() const { return inverse_; }
    double det() const { return det_; }

    // g(e_i, e_j), 0-based indices
    double g(int i, int j) const { return gram_(i, j); }

private:
    Mat gram_;
    Mat inverse_;
    double det_ = 0.0;
};

inline Metric make_metric(const Mat& gram) { return Metric(gram); }

// Linear map on the phase space, (M eta)^a = M[a][b] eta^b.
class LinearMap {
public:
    explicit LinearMap(Mat matrix) : matrix_(std::move(matrix)) {
        if (!matrix_.all_finite()) throw InvalidParameter("linear map has non-finite entries");
    }

    int dim() const { return matrix_.n(); }
    const Mat& matrix() const { return matrix_; }

private:
    Mat matrix_;
};

// Adjoint with respect to g: M† = G⁻¹ Mᵀ G.
inline Mat adjoint(const Mat& m, const Metric& metric) {
    return metric.gram_inverse() * (m.transposed() * metric.gram());
}

// Canonical transformation: Uᵀ G U = G within tolerance, checked on construction.
class OrthogonalMap {
public:
    static constexpr double kTolerance = 1e-10;

    OrthogonalMap(Mat matrix, Metric metric)
        : map_(std::move(matrix)), metric_(std::move(metric)) {
        if (map_.dim() != metric_.dim()) throw DimMismatch();
        const Mat& u = map_.matrix();
        const Mat residual = u.transposed() * (metric_.gram() * u) - metric_.gram();
        if (residual.max_abs() > kTolerance)
            throw InvalidParameter("map does not preserve the inner product");
    }

    int dim() const { return map_.dim(); }
    const Mat& matrix() const { return map_.matrix(); }
    const Metric& metric() const { return metric_; }

private:
    LinearMap map_;
    Metric metric_;
};

// Generator of canonical transformations: H† = −H with respect to g.
class Generator {
public:
    static constexpr double kTolerance = 1e-10;

    Generator(Mat matrix, Metric metric)
        : map_(std::move(matrix)), metric_(std::move(metric)) {
        if (map_.dim() != metric_.dim()) throw DimMismatch();
        const Mat residual = adjoint(map_.matrix(), metric_) + map_.matrix();
        if (residual.max_abs() > kTolerance) throw NotAntiHermitian();
    }

    int dim() const { return map_.dim(); }
    const Mat& matrix() const { return map_.matrix(); }
    const Metric& metric() const { return metric_; }

private:
    LinearMap map_;
    Metric metric_;
};

}  // namespace fermionic
