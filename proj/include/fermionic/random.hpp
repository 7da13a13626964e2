#pragma once

#include <bit>
#include <cstdint>
#include <random>

#include "fermionic/linalg.hpp"
#include "fermionic/metric.hpp"
#include "fermionic/multivector.hpp"

namespace fermionic {

// Seeded generator for the property suites. std::mt19937_64 output is pinned
// by the standard and the [0,1) mapping below avoids std::uniform_real_distribution,
// whose stream is implementation-defined; identical seeds therefore produce
// identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

// Homogeneous p-form with every grade-p blade coefficient uniform in [−1,1].
inline Multivector random_form(int dim, int grade, Rng& rng) {
    Multivector out(dim);
    for (std::uint32_t mask = 0; mask < (1u << dim); ++mask) {
        if (std::popcount(mask) != grade) continue;
        out.add_term(mask, rng.uniform_pm1());
    }
    return out;
}

// Inhomogeneous element with every blade coefficient uniform in [−1,1].
inline Multivector random_multivector(int dim, Rng& rng) {
    Multivector out(dim);
    for (std::uint32_t mask = 0; mask < (1u << dim); ++mask) out.add_term(mask, rng.uniform_pm1());
    return out;
}

// G = MᵀM + ½I with M uniform in [−1,1]: SPD with eigenvalues ≥ ½ and exact
// stored symmetry.
inline Metric random_spd_metric(int dim, Rng& rng) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = rng.uniform_pm1();
    Mat g(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            double s = (i == j) ? 0.5 : 0.0;
            for (int k = 0; k < dim; ++k) s += m(k, i) * m(k, j);
            g(i, j) = s;
            g(j, i) = s;
        }
    }
    return Metric(g);
}

// Anti-hermitian map w.r.t. g: H = G⁻¹S with S antisymmetric.
inline Generator random_generator(const Metric& metric, Rng& rng) {
    const int n = metric.dim();
    Mat s(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = rng.uniform_pm1();
            s(i, j) = v;
            s(j, i) = -v;
        }
    }
    return Generator(metric.gram_inverse() * s, metric);
}

inline OrthogonalMap random_orthogonal(const Metric& metric, Rng& rng) {
    const Generator h = random_generator(metric, rng);
    return OrthogonalMap(expm(h.matrix()), metric);
}

}  // namespace fermionic
