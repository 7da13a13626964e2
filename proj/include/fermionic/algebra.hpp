#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "fermionic/metric.hpp"
#include "fermionic/multivector.hpp"

namespace fermionic {

namespace detail {

// 1-based position of set bit `bit` within `mask` (how many lower bits are set, plus one).
inline int position_in_mask(std::uint32_t mask, int bit) {
    return std::popcount(mask & ((1u << bit) - 1u)) + 1;
}

// Contraction of a basis covector g(e_a, ·) into a blade:
//   iota_a(e_J) = Σ_l (−1)^{l−1} g(a, j_l) e_{J \ j_l}
// with l the 1-based position of j_l inside J. `a` is a 0-based bit index.
inline Multivector contract_basis(int a, std::uint32_t mask, const Metric& m, double scale) {
    Multivector out(m.dim());
    std::uint32_t rest = mask;
    while (rest != 0) {
        const int j = std::countr_zero(rest);
        rest &= rest - 1;
        const double gij = m.g(a, j);
        if (gij == 0.0) continue;
        const int sign = (position_in_mask(mask, j) & 1) ? 1 : -1;
        out.add_term(mask & ~(1u << j), sign * gij * scale);
    }
    return out;
}

}  // namespace detail

// Casalbuoni bracket, the fermionic analog of the Poisson bracket. It is the
// unique bilinear bracket with {η,η'} = 2 g(η,η') that obeys the graded
// Leibniz rule; on blades it contracts one slot of each factor:
//   {e_I, e_J} = 2 Σ_{k,l} (−1)^{p−k} (−1)^{l−1} g(i_k, j_l) e_{I\i_k} ∧ e_{J\j_l}
// (k, l are 1-based positions within I and J). Degree −2; {scalar, ·} = 0.
inline Multivector casalbuoni_bracket(const Multivector& a, const Multivector& b, const Metric& m) {
    a.require_same_dim(b);
    if (a.dim() != m.dim()) throw DimMismatch();
    Multivector out(a.dim());
    for (const auto& [ma, ca] : a.terms()) {
        const int p = std::popcount(ma);
        if (p == 0) continue;
        for (const auto& [mb, cb] : b.terms()) {
            if (mb == 0) continue;
            std::uint32_t ra = ma;
            while (ra != 0) {
                const int i = std::countr_zero(ra);
                ra &= ra - 1;
                const int ka = detail::position_in_mask(ma, i);
                const int sign_a = ((p - ka) & 1) ? -1 : 1;
                const std::uint32_t rest_a = ma & ~(1u << i);
                std::uint32_t rb = mb;
                while (rb != 0) {
                    const int j = std::countr_zero(rb);
                    rb &= rb - 1;
                    const double gij = m.g(i, j);
                    if (gij == 0.0) continue;
                    const std::uint32_t rest_b = mb & ~(1u << j);
                    if (rest_a & rest_b) continue;
                    const int sign_b = (detail::position_in_mask(mb, j) & 1) ? 1 : -1;
                    const int sign_w = merge_sign(rest_a, rest_b);
                    out.add_term(rest_a | rest_b,
                                 2.0 * sign_a * sign_b * sign_w * gij * ca * cb);
                }
            }
        }
    }
    return out;
}

// Determinant of the Gram submatrix picked out by two equal-grade blades.
inline double gram_minor(std::uint32_t ma, std::uint32_t mb, const Metric& m) {
    const int p = std::popcount(ma);
    if (p == 0) return 1.0;
    int rows[kMaxDim], cols[kMaxDim];
    int r = 0;
    for (int k = 0; k < m.dim(); ++k)
        if (ma & (1u << k)) rows[r++] = k;
    int c = 0;
    for (int k = 0; k < m.dim(); ++k)
        if (mb & (1u << k)) cols[c++] = k;
    Mat sub(p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) sub(i, j) = m.g(rows[i], cols[j]);
    return determinant(sub);
}

// Inner product extended to the whole algebra: blades of different grade are
// orthogonal; equal-grade blades pair to the Gram submatrix determinant.
inline double extended_inner(const Multivector& a, const Multivector& b, const Metric& m) {
    a.require_same_dim(b);
    if (a.dim() != m.dim()) throw DimMismatch();
    double sum = 0.0;
    for (const auto& [ma, ca] : a.terms()) {
        const int p = std::popcount(ma);
        for (const auto& [mb, cb] : b.terms()) {
            if (std::popcount(mb) != p) continue;
            sum += ca * cb * gram_minor(ma, mb, m);
        }
    }
    return sum;
}

// Volume element with positive orientation: (det G)^{−1/2} e_{1…n}, so that
// <ε,ε> = 1.
inline Multivector epsilon(const Metric& m) {
    const std::uint32_t top = (1u << m.dim()) - 1u;
    Multivector out(m.dim());
    out.add_term(top, 1.0 / std::sqrt(m.det()));
    return out;
}

// The two distinguished linear functionals: i(A) = <1,A> and ∫A = <ε,A>.
inline std::pair<double, double> distinguished_functionals(const Multivector& a, const Metric& m) {
    if (a.dim() != m.dim()) throw DimMismatch();
    return {a.scalar_part(), extended_inner(epsilon(m), a, m)};
}

// First-slot contraction (∇_a ω)^{b…} = g_ac ω^{cb…}, one multivector per
// slot a = 1…n. Lowers grade by one; annihilates scalars.
inline std::vector<Multivector> derivative(const Multivector& a, const Metric& m) {
    if (a.dim() != m.dim()) throw DimMismatch();
    std::vector<Multivector> out;
    out.reserve(static_cast<std::size_t>(m.dim()));
    for (int slot = 0; slot < m.dim(); ++slot) {
        Multivector d(a.dim());
        for (const auto& [mask, c] : a.terms()) {
            if (mask == 0) continue;
            d += detail::contract_basis(slot, mask, m, c);
        }
        out.push_back(std::move(d));
    }
    return out;
}

// Anti-hermitian maps and 2-forms are canonically isomorphic via
// H^{ab} = H^a_c g^{cb}, i.e. the matrix H·G⁻¹ read as blade coefficients
// (coefficient on e_{ij}, i<j, is the component with a=i, b=j).
inline Multivector generator_to_two_form(const Generator& h) {
    const Mat f = h.matrix() * h.metric().gram_inverse();
    const int n = h.dim();
    Multivector out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.add_term((1u << i) | (1u << j), f(i, j));
    return out;
}

inline Generator two_form_to_generator(const Multivector& a, const Metric& m) {
    if (a.dim() != m.dim()) throw DimMismatch();
    const int n = m.dim();
    Mat f(n);
    for (const auto& [mask, c] : a.terms()) {
        if (std::popcount(mask) != 2) throw NotTwoForm();
        const int i = std::countr_zero(mask);
        const int j = std::countr_zero(mask & (mask - 1u));
        f(i, j) = c;
        f(j, i) = -c;
    }
    return Generator(f * m.gram(), m);
}

// Automorphism action of a canonical transformation: each basis vector of a
// blade is pushed through U and the images are wedged back together.
inline Multivector apply_orthogonal(const OrthogonalMap& u, const Multivector& a) {
    if (u.dim() != a.dim()) throw DimMismatch();
    const int n = a.dim();
    std::vector<Multivector> images;
    images.reserve(static_cast<std::size_t>(n));
    for (int col = 0; col < n; ++col) {
        Multivector v(n);
        for (int row = 0; row < n; ++row) v.add_term(1u << row, u.matrix()(row, col));
        images.push_back(std::move(v));
    }
    Multivector out(n);
    for (const auto& [mask, c] : a.terms()) {
        Multivector img = Multivector::scalar(n, c);
        std::uint32_t rest = mask;
        while (rest != 0) {
            const int k = std::countr_zero(rest);
            rest &= rest - 1;
            img = wedge(img, images[static_cast<std::size_t>(k)]);
        }
        out += img;
    }
    return out;
}

}  // namespace fermionic
