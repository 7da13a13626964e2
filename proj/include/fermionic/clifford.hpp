#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "fermionic/algebra.hpp"
#include "fermionic/metric.hpp"
#include "fermionic/multivector.hpp"

namespace fermionic {

// Scale on the inner product interpolating wedge (hbar = 0) and the Clifford
// product of g (hbar = 1).
struct DeformationParameter {
    double hbar = 1.0;

    explicit DeformationParameter(double value) : hbar(value) {
        if (!(hbar >= 0.0)) throw InvalidParameter("hbar must be nonnegative");
    }
};

namespace detail {

// Left Clifford multiplication by a basis vector: x·M = x ∧ M + ι_x M,
// with the contraction taken in the rescaled metric ħ·g.
inline Multivector vector_clifford_mul(int bit, const Multivector& m, const Metric& g, double hbar) {
    Multivector out(m.dim());
    const std::uint32_t vbit = 1u << bit;
    for (const auto& [mask, c] : m.terms()) {
        if (!(mask & vbit)) out.add_term(mask | vbit, merge_sign(vbit, mask) * c);
        if (hbar != 0.0) out += contract_basis(bit, mask, g, hbar * c);
    }
    return out;
}

inline Multivector clifford_blades(std::uint32_t ma, std::uint32_t mb, const Metric& g, double hbar);

inline Multivector clifford_mv_blade(const Multivector& a, std::uint32_t mb, const Metric& g,
                                     double hbar) {
    Multivector out(a.dim());
    for (const auto& [mask, c] : a.terms()) out += c * clifford_blades(mask, mb, g, hbar);
    return out;
}

// Clifford product of two unit blades. Peels the leading vector of the left
// blade with e_I = e_{i0}·e_{I'} − ι_{i0} e_{I'} and recurses; the second term
// drops the left grade by two, so the recursion terminates.
inline Multivector clifford_blades(std::uint32_t ma, std::uint32_t mb, const Metric& g, double hbar) {
    const int n = g.dim();
    if (ma == 0) {
        Multivector out(n);
        out.add_term(mb, 1.0);
        return out;
    }
    const int i0 = std::countr_zero(ma);
    const std::uint32_t rest = ma & (ma - 1u);

    Multivector out = vector_clifford_mul(i0, clifford_blades(rest, mb, g, hbar), g, hbar);
    if (hbar != 0.0 && rest != 0) {
        const Multivector correction = contract_basis(i0, rest, g, hbar);
        out -= clifford_mv_blade(correction, mb, g, hbar);
    }
    return out;
}

}  // namespace detail

// Clifford product on the whole algebra, metric ħ·g. Associative; the scalar 1
// is the unit; reduces to the wedge product exactly at ħ = 0.
inline Multivector clifford_product(const Multivector& a, const Multivector& b, const Metric& m,
                                    DeformationParameter h) {
    a.require_same_dim(b);
    if (a.dim() != m.dim()) throw DimMismatch();
    Multivector out(a.dim());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            out += (ca * cb) * detail::clifford_blades(ma, mb, m, h.hbar);
    return out;
}

namespace detail {

// One Wick pairing pass for a pair of blades: every way of contracting
// vectors of the left word against vectors of the right word, each pairing
// weighted by the sign of the minimal permutation that makes the contracted
// vectors adjacent. Kept deliberately separate from the recursive product:
// the two routes check each other.
struct WickEnumerator {
    const Metric& g;
    double hbar;
    std::vector<int> word;   // 0-based basis indices, left blade then right blade
    int left_size;
    std::vector<int> partner;  // partner position or -1, per position
    Multivector* out;
    double scale;

    void run(int jpos) {
        const int total = static_cast<int>(word.size());
        if (jpos == total) {
            emit();
            return;
        }
        partner[jpos] = -1;
        run(jpos + 1);  // leave this right-hand vector uncontracted
        for (int u = 0; u < left_size; ++u) {
            if (partner[u] != -1) continue;
            if (g.g(word[u], word[jpos]) == 0.0) continue;
            partner[u] = jpos;
            partner[jpos] = u;
            run(jpos + 1);
            partner[u] = -1;
            partner[jpos] = -1;
        }
    }

    void emit() {
        const int total = static_cast<int>(word.size());
        std::vector<char> alive(word.size(), 1);
        int parity = 0;
        double factor = 1.0;
        for (int u = 0; u < left_size; ++u) {
            const int v = partner[u];
            if (v == -1) continue;
            for (int k = u + 1; k < v; ++k) parity += alive[k];
            alive[u] = 0;
            alive[v] = 0;
            factor *= hbar * g.g(word[u], word[v]);
        }
        std::uint32_t rest_left = 0, rest_right = 0;
        for (int k = 0; k < total; ++k) {
            if (!alive[k]) continue;
            if (k < left_size)
                rest_left |= 1u << word[k];
            else
                rest_right |= 1u << word[k];
        }
        if (rest_left & rest_right) return;
        const int sign = ((parity & 1) ? -1 : 1) * merge_sign(rest_left, rest_right);
        out->add_term(rest_left | rest_right, sign * factor * scale);
    }
};

}  // namespace detail

// Pairing-sum evaluation of the Clifford product. Factorially slower than
// clifford_product and used as its independent verifier.
inline Multivector clifford_product_wick(const Multivector& a, const Multivector& b, const Metric& m,
                                         DeformationParameter h) {
    a.require_same_dim(b);
    if (a.dim() != m.dim()) throw DimMismatch();
    Multivector out(a.dim());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            detail::WickEnumerator e{m, h.hbar, {}, 0, {}, &out, ca * cb};
            for (int k = 0; k < m.dim(); ++k)
                if (ma & (1u << k)) e.word.push_back(k);
            e.left_size = static_cast<int>(e.word.size());
            for (int k = 0; k < m.dim(); ++k)
                if (mb & (1u << k)) e.word.push_back(k);
            e.partner.assign(e.word.size(), -1);
            e.run(e.left_size);
        }
    }
    return out;
}

inline Multivector clifford_commutator(const Multivector& a, const Multivector& b, const Metric& m,
                                       DeformationParameter h) {
    return clifford_product(a, b, m, h) - clifford_product(b, a, m, h);
}

// Exact first-order-in-ħ part of the Clifford product: the single-contraction
// Wick terms. Equals d/dħ (AB) at ħ = 0 and ½{A,B}.
inline Multivector deformation_derivative(const Multivector& a, const Multivector& b,
                                          const Metric& m) {
    a.require_same_dim(b);
    if (a.dim() != m.dim()) throw DimMismatch();
    Multivector out(a.dim());
    for (const auto& [ma, ca] : a.terms()) {
        const int p = std::popcount(ma);
        for (const auto& [mb, cb] : b.terms()) {
            std::uint32_t rka = ma;
            while (rka != 0) {
                const int i = std::countr_zero(rka);
                rka &= rka - 1;
                const int ka = detail::position_in_mask(ma, i);  // 1-based
                std::uint32_t rkb = mb;
                while (rkb != 0) {
                    const int j = std::countr_zero(rkb);
                    rkb &= rkb - 1;
                    const double gij = m.g(i, j);
                    if (gij == 0.0) continue;
                    const std::uint32_t rest_a = ma & ~(1u << i);
                    const std::uint32_t rest_b = mb & ~(1u << j);
                    if (rest_a & rest_b) continue;
                    const int lb = detail::position_in_mask(mb, j);  // 1-based
                    const int between = (p - ka) + (lb - 1);
                    const int sign = ((between & 1) ? -1 : 1) * merge_sign(rest_a, rest_b);
                    out.add_term(rest_a | rest_b, sign * gij * ca * cb);
                }
            }
        }
    }
    return out;
}

}  // namespace fermionic
