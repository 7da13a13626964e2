#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "fermionic/errors.hpp"
#include "fermionic/metric.hpp"

namespace fermionic {

// Basis blade e_{i1} ∧ … ∧ e_{ip}, stored as a bitmask: bit k set means basis
// index k+1 participates. The empty mask is the scalar blade. Public index
// lists are 1-based and strictly ascending, matching the rest of the engine.
class Blade {
public:
    Blade() = default;
    explicit Blade(std::uint32_t mask) : mask_(mask) {}

    static Blade from_indices(const std::vector<int>& indices, int dim) {
        std::uint32_t mask = 0;
        int prev = 0;
        for (int i : indices) {
            if (i <= prev) throw InvalidParameter("blade indices must be strictly ascending");
            if (i > dim) throw InvalidParameter("blade index exceeds dimension");
            mask |= 1u << (i - 1);
            prev = i;
        }
        return Blade(mask);
    }

    std::uint32_t mask() const { return mask_; }
    int grade() const { return std::popcount(mask_); }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (int k = 0; k < 32; ++k)
            if (mask_ & (1u << k)) out.push_back(k + 1);
        return out;
    }

    // "e" for the scalar blade, else "e" + concatenated indices ("e13").
    std::string label() const {
        std::string s = "e";
        for (int i : indices()) s += std::to_string(i);
        return s;
    }

    friend bool operator==(Blade a, Blade b) { return a.mask_ == b.mask_; }
    friend bool operator<(Blade a, Blade b) { return a.mask_ < b.mask_; }

private:
    std::uint32_t mask_ = 0;
};

// Parity of merging blade a in front of blade b: counts pairs (i ∈ a, j ∈ b)
// with i > j, i.e. the inversions of the concatenated index word.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
    int count = 0;
    a >>= 1;
    while (a != 0) {
        count += std::popcount(a & b);
        a >>= 1;
    }
    return (count & 1) ? -1 : 1;
}

// Element of the exterior algebra: a map from basis blades to real
// coefficients. Exact zeros are pruned after every operation; no epsilon
// thresholding happens inside the algebra.
class Multivector {
public:
    using Terms = std::map<std::uint32_t, double>;

    explicit Multivector(int dim) : dim_(check_dim(dim)) {}

    static Multivector zero(int dim) { return Multivector(dim); }

    static Multivector scalar(int dim, double value) {
        Multivector m(dim);
        m.add_term(0, value);
        return m;
    }

    static Multivector basis_vector(int dim, int index) {
        return blade(dim, {index}, 1.0);
    }

    // 1-based, strictly ascending indices.
    static Multivector blade(int dim, const std::vector<int>& indices, double coeff) {
        Multivector m(dim);
        m.add_term(Blade::from_indices(indices, dim).mask(), coeff);
        return m;
    }

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double coeff(std::uint32_t mask) const {
        auto it = terms_.find(mask);
        return it == terms_.end() ? 0.0 : it->second;
    }

    double coeff(const std::vector<int>& indices) const {
        return coeff(Blade::from_indices(indices, dim_).mask());
    }

    double scalar_part() const { return coeff(std::uint32_t{0}); }

    void add_term(std::uint32_t mask, double value) {
        auto [it, inserted] = terms_.try_emplace(mask, value);
        if (!inserted) it->second += value;
        if (it->second == 0.0) terms_.erase(it);
    }

    Multivector grade_part(int p) const {
        Multivector out(dim_);
        for (const auto& [mask, c] : terms_)
            if (std::popcount(mask) == p) out.add_term(mask, c);
        return out;
    }

    // Sorted list of grades with a nonzero component.
    std::vector<int> grades() const {
        std::vector<int> out;
        for (const auto& [mask, c] : terms_) {
            const int p = std::popcount(mask);
            if (out.empty() || out.back() != p) out.push_back(p);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    int max_grade() const {
        int best = 0;
        for (const auto& [mask, c] : terms_) best = std::max(best, std::popcount(mask));
        return best;
    }

    double inf_norm() const {
        double best = 0.0;
        for (const auto& [mask, c] : terms_) best = std::max(best, std::abs(c));
        return best;
    }

    Multivector& operator+=(const Multivector& other) {
        require_same_dim(other);
        for (const auto& [mask, c] : other.terms_) add_term(mask, c);
        return *this;
    }

    Multivector& operator-=(const Multivector& other) {
        require_same_dim(other);
        for (const auto& [mask, c] : other.terms_) add_term(mask, -c);
        return *this;
    }

    Multivector& operator*=(double s) {
        if (s == 0.0) {
            terms_.clear();
            return *this;
        }
        for (auto& [mask, c] : terms_) c *= s;
        return *this;
    }

    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator*(double s, Multivector a) { return a *= s; }
    friend Multivector operator*(Multivector a, double s) { return a *= s; }
    friend Multivector operator-(Multivector a) { return a *= -1.0; }

    void require_same_dim(const Multivector& other) const {
        if (dim_ != other.dim_) throw DimMismatch();
    }

private:
    static int check_dim(int dim) {
        if (dim < 1) throw InvalidParameter("dimension must be at least 1");
        if (dim > kMaxDim) throw DimTooLarge();
        return dim;
    }

    int dim_;
    Terms terms_;
};

inline double max_abs_diff(const Multivector& a, const Multivector& b) {
    return (a - b).inf_norm();
}

// Exterior product. On basis blades: zero when the index sets intersect,
// otherwise the merged blade times the inversion parity of the concatenation.
inline Multivector wedge(const Multivector& a, const Multivector& b) {
    a.require_same_dim(b);
    Multivector out(a.dim());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            out.add_term(ma | mb, merge_sign(ma, mb) * ca * cb);
        }
    }
    return out;
}

// Involution: (−1)^{p(p−1)/2} on p-forms.
inline Multivector dagger(const Multivector& a) {
    Multivector out(a.dim());
    for (const auto& [mask, c] : a.terms()) {
        const int p = std::popcount(mask);
        const int sign = ((p * (p - 1) / 2) & 1) ? -1 : 1;
        out.add_term(mask, sign * c);
    }
    return out;
}

}  // namespace fermionic
