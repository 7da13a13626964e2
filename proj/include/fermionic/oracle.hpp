#pragma once

// Brute-force dense-tensor ground truth for the blade engine. Everything here
// evaluates the defining index formulas by explicit loops over index tuples
// and permutations, with its own parity bookkeeping; no sign helpers are
// shared with the engine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fermionic/metric.hpp"
#include "fermionic/multivector.hpp"

namespace fermionic::oracle {

inline constexpr int kOracleMaxDim = 6;

namespace detail {

inline double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

inline std::size_t pow_int(int n, int p) {
    std::size_t v = 1;
    for (int i = 0; i < p; ++i) v *= static_cast<std::size_t>(n);
    return v;
}

inline std::size_t flat_index(const std::vector<int>& tuple, int n) {
    std::size_t idx = 0;
    for (int a : tuple) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
    return idx;
}

// Parity of the permutation sorting `tuple` ascending; -2 flags a repeated
// index. Plain O(p^2) inversion count.
inline int sort_sign(const std::vector<int>& tuple) {
    int inv = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
            if (tuple[i] == tuple[j]) return -2;
            if (tuple[i] > tuple[j]) ++inv;
        }
    }
    return (inv & 1) ? -1 : 1;
}

// All strictly ascending p-tuples from {0,…,n−1}.
inline std::vector<std::vector<int>> ascending_tuples(int n, int p) {
    std::vector<std::vector<int>> out;
    if (p == 0) {
        out.push_back({});
        return out;
    }
    if (p > n) return out;
    std::vector<int> t(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) t[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(t);
        int i = p - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == n - p + i) --i;
        if (i < 0) break;
        ++t[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < p; ++j)
            t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

// All p-tuples from {0,…,n−1} (odometer order).
inline std::vector<std::vector<int>> all_tuples(int n, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(static_cast<std::size_t>(p), 0);
    while (true) {
        out.push_back(t);
        int i = p - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == n - 1) {
            t[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++t[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace detail

// Totally antisymmetric rank-p tensor stored densely (n^p doubles).
class DenseForm {
public:
    DenseForm(int dim, int grade, std::vector<double> components)
        : dim_(dim), grade_(grade), components_(std::move(components)) {
        if (dim_ < 1 || dim_ > kOracleMaxDim) throw DimTooLarge("oracle supports dim 1..6");
        if (grade_ < 0 || grade_ > dim_) throw GradeOverflow();
        if (components_.size() != detail::pow_int(dim_, grade_))
            throw InvalidParameter("component array has the wrong size");
        check_antisymmetry();
    }

    static DenseForm zero(int dim, int grade) {
        return DenseForm(dim, grade, std::vector<double>(detail::pow_int(dim, grade), 0.0));
    }

    int dim() const { return dim_; }
    int grade() const { return grade_; }
    const std::vector<double>& components() const { return components_; }

    double at(const std::vector<int>& tuple) const {
        return components_[detail::flat_index(tuple, dim_)];
    }

    double max_abs() const {
        double best = 0.0;
        for (double v : components_) best = std::max(best, std::abs(v));
        return best;
    }

private:
    void check_antisymmetry() const {
        const double tol = 1e-12 * std::max(1.0, max_abs());
        for (const auto& tuple : detail::all_tuples(dim_, grade_)) {
            std::vector<int> sorted = tuple;
            std::sort(sorted.begin(), sorted.end());
            const int sign = detail::sort_sign(tuple);
            const double expected = (sign == -2) ? 0.0 : sign * at(sorted);
            if (std::abs(at(tuple) - expected) > tol)
                throw InvalidParameter("components are not totally antisymmetric");
        }
    }

    int dim_;
    int grade_;
    std::vector<double> components_;
};

// Blade coefficient c on e_{i1<…<ip} spreads to components sgn(σ)·c over all
// permutations of the index set.
inline DenseForm to_dense(const Multivector& a, int p) {
    const int n = a.dim();
    if (n > kOracleMaxDim) throw DimTooLarge("oracle supports dim 1..6");
    if (p > n) throw GradeTooLarge();
    std::vector<double> comp(detail::pow_int(n, p), 0.0);
    const Multivector part = a.grade_part(p);
    for (const auto& tuple : detail::all_tuples(n, p)) {
        const int sign = detail::sort_sign(tuple);
        if (sign == -2) continue;
        std::uint32_t mask = 0;
        for (int v : tuple) mask |= 1u << v;
        const double c = part.coeff(mask);
        if (c != 0.0) comp[detail::flat_index(tuple, n)] = sign * c;
    }
    return DenseForm(n, p, std::move(comp));
}

inline Multivector from_dense(const DenseForm& d) {
    Multivector out(d.dim());
    for (const auto& tuple : detail::ascending_tuples(d.dim(), d.grade())) {
        std::uint32_t mask = 0;
        for (int v : tuple) mask |= 1u << v;
        out.add_term(mask, d.at(tuple));
    }
    return out;
}

// ω∧α = ((p+q)!/(p!q!)) ω^{[a…} α^{b…]}, evaluated per ascending output tuple
// by summing sgn(σ)·ω·α over every ordering of the tuple, then extended
// antisymmetrically.
inline DenseForm oracle_wedge(const DenseForm& a, const DenseForm& b) {
    if (a.dim() != b.dim()) throw DimMismatch();
    const int n = a.dim();
    const int p = a.grade(), q = b.grade();
    const int m = p + q;
    if (m > n) throw GradeOverflow();

    std::map<std::vector<int>, double> asc_values;
    for (const auto& tuple : detail::ascending_tuples(n, m)) {
        double sum = 0.0;
        std::vector<int> perm = tuple;
        std::sort(perm.begin(), perm.end());
        do {
            const std::vector<int> left(perm.begin(), perm.begin() + p);
            const std::vector<int> right(perm.begin() + p, perm.end());
            sum += detail::sort_sign(perm) * a.at(left) * b.at(right);
        } while (std::next_permutation(perm.begin(), perm.end()));
        asc_values[tuple] = sum / (detail::factorial(p) * detail::factorial(q));
    }

    std::vector<double> comp(detail::pow_int(n, m), 0.0);
    for (const auto& tuple : detail::all_tuples(n, m)) {
        const int sign = detail::sort_sign(tuple);
        if (sign == -2) continue;
        std::vector<int> sorted = tuple;
        std::sort(sorted.begin(), sorted.end());
        comp[detail::flat_index(tuple, n)] = sign * asc_values[sorted];
    }
    return DenseForm(n, m, std::move(comp));
}

// {ω,α} contracts the last slot of ω against the first slot of α through g
// and antisymmetrizes the free indices:
//   {ω,α}^{c…d…} = 2/((p−1)!(q−1)!) · Σ_σ sgn(σ) Σ_{a,b} g_ab ω^{c…a} α^{b d…}.
inline DenseForm oracle_bracket(const DenseForm& a, const DenseForm& b, const Metric& g) {
    if (a.dim() != b.dim() || a.dim() != g.dim()) throw DimMismatch();
    const int n = a.dim();
    const int p = a.grade(), q = b.grade();
    if (p == 0 || q == 0) return DenseForm::zero(n, 0);
    const int m = p + q - 2;
    if (m > n) throw GradeOverflow();

    const double prefactor = 2.0 / (detail::factorial(p - 1) * detail::factorial(q - 1));
    std::map<std::vector<int>, double> asc_values;
    for (const auto& tuple : detail::ascending_tuples(n, m)) {
        double sum = 0.0;
        std::vector<int> perm = tuple;
        do {
            double contracted = 0.0;
            for (int ia = 0; ia < n; ++ia) {
                for (int ib = 0; ib < n; ++ib) {
                    const double gab = g.g(ia, ib);
                    if (gab == 0.0) continue;
                    std::vector<int> left(perm.begin(), perm.begin() + (p - 1));
                    left.push_back(ia);
                    std::vector<int> right;
                    right.push_back(ib);
                    right.insert(right.end(), perm.begin() + (p - 1), perm.end());
                    contracted += gab * a.at(left) * b.at(right);
                }
            }
            sum += detail::sort_sign(perm) * contracted;
        } while (std::next_permutation(perm.begin(), perm.end()));
        asc_values[tuple] = prefactor * sum;
    }

    std::vector<double> comp(detail::pow_int(n, m), 0.0);
    for (const auto& tuple : detail::all_tuples(n, m)) {
        const int sign = detail::sort_sign(tuple);
        if (sign == -2) continue;
        std::vector<int> sorted = tuple;
        std::sort(sorted.begin(), sorted.end());
        comp[detail::flat_index(tuple, n)] = sign * asc_values[sorted];
    }
    return DenseForm(n, m, std::move(comp));
}

// <A,B> = Σ_p (1/p!) g…g A_p B_p. The left tuple runs over ascending
// combinations only (total antisymmetry supplies the p! copies).
inline double oracle_inner(const DenseForm& a, const DenseForm& b, const Metric& g) {
    if (a.dim() != b.dim() || a.dim() != g.dim()) throw DimMismatch();
    if (a.grade() != b.grade()) return 0.0;
    const int n = a.dim();
    const int p = a.grade();
    double sum = 0.0;
    for (const auto& at : detail::ascending_tuples(n, p)) {
        const double av = a.at(at);
        if (av == 0.0) continue;
        for (const auto& bt : detail::all_tuples(n, p)) {
            double w = 1.0;
            for (int k = 0; k < p; ++k) {
                w *= g.g(at[static_cast<std::size_t>(k)], bt[static_cast<std::size_t>(k)]);
                if (w == 0.0) break;
            }
            if (w != 0.0) sum += w * av * b.at(bt);
        }
    }
    return sum;
}

// (∇_a ω)^{b…} = g_ac ω^{cb…}, one dense form per slot.
inline std::vector<DenseForm> oracle_derivative(const DenseForm& a, const Metric& g) {
    if (a.dim() != g.dim()) throw DimMismatch();
    const int n = a.dim();
    const int p = a.grade();
    std::vector<DenseForm> out;
    if (p == 0) {
        for (int slot = 0; slot < n; ++slot) out.push_back(DenseForm::zero(n, 0));
        return out;
    }
    for (int slot = 0; slot < n; ++slot) {
        std::vector<double> comp(detail::pow_int(n, p - 1), 0.0);
        for (const auto& rest : detail::all_tuples(n, p - 1)) {
            double sum = 0.0;
            for (int c = 0; c < n; ++c) {
                const double gac = g.g(slot, c);
                if (gac == 0.0) continue;
                std::vector<int> full;
                full.push_back(c);
                full.insert(full.end(), rest.begin(), rest.end());
                sum += gac * a.at(full);
            }
            comp[detail::flat_index(rest, n)] = sum;
        }
        out.emplace_back(n, p - 1, std::move(comp));
    }
    return out;
}

namespace detail {

// Sign of a set of cross contractions within a word: unpaired letters lying
// strictly between the ends of a pair each cost a transposition, and every
// crossing of two pairs costs one more.
inline int pairing_sign(const std::vector<std::pair<int, int>>& pairs, int word_size) {
    std::vector<char> paired(static_cast<std::size_t>(word_size), 0);
    for (const auto& [u, v] : pairs) {
        paired[static_cast<std::size_t>(u)] = 1;
        paired[static_cast<std::size_t>(v)] = 1;
    }
    int parity = 0;
    for (const auto& [u, v] : pairs)
        for (int w = u + 1; w < v; ++w) parity += !paired[static_cast<std::size_t>(w)];
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            const auto& [u1, v1] = pairs[i];
            const auto& [u2, v2] = pairs[j];
            const bool crossing = (u1 < u2 && u2 < v1 && v1 < v2) || (u2 < u1 && u1 < v2 && v2 < v1);
            if (crossing) ++parity;
        }
    return (parity & 1) ? -1 : 1;
}

// Inversion count of the surviving word, read literally; repeated letters
// annihilate the wedge.
inline int word_wedge_sign(const std::vector<int>& word) {
    int inv = 0;
    for (std::size_t i = 0; i < word.size(); ++i)
        for (std::size_t j = i + 1; j < word.size(); ++j) {
            if (word[i] == word[j]) return 0;
            if (word[i] > word[j]) ++inv;
        }
    return (inv & 1) ? -1 : 1;
}

}  // namespace detail

// Wick's theorem by full pairing enumeration over factored blades: every way
// of contracting left-blade vectors against right-blade vectors, each pairing
// weighted by its minimal-permutation sign and ħ·g factors, the survivors
// wedged back together. Returns a multivector assembled grade by grade
// through validated dense forms.
inline Multivector oracle_clifford(const DenseForm& a, const DenseForm& b, const Metric& g,
                                   double hbar = 1.0) {
    if (a.dim() != b.dim() || a.dim() != g.dim()) throw DimMismatch();
    const int n = a.dim();
    const int p = a.grade(), q = b.grade();

    std::map<int, std::map<std::vector<int>, double>> by_grade;  // grade -> asc tuple -> coeff

    for (const auto& ta : detail::ascending_tuples(n, p)) {
        const double ca = a.at(ta);
        if (ca == 0.0) continue;
        for (const auto& tb : detail::ascending_tuples(n, q)) {
            const double cb = b.at(tb);
            if (cb == 0.0) continue;

            std::vector<int> word = ta;
            word.insert(word.end(), tb.begin(), tb.end());

            // enumerate matchings of left positions to right positions
            std::vector<std::pair<int, int>> pairs;
            std::vector<char> used_right(static_cast<std::size_t>(q), 0);
            auto emit = [&]() {
                double factor = ca * cb;
                for (const auto& [u, v] : pairs) factor *= hbar * g.g(word[u], word[v]);
                if (factor == 0.0) return;
                std::vector<char> dead(word.size(), 0);
                for (const auto& [u, v] : pairs) {
                    dead[static_cast<std::size_t>(u)] = 1;
                    dead[static_cast<std::size_t>(v)] = 1;
                }
                std::vector<int> survivors;
                for (std::size_t k = 0; k < word.size(); ++k)
                    if (!dead[k]) survivors.push_back(word[k]);
                const int ws = detail::word_wedge_sign(survivors);
                if (ws == 0) return;
                const int ps = detail::pairing_sign(pairs, static_cast<int>(word.size()));
                std::sort(survivors.begin(), survivors.end());
                by_grade[static_cast<int>(survivors.size())][survivors] += ps * ws * factor;
            };
            auto enumerate = [&](auto&& self, int upos) -> void {
                if (upos == p) {
                    emit();
                    return;
                }
                self(self, upos + 1);  // leave this left vector uncontracted
                for (int r = 0; r < q; ++r) {
                    if (used_right[static_cast<std::size_t>(r)]) continue;
                    used_right[static_cast<std::size_t>(r)] = 1;
                    pairs.emplace_back(upos, p + r);
                    self(self, upos + 1);
                    pairs.pop_back();
                    used_right[static_cast<std::size_t>(r)] = 0;
                }
            };
            enumerate(enumerate, 0);
        }
    }

    Multivector out(n);
    for (const auto& [grade, values] : by_grade) {
        std::vector<double> comp(detail::pow_int(n, grade), 0.0);
        for (const auto& tuple : detail::all_tuples(n, grade)) {
            const int sign = detail::sort_sign(tuple);
            if (sign == -2) continue;
            std::vector<int> sorted = tuple;
            std::sort(sorted.begin(), sorted.end());
            auto it = values.find(sorted);
            if (it != values.end()) comp[detail::flat_index(tuple, n)] = sign * it->second;
        }
        out += from_dense(DenseForm(n, grade, std::move(comp)));
    }
    return out;
}

// U^{a1}_{b1}…U^{ap}_{bp} ω^{b1…bp}: the tensor transformation law, used to
// cross-check the automorphism action.
inline DenseForm transform_dense(const Mat& u, const DenseForm& a) {
    if (u.n() != a.dim()) throw DimMismatch();
    const int n = a.dim();
    const int p = a.grade();
    std::vector<double> comp(detail::pow_int(n, p), 0.0);
    for (const auto& out_t : detail::all_tuples(n, p)) {
        double sum = 0.0;
        for (const auto& in_t : detail::all_tuples(n, p)) {
            double w = 1.0;
            for (int k = 0; k < p; ++k) {
                w *= u(out_t[static_cast<std::size_t>(k)], in_t[static_cast<std::size_t>(k)]);
                if (w == 0.0) break;
            }
            if (w != 0.0) sum += w * a.at(in_t);
        }
        comp[detail::flat_index(out_t, n)] = sum;
    }
    return DenseForm(n, p, std::move(comp));
}

}  // namespace fermionic::oracle
