#pragma once

// Residual suite for the algebraic identities: the four bracket identities,
// the four dagger identities, and the structural invariants of the wedge,
// inner product, orthogonal action, derivative, and Clifford product. Shared
// by the check-identities command and the acceptance tests so the two
// surfaces measure exactly the same thing.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fermionic/algebra.hpp"
#include "fermionic/clifford.hpp"
#include "fermionic/multivector.hpp"
#include "fermionic/random.hpp"

namespace fermionic {

struct IdentityResidual {
    std::string name;
    double value = 0.0;
};

inline std::vector<IdentityResidual> run_identity_suite(const Metric& m, int trials,
                                                        std::uint64_t seed) {
    const int n = m.dim();
    Rng rng(seed);

    enum {
        kBracketScalar,
        kBracketAntisymmetry,
        kBracketLeibniz,
        kBracketJacobi,
        kDaggerAntiautomorphism,
        kDaggerInnerScalar,
        kDaggerInnerShift,
        kDaggerInnerInvariance,
        kWedgeGradedCommutativity,
        kWedgeAssociativity,
        kInnerSymmetry,
        kInnerPositivity,
        kOrthogonalInnerInvariance,
        kOrthogonalAutomorphism,
        kDerivativeBracketRelation,
        kCliffordAssociativity,
        kCliffordDefiningRelation,
        kHbarZeroDegeneration,
        kFirstDeformationOrder,
        kWickVsRecursive,
        kCount
    };
    std::vector<IdentityResidual> out = {
        {"bracket/{1,a}=0", 0.0},
        {"bracket/antisymmetry", 0.0},
        {"bracket/leibniz", 0.0},
        {"bracket/jacobi", 0.0},
        {"dagger/anti-automorphism", 0.0},
        {"dagger/<A,B>=i(dag(A)B)", 0.0},
        {"dagger/<A,BC>=<dag(B)A,C>", 0.0},
        {"dagger/<A,B>=<dag(A),dag(B)>", 0.0},
        {"wedge/graded-commutativity", 0.0},
        {"wedge/associativity", 0.0},
        {"inner/symmetry", 0.0},
        {"inner/positivity", 0.0},
        {"orthogonal/inner-invariance", 0.0},
        {"orthogonal/automorphism", 0.0},
        {"derivative/bracket-relation", 0.0},
        {"clifford/associativity", 0.0},
        {"clifford/defining-relation", 0.0},
        {"clifford/hbar-zero-is-wedge", 0.0},
        {"clifford/first-deformation-order", 0.0},
        {"clifford/wick-vs-recursive", 0.0},
    };
    auto track = [&](int k, double v) { out[k].value = std::max(out[k].value, v); };

    const DeformationParameter one(1.0);
    const Multivector unit = Multivector::scalar(n, 1.0);

    for (int trial = 0; trial < trials; ++trial) {
        const int p = rng.uniform_int(0, n);
        const int q = rng.uniform_int(0, n);
        const int r = rng.uniform_int(0, n);
        const Multivector w = random_form(n, p, rng);
        const Multivector al = random_form(n, q, rng);
        const Multivector be = random_form(n, r, rng);
        const Multivector a = random_multivector(n, rng);
        const Multivector b = random_multivector(n, rng);
        const Multivector c = random_multivector(n, rng);
        const Multivector eta = random_form(n, 1, rng);
        const Multivector etap = random_form(n, 1, rng);

        // bracket identities
        track(kBracketScalar, casalbuoni_bracket(unit, a, m).inf_norm());
        {
            const int sign = ((p * q + 1) & 1) ? -1 : 1;
            track(kBracketAntisymmetry,
                  max_abs_diff(casalbuoni_bracket(al, w, m),
                               static_cast<double>(sign) * casalbuoni_bracket(w, al, m)));
        }
        {
            const int sign = ((p * q) & 1) ? -1 : 1;
            const Multivector lhs = casalbuoni_bracket(w, wedge(al, be), m);
            const Multivector rhs = wedge(casalbuoni_bracket(w, al, m), be) +
                                    static_cast<double>(sign) * wedge(al, casalbuoni_bracket(w, be, m));
            track(kBracketLeibniz, max_abs_diff(lhs, rhs));
        }
        {
            const double s1 = ((p * r) & 1) ? -1.0 : 1.0;
            const double s2 = ((q * p) & 1) ? -1.0 : 1.0;
            const double s3 = ((r * q) & 1) ? -1.0 : 1.0;
            const Multivector cyc =
                s1 * casalbuoni_bracket(w, casalbuoni_bracket(al, be, m), m) +
                s2 * casalbuoni_bracket(al, casalbuoni_bracket(be, w, m), m) +
                s3 * casalbuoni_bracket(be, casalbuoni_bracket(w, al, m), m);
            track(kBracketJacobi, cyc.inf_norm());
        }

        // dagger identities (Clifford product at hbar = 1)
        {
            const Multivector ab = clifford_product(a, b, m, one);
            track(kDaggerAntiautomorphism,
                  max_abs_diff(dagger(ab), clifford_product(dagger(b), dagger(a), m, one)));
            const double inner_ab = extended_inner(a, b, m);
            track(kDaggerInnerScalar,
                  std::abs(inner_ab - clifford_product(dagger(a), b, m, one).scalar_part()));
            const Multivector bc = clifford_product(b, c, m, one);
            track(kDaggerInnerShift,
                  std::abs(extended_inner(a, bc, m) -
                           extended_inner(clifford_product(dagger(b), a, m, one), c, m)));
            track(kDaggerInnerInvariance,
                  std::abs(inner_ab - extended_inner(dagger(a), dagger(b), m)));
        }

        // wedge structure
        {
            const int sign = ((p * q) & 1) ? -1 : 1;
            track(kWedgeGradedCommutativity,
                  max_abs_diff(wedge(w, al), static_cast<double>(sign) * wedge(al, w)));
            track(kWedgeAssociativity, max_abs_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))));
        }

        // inner product structure
        {
            track(kInnerSymmetry, std::abs(extended_inner(a, b, m) - extended_inner(b, a, m)));
            const double aa = extended_inner(a, a, m);
            track(kInnerPositivity, (!a.is_zero() && aa <= 0.0) ? 1.0 : 0.0);
        }

        // orthogonal action
        {
            const OrthogonalMap u = random_orthogonal(m, rng);
            track(kOrthogonalInnerInvariance,
                  std::abs(extended_inner(apply_orthogonal(u, a), apply_orthogonal(u, b), m) -
                           extended_inner(a, b, m)));
            track(kOrthogonalAutomorphism,
                  max_abs_diff(apply_orthogonal(u, wedge(w, al)),
                               wedge(apply_orthogonal(u, w), apply_orthogonal(u, al))));
        }

        // derivative vs one-slot bracket: {eta, w} = 2 eta^a grad_a w
        {
            const std::vector<Multivector> grads = derivative(w, m);
            Multivector contracted(n);
            for (int k = 0; k < n; ++k)
                contracted += (2.0 * eta.coeff(std::uint32_t{1} << k)) * grads[k];
            track(kDerivativeBracketRelation,
                  max_abs_diff(casalbuoni_bracket(eta, w, m), contracted));
        }

        // Clifford structure; hbar cycles through {0.5, 1, 2} across trials
        {
            constexpr double hbars[3] = {0.5, 1.0, 2.0};
            const double hv = hbars[trial % 3];
            const DeformationParameter h(hv);
            track(kCliffordAssociativity,
                  max_abs_diff(clifford_product(clifford_product(a, b, m, h), c, m, h),
                               clifford_product(a, clifford_product(b, c, m, h), m, h)));
            const Multivector anti = clifford_product(eta, etap, m, h) +
                                     clifford_product(etap, eta, m, h);
            double g_eta = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    g_eta += eta.coeff(std::uint32_t{1} << i) * m.g(i, j) *
                             etap.coeff(std::uint32_t{1} << j);
            track(kCliffordDefiningRelation,
                  max_abs_diff(anti, Multivector::scalar(n, 2.0 * hv * g_eta)));
        }
        track(kHbarZeroDegeneration,
              max_abs_diff(clifford_product(a, b, m, DeformationParameter(0.0)), wedge(a, b)));
        track(kFirstDeformationOrder,
              max_abs_diff(deformation_derivative(a, b, m),
                           0.5 * casalbuoni_bracket(a, b, m)));
        track(kWickVsRecursive,
              max_abs_diff(clifford_product_wick(w, al, m, one), clifford_product(w, al, m, one)));
    }
    return out;
}

}  // namespace fermionic
