#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fermionic/clifford.hpp"
#include "fermionic/oracle.hpp"
#include "fermionic/random.hpp"

namespace {

using namespace fermionic;

const DeformationParameter kOne(1.0);

Multivector mv_blade(int dim, std::initializer_list<int> idx, double c) {
    return Multivector::blade(dim, std::vector<int>(idx), c);
}

bool exactly_equal(const Multivector& a, const Multivector& b) {
    return a.terms() == b.terms();
}

}  // namespace

TEST_CASE("clifford product on vectors follows the defining relation") {
    const Metric m = Metric::identity(2);
    const Multivector e1 = Multivector::basis_vector(2, 1);
    const Multivector e2 = Multivector::basis_vector(2, 2);

    // eta eta = g(eta, eta)
    const Multivector sq = clifford_product(e1, e1, m, kOne);
    CHECK(sq.scalar_part() == Catch::Approx(1.0));
    CHECK(sq.grades() == std::vector<int>{0});

    // orthogonal vectors leave no contraction
    CHECK(max_abs_diff(clifford_product(e1, e2, m, kOne), mv_blade(2, {1, 2}, 1.0)) == 0.0);
}

TEST_CASE("clifford square of e12 is -1") {
    const Metric m = Metric::identity(2);
    const Multivector e12 = mv_blade(2, {1, 2}, 1.0);

    const Multivector engine = clifford_product(e12, e12, m, kOne);
    CHECK(engine.scalar_part() == Catch::Approx(-1.0));
    CHECK(engine.grades() == std::vector<int>{0});

    // both the pairing sum and the dense oracle agree
    CHECK(max_abs_diff(engine, clifford_product_wick(e12, e12, m, kOne)) <= 1e-15);
    const auto d = oracle::to_dense(e12, 2);
    CHECK(max_abs_diff(engine, oracle::oracle_clifford(d, d, m, 1.0)) <= 1e-12);
}

TEST_CASE("clifford commutator") {
    const Metric m = Metric::identity(3);
    const Multivector e1 = Multivector::basis_vector(3, 1);

    CHECK(clifford_commutator(e1, e1, m, kOne).is_zero());

    const Multivector a = mv_blade(3, {1, 2}, 1.0);
    const Multivector b = mv_blade(3, {2, 3}, 1.0);
    const Multivector comm = clifford_commutator(a, b, m, kOne);
    CHECK(comm.coeff({1, 3}) == Catch::Approx(2.0));
    CHECK(comm.grades() == std::vector<int>{2});

    // for 2-form arguments at hbar = 1 the commutator is the bracket flow
    CHECK(max_abs_diff(comm, casalbuoni_bracket(a, b, m)) <= 1e-12);

    Rng rng(5);
    const Multivector x = random_multivector(3, rng);
    CHECK(clifford_commutator(Multivector::scalar(3, 1.0), x, m, kOne).is_zero());
}

TEST_CASE("deformation derivative is the single-contraction part") {
    const Metric m2 = Metric::identity(2);
    const Multivector e1 = Multivector::basis_vector(2, 1);
    CHECK(deformation_derivative(e1, e1, m2).scalar_part() == Catch::Approx(1.0));
    CHECK(deformation_derivative(Multivector::scalar(2, 1.0), e1, m2).is_zero());

    const Metric m3 = Metric::identity(3);
    const Multivector a = mv_blade(3, {1, 2}, 1.0);
    const Multivector b = mv_blade(3, {2, 3}, 1.0);
    const Multivector dd = deformation_derivative(a, b, m3);
    CHECK(dd.coeff({1, 3}) == Catch::Approx(1.0));
    CHECK(max_abs_diff(dd, 0.5 * casalbuoni_bracket(a, b, m3)) <= 1e-12);
}

namespace {

// The product is polynomial in hbar, so it extends to signed values; evaluate
// the blade kernel directly to build the central stencil at ±delta.
Multivector product_at_signed_hbar(const Multivector& a, const Multivector& b, const Metric& m,
                                   double hbar) {
    Multivector out(a.dim());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            out += (ca * cb) * fermionic::detail::clifford_blades(ma, mb, m, hbar);
    return out;
}

}  // namespace

TEST_CASE("deformation derivative matches a central finite difference") {
    const double delta = 1e-5;
    for (int n : {2, 3, 4}) {
        Rng rng(17 + static_cast<std::uint64_t>(n));
        const Metric m = Metric::identity(n);
        for (int trial = 0; trial < 10; ++trial) {
            const Multivector a = random_multivector(n, rng);
            const Multivector b = random_multivector(n, rng);
            const Multivector fd = (1.0 / (2 * delta)) *
                                   (product_at_signed_hbar(a, b, m, delta) -
                                    product_at_signed_hbar(a, b, m, -delta));
            CHECK(max_abs_diff(fd, deformation_derivative(a, b, m)) <= 1e-8);
        }
    }
}

TEST_CASE("clifford associativity and unit") {
    for (int n : {3, 5}) {
        Rng rng(29 + static_cast<std::uint64_t>(n));
        const Metric m = random_spd_metric(n, rng);
        for (double hv : {0.5, 1.0, 2.0}) {
            const DeformationParameter h(hv);
            for (int trial = 0; trial < 15; ++trial) {
                const Multivector a = random_multivector(n, rng);
                const Multivector b = random_multivector(n, rng);
                const Multivector c = random_multivector(n, rng);
                CHECK(max_abs_diff(clifford_product(clifford_product(a, b, m, h), c, m, h),
                                   clifford_product(a, clifford_product(b, c, m, h), m, h)) <=
                      1e-10);
                CHECK(max_abs_diff(clifford_product(Multivector::scalar(n, 1.0), a, m, h), a) ==
                      0.0);
            }
        }
    }
}

TEST_CASE("defining relation under general metrics") {
    for (int n : {2, 4}) {
        Rng rng(37 + static_cast<std::uint64_t>(n));
        const Metric m = random_spd_metric(n, rng);
        for (double hv : {0.5, 1.0, 2.0}) {
            const DeformationParameter h(hv);
            for (int trial = 0; trial < 25; ++trial) {
                const Multivector x = random_form(n, 1, rng);
                const Multivector y = random_form(n, 1, rng);
                double gxy = 0.0;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        gxy += x.coeff(std::uint32_t{1} << i) * m.g(i, j) *
                               y.coeff(std::uint32_t{1} << j);
                const Multivector anti =
                    clifford_product(x, y, m, h) + clifford_product(y, x, m, h);
                CHECK(max_abs_diff(anti, Multivector::scalar(n, 2.0 * hv * gxy)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("hbar zero degenerates to the wedge exactly") {
    const DeformationParameter zero(0.0);
    for (int n : {2, 4, 6}) {
        Rng rng(43 + static_cast<std::uint64_t>(n));
        const Metric m = random_spd_metric(n, rng);
        for (int trial = 0; trial < 30; ++trial) {
            const Multivector a = random_multivector(n, rng);
            const Multivector b = random_multivector(n, rng);
            CHECK(exactly_equal(clifford_product(a, b, m, zero), wedge(a, b)));
        }
    }
}

TEST_CASE("first deformation law is second order in hbar") {
    Rng rng(47);
    const int n = 4;
    const Metric m = random_spd_metric(n, rng);
    for (int trial = 0; trial < 10; ++trial) {
        const Multivector a = random_multivector(n, rng);
        const Multivector b = random_multivector(n, rng);
        const Multivector w = wedge(a, b);
        const Multivector dd = deformation_derivative(a, b, m);
        auto residual = [&](double h) {
            return (clifford_product(a, b, m, DeformationParameter(h)) - w - h * dd).inf_norm();
        };
        const double r1 = residual(1e-3);
        const double r2 = residual(5e-4);
        REQUIRE(r2 > 1e-15);  // double contractions must be present
        CHECK(r1 / r2 == Catch::Approx(4.0).margin(0.4));
    }
}

TEST_CASE("dagger is an anti-automorphism compatible with the inner product") {
    for (int n : {3, 5}) {
        Rng rng(53 + static_cast<std::uint64_t>(n));
        const Metric m = (n == 3) ? Metric::identity(n) : random_spd_metric(n, rng);
        for (int trial = 0; trial < 25; ++trial) {
            const Multivector a = random_multivector(n, rng);
            const Multivector b = random_multivector(n, rng);
            const Multivector c = random_multivector(n, rng);

            CHECK(max_abs_diff(dagger(clifford_product(a, b, m, kOne)),
                               clifford_product(dagger(b), dagger(a), m, kOne)) <= 1e-10);
            CHECK(std::abs(extended_inner(a, b, m) -
                           clifford_product(dagger(a), b, m, kOne).scalar_part()) <= 1e-10);
            CHECK(std::abs(extended_inner(a, clifford_product(b, c, m, kOne), m) -
                           extended_inner(clifford_product(dagger(b), a, m, kOne), c, m)) <= 1e-10);
            CHECK(std::abs(extended_inner(a, b, m) -
                           extended_inner(dagger(a), dagger(b), m)) <= 1e-10);
        }
    }
}

TEST_CASE("pairing enumeration matches the recursive product") {
    for (int n : {3, 4, 5}) {
        Rng rng(59 + static_cast<std::uint64_t>(n));
        const Metric m = random_spd_metric(n, rng);
        for (int trial = 0; trial < 20; ++trial) {
            const Multivector a = random_multivector(n, rng);
            const Multivector b = random_multivector(n, rng);
            CHECK(max_abs_diff(clifford_product_wick(a, b, m, kOne),
                               clifford_product(a, b, m, kOne)) <= 1e-12);
        }
    }
}

TEST_CASE("clifford errors") {
    const Metric m = Metric::identity(2);
    CHECK_THROWS_AS(clifford_product(Multivector::basis_vector(2, 1),
                                     Multivector::basis_vector(3, 1), m, kOne),
                    DimMismatch);
    CHECK_THROWS_AS(DeformationParameter(-0.5), InvalidParameter);
}
