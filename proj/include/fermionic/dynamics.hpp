#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "fermionic/algebra.hpp"
#include "fermionic/clifford.hpp"
#include "fermionic/linalg.hpp"
#include "fermionic/metric.hpp"
#include "fermionic/multivector.hpp"

namespace fermionic {

enum class Mode { classical, quantum };

// The quantum evolution equation dA/dt = ¼[H,A] runs a 2-form Hamiltonian at
// half the rate of the classical bracket flow; classical_match doubles the
// quantum right-hand side for comparison studies.
enum class RateConvention { paper, classical_match };

struct EvolutionSpec {
    Metric metric;
    std::variant<Generator, Multivector> hamiltonian;
    Multivector initial;
    double t0 = 0.0;
    double t1 = 1.0;
    int steps = 1;
    Mode mode = Mode::classical;
    RateConvention rate = RateConvention::paper;
    double hbar = 1.0;

    void validate() const {
        if (!(t1 > t0)) throw InvalidParameter("t1 must exceed t0");
        if (steps < 1) throw InvalidParameter("steps must be positive");
    }
};

// exp(tH): the canonical transformation generated by H. The OrthogonalMap
// constructor re-checks Uᵀ G U = G.
inline OrthogonalMap evolution_operator(const Generator& h, double t) {
    return OrthogonalMap(expm(t * h.matrix()), h.metric());
}

struct PhasePoint {
    double t;
    std::vector<double> eta;
};

namespace detail {

inline std::vector<double> vector_of(const Multivector& a) {
    std::vector<double> v(static_cast<std::size_t>(a.dim()), 0.0);
    for (const auto& [mask, c] : a.terms()) {
        if (std::popcount(mask) != 1) throw NotAVector();
        v[static_cast<std::size_t>(std::countr_zero(mask))] = c;
    }
    return v;
}

inline const Generator& classical_generator(const EvolutionSpec& spec) {
    if (!std::holds_alternative<Generator>(spec.hamiltonian))
        throw ModeMismatch("classical mode requires a generator (2-form) hamiltonian");
    return std::get<Generator>(spec.hamiltonian);
}

inline Multivector quantum_hamiltonian(const EvolutionSpec& spec) {
    Multivector h = std::holds_alternative<Multivector>(spec.hamiltonian)
                        ? std::get<Multivector>(spec.hamiltonian)
                        : generator_to_two_form(std::get<Generator>(spec.hamiltonian));
    if (max_abs_diff(dagger(h), -h) > 1e-10) throw NotAntiHermitian();
    return h;
}

}  // namespace detail

// dη/dt = Hη on a uniform grid, stepped with the exact matrix exponential of
// one grid interval.
inline std::vector<PhasePoint> evolve_phase(const EvolutionSpec& spec) {
    spec.validate();
    if (spec.mode != Mode::classical) throw ModeMismatch("phase evolution is classical");
    const Generator& h = detail::classical_generator(spec);
    std::vector<double> eta = detail::vector_of(spec.initial);

    const double dt = (spec.t1 - spec.t0) / spec.steps;
    const Mat u_step = expm(dt * h.matrix());

    std::vector<PhasePoint> out;
    out.reserve(static_cast<std::size_t>(spec.steps) + 1);
    out.push_back({spec.t0, eta});
    for (int k = 1; k <= spec.steps; ++k) {
        eta = u_step.apply(eta);
        out.push_back({spec.t0 + k * dt, eta});
    }
    return out;
}

using ObservableTrajectory = std::vector<std::pair<double, Multivector>>;

// Observable evolution. Classical mode integrates dA/dt = ½{H,A}, the
// derivation extending η ↦ Hη (so grade-1 initial data reproduces the phase
// flow); quantum mode integrates dA/dt = ¼[H,A] with the Clifford commutator.
// Fixed-step RK4 on the blade coefficients; the step is the grid step.
inline ObservableTrajectory evolve_observable(const EvolutionSpec& spec) {
    spec.validate();
    if (spec.initial.dim() != spec.metric.dim()) throw DimMismatch();

    std::function<Multivector(const Multivector&)> rhs;
    if (spec.mode == Mode::classical) {
        const Multivector h2 = generator_to_two_form(detail::classical_generator(spec));
        const Metric& m = spec.metric;
        rhs = [h2, &m](const Multivector& a) { return 0.5 * casalbuoni_bracket(h2, a, m); };
    } else {
        const Multivector h = detail::quantum_hamiltonian(spec);
        const Metric& m = spec.metric;
        const DeformationParameter hb(spec.hbar);
        const double factor = spec.rate == RateConvention::classical_match ? 0.5 : 0.25;
        rhs = [h, &m, hb, factor](const Multivector& a) {
            return factor * clifford_commutator(h, a, m, hb);
        };
    }

    const double dt = (spec.t1 - spec.t0) / spec.steps;
    Multivector a = spec.initial;
    ObservableTrajectory out;
    out.reserve(static_cast<std::size_t>(spec.steps) + 1);
    out.emplace_back(spec.t0, a);
    for (int k = 1; k <= spec.steps; ++k) {
        const Multivector k1 = rhs(a);
        const Multivector k2 = rhs(a + (dt / 2) * k1);
        const Multivector k3 = rhs(a + (dt / 2) * k2);
        const Multivector k4 = rhs(a + dt * k3);
        a += (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.emplace_back(spec.t0 + k * dt, a);
    }
    return out;
}

// Integrates dG/dt = [H,G] (commutator of linear maps) from G(0) = G to t1 and
// reports the largest departure of G(t) from G(0) over the grid. Zero for
// conserved generators; Noether's criterion in numerical form.
inline double noether_drift(const Generator& h, const Generator& g, double t1) {
    if (h.dim() != g.dim()) throw DimMismatch();
    const Mat& hm = h.matrix();
    auto rhs = [&hm](const Mat& gm) { return hm * gm - gm * hm; };

    const int steps = std::max(256, static_cast<int>(512 * std::abs(t1)));
    const double dt = t1 / steps;
    Mat gm = g.matrix();
    const Mat g0 = g.matrix();
    double drift = 0.0;
    for (int k = 0; k < steps; ++k) {
        const Mat k1 = rhs(gm);
        const Mat k2 = rhs(gm + (dt / 2) * k1);
        const Mat k3 = rhs(gm + (dt / 2) * k2);
        const Mat k4 = rhs(gm + dt * k3);
        gm = gm + (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        drift = std::max(drift, (gm - g0).max_abs());
    }
    return drift;
}

}  // namespace fermionic
