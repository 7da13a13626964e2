// Minimal tour: rotate a vector observable classically and quantum-
// mechanically, then sweep the deformation parameter on a 2-form square.

#include <cmath>
#include <cstdio>

#include "fermionic/fermionic.hpp"

int main() {
    using namespace fermionic;

    const Metric m = Metric::identity(2);
    Mat h(2);
    h(0, 1) = -1.0;
    h(1, 0) = 1.0;
    const Generator rot(h, m);

    const double two_pi = 2 * std::acos(-1.0);
    const EvolutionSpec classical{m,   rot, Multivector::basis_vector(2, 1), 0.0, two_pi,
                                  256, Mode::classical};
    EvolutionSpec quantum = classical;
    quantum.hamiltonian = generator_to_two_form(rot);
    quantum.mode = Mode::quantum;

    std::printf("t        classical e1   quantum e1 (paper rate)\n");
    const auto ct = evolve_observable(classical);
    const auto qt = evolve_observable(quantum);
    for (std::size_t k = 0; k < ct.size(); k += 64)
        std::printf("%-8.4f %13.6f %13.6f\n", ct[k].first, ct[k].second.coeff({1}),
                    qt[k].second.coeff({1}));

    std::printf("\nhbar     |AB - A^B|     (A = B = e12)\n");
    const Multivector e12 = Multivector::blade(2, {1, 2}, 1.0);
    for (double hv : {0.0, 0.25, 0.5, 1.0}) {
        const Multivector ab = clifford_product(e12, e12, m, DeformationParameter(hv));
        std::printf("%-8.2f %13.6f\n", hv, (ab - wedge(e12, e12)).inf_norm());
    }
    return 0;
}
