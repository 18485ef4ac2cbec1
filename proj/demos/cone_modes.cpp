// Lowest fibre modes of a discrete torus, their indicial roots at a given
// weight, and the exponents recovered by integrating the radial system.
#include "edgehodge/run.hpp"

#include <cstdio>
#include <cstdlib>

using namespace edgehodge;

int main(int argc, char** argv) {
    Rational a = argc > 1 ? parse_rational(argv[1]) : Rational(0);
    DiscreteFibre torus = build_fibre(FibreKind::torus, {12, 12});
    std::printf("fibre T^2 on a 12x12 grid, a = %s\n", to_string(a).c_str());
    std::printf("%-3s %-10s %-12s %-12s %-12s %-12s\n", "k", "lambda^2", "gamma-", "gamma+", "ode-", "ode+");
    for (long k = 0; k <= 2; ++k) {
        SpectrumResult r = fibre_spectrum(torus, k, 8);
        double previous = -1.0;
        for (double l2 : r.eigenvalues) {
            if (std::abs(l2 - previous) < 1e-9) {
                continue;
            }
            previous = l2;
            double lam = std::abs(l2) < r.zero_tolerance ? 0.0 : l2;
            IndicialRootPair roots = indicial_roots(2, a, k, SpectralValue::numeric(lam));
            if (roots.double_root) {
                std::printf("%-3ld %-10.6f %-12.8f %-12.8f (double root)\n", k, lam, roots.minus, roots.plus);
                continue;
            }
            ModeExponents e = mode_exponent(k, lam, 2, a, 1e-4, 200);
            std::printf("%-3ld %-10.6f %-12.8f %-12.8f %-12.8f %-12.8f\n", k, lam, roots.minus, roots.plus, e.minus,
                        e.plus);
        }
    }
}
