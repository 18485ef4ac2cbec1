// Sweeps the weight a for one built-in space and prints where the max, min and
// minimal Hodge dimensions change.
#include "edgehodge/run.hpp"

#include <iostream>

using namespace edgehodge;

int main(int argc, char** argv) {
    std::string name = argc > 1 ? argv[1] : "cone-torus";
    EdgeSpaceModel s;
    try {
        s = builtin_space(name);
    } catch (const UnknownSpaceError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << s.name << "  n=" << s.n << " b=" << s.b << " f=" << s.f << "\n";
    std::cout << "a        max          min          minimal-hodge  unique\n";
    GradedDims fb = cohomology_dims(s.fibre);
    std::string last;
    for (long num = -8; num <= 8; ++num) {
        Rational a = make_rational(num, 4);
        std::string row = dims_string(weighted_derham_dims(s, a, Extension::max).dims) + "  " +
                          dims_string(weighted_derham_dims(s, a, Extension::min).dims) + "  " +
                          dims_string(minimal_hodge_dims(s, a).dims);
        std::string mark = row == last ? "" : "  <- changes";
        std::cout << to_string(a) << std::string(9 - to_string(a).size(), ' ') << row << "  "
                  << (unique_closed_extension_d(s.f, a, fb) ? "yes" : "no ") << mark << "\n";
        last = row;
    }
}
