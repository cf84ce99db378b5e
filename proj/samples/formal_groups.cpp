// [p]-series of a Weierstrass curve and the first Hasse invariants.
#include <iostream>

#include "tmfalg/elliptic/formal_group.hpp"
#include "tmfalg/elliptic/regular.hpp"

using namespace tmfalg;

int main()
{
    const auto f = fgl_from_curve(universal_curve(), 4);
    const auto two = series_coefficients(f, n_series(f, 2));
    std::cout << "[2](z) on the universal curve:\n";
    for (std::size_t k = 1; k < two.size(); ++k)
        std::cout << "  z^" << k << ": " << two[k] << "\n";

    const auto curve = parse_curve("0,a2,0,a4,0");
    const auto h = hasse_coefficients(curve, 3, 2, 10);
    std::cout << "y^2 = x^3 + a2 x^2 + a4 x at p = 3:\n"
              << "  v1 = " << h.v[1] << "\n"
              << "  v2 = " << modulo_generators(h.v[2], {"a2"}) << " mod (a2)\n";
}
