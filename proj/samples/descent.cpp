// Cech page of P(1,3) and the homotopy it assembles to.
#include <iostream>

#include "tmfalg/covers/cech.hpp"

using namespace tmfalg;

int main()
{
    const auto page = cech_weighted_projective({1, 3}, -8, 8, 2);
    const auto pi = descent_assemble(page);
    for (const auto& [d, g] : pi.groups) {
        if (g.rank == 0 && g.torsion.empty())
            continue;
        std::cout << "pi_" << d << ": rank " << g.rank;
        for (const auto& name : g.generators)
            std::cout << "  " << name;
        std::cout << "\n";
    }
}
