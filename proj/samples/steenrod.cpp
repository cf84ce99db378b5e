// Conjugates in the dual Steenrod algebra and the homology of tmf inside it.
#include <iostream>

#include "tmfalg/steenrod/verify.hpp"

using namespace tmfalg;

int main()
{
    const DualSteenrod a(32);
    for (int k = 1; k <= 3; ++k)
        std::cout << "xibar" << k << " = " << a.conj_xi(k) << "\n";
    std::cout << "Delta(xi2) = " << a.coproduct(a.xi(2)) << "\n";

    const auto tmf = tmf_homology(a);
    const auto closure = comodule_closure_check(a, tmf);
    std::cout << tmf.name << " is a subcomodule through 32: " << (closure.closed ? "yes" : "no") << "\n";
    const auto q = quotient_pattern(a, tmf);
    std::cout << "A / " << tmf.name << " Poincare series:";
    for (int d = 0; d <= q.top_degree(); ++d)
        if (q[d] != 0)
            std::cout << " " << q[d] << "t^" << d;
    std::cout << "\n";
}
