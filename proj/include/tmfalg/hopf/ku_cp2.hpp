#pragma once

#include "tmfalg/algebra/matrix.hpp"
#include "tmfalg/algebra/series.hpp"

namespace tmfalg {

struct KuCp2Involution {
    IntegerMatrix matrix;       // columns: images of alpha, beta in the basis {alpha, beta}
    IntegerMatrix change;       // columns: the witness basis {alpha, -alpha + beta}
    IntegerMatrix in_witness;   // change^-1 * matrix * change
    bool is_involution = false;
    bool witness_is_swap = false;
    bool witness_is_basis = false; // det(change) = +-1
};

/// x |-> x^-1 on (x - 1) Z[x, x^-1] / (x - 1)^3, basis alpha = x - 1, beta = (x - 1)^2.
inline KuCp2Involution ku_cp2_involution()
{
    // y = x - 1, so x^-1 - 1 = 1/(1 + y) - 1 computed modulo y^3
    auto ring = Ring::make({{"y", 2}});
    const auto y = TruncatedSeries::variable(ring, 0, 2);
    const auto one = TruncatedSeries::constant(Polynomial::constant(ring, 1), {0}, 2);
    TruncatedSeries inverse = one, term = one;
    for (int k = 1; k <= 2; ++k) {
        term = -(term * y);
        inverse += term;
    }
    const auto image_y = inverse - one;
    const auto image_y2 = image_y * image_y;

    KuCp2Involution out;
    out.matrix = IntegerMatrix(2, 2);
    for (int k = 1; k <= 2; ++k) {
        out.matrix(k - 1, 0) = image_y.coefficient(k).constant_term();
        out.matrix(k - 1, 1) = image_y2.coefficient(k).constant_term();
    }
    out.is_involution = out.matrix * out.matrix == IntegerMatrix::identity(2);

    // the witness basis is alpha and the image of alpha
    out.change = IntegerMatrix(2, 2);
    out.change(0, 0) = 1;
    out.change(0, 1) = out.matrix(0, 0);
    out.change(1, 1) = out.matrix(1, 0);
    const mpz_class det = out.change(0, 0) * out.change(1, 1) - out.change(0, 1) * out.change(1, 0);
    out.witness_is_basis = det == 1 || det == -1;
    if (out.witness_is_basis) {
        IntegerMatrix inv(2, 2);
        inv(0, 0) = out.change(1, 1) * det;
        inv(0, 1) = -out.change(0, 1) * det;
        inv(1, 0) = -out.change(1, 0) * det;
        inv(1, 1) = out.change(0, 0) * det;
        out.in_witness = inv * out.matrix * out.change;
        out.witness_is_swap = out.in_witness == IntegerMatrix{{0, 1}, {1, 0}};
    }
    return out;
}

} // namespace tmfalg
