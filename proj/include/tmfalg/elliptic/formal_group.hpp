#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmfalg/algebra/series.hpp"
#include "tmfalg/elliptic/curve.hpp"

namespace tmfalg {

/// F(x, y) of a cubic curve in the coordinate z = -x/y. The series ring is
/// the curve's base ring extended by x, y, z (each of weight -2).
struct FormalGroupLaw {
    WeierstrassCurve curve;
    RingPtr base;
    RingPtr ring;
    std::size_t x, y, z;
    TruncatedSeries F;

    int order() const { return F.order(); }

    /// Coefficient of x^i y^j as a base-ring element.
    Polynomial coefficient(int i, int j) const { return F.coefficient({i, j}).restricted(base); }

    TruncatedSeries variable(std::size_t v) const { return TruncatedSeries::variable(ring, v, order()); }

    /// F(f, g) for one-variable series f, g in z.
    TruncatedSeries apply(const TruncatedSeries& f, const TruncatedSeries& g) const
    {
        return F.substitute({{x, f}, {y, g}});
    }
};

namespace detail {

// w(z) solving w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
inline TruncatedSeries weierstrass_w(const WeierstrassCurve& c, const RingPtr& ring, std::size_t z,
                                     int order)
{
    auto E = [&](const Polynomial& p) { return p.embedded(ring); };
    const auto Z = TruncatedSeries::variable(ring, z, order);
    const auto Z2 = Z * Z;
    const auto Z3 = Z2 * Z;
    TruncatedSeries w = Z3;
    // each pass fixes at least one more coefficient
    for (int pass = 0; pass <= order; ++pass) {
        auto w2 = w * w;
        auto next = Z3 + Z * w * E(c.a1) + Z2 * w * E(c.a2) + w2 * E(c.a3) + Z * w2 * E(c.a4) +
                    w2 * w * E(c.a6);
        if (next == w)
            break;
        w = std::move(next);
    }
    return w;
}

inline TruncatedSeries series_reciprocal(const TruncatedSeries& one_plus_h)
{
    // 1/(1 + h) with h of positive order
    const auto one = TruncatedSeries::constant(Polynomial::constant(one_plus_h.ring(), 1),
                                               one_plus_h.vars(), one_plus_h.order());
    if (one_plus_h.constant_part() != Polynomial::constant(one_plus_h.ring(), 1))
        throw AlgebraError("series reciprocal needs constant term 1");
    const auto h = one_plus_h - one;
    TruncatedSeries sum = one, term = one;
    for (int k = 1; k <= one_plus_h.order(); ++k) {
        term = -(term * h);
        if (term.body().is_zero())
            break;
        sum += term;
    }
    return sum;
}

} // namespace detail

/// Chord construction: the line through P1, P2 meets the curve in P3 and
/// F(z1, z2) is the z-coordinate of -P3.
inline FormalGroupLaw fgl_from_curve(const WeierstrassCurve& curve, int order)
{
    if (order < 2)
        throw AlgebraError("formal group law order must be at least 2");
    const RingPtr base = curve.ring();
    const RingPtr ring = base->extended({{"x", -2}, {"y", -2}, {"z", -2}});
    const std::size_t x = base->size(), y = x + 1, z = x + 2;
    auto E = [&](const Polynomial& p) { return p.embedded(ring); };
    WeierstrassCurve c{E(curve.a1), E(curve.a2), E(curve.a3), E(curve.a4), E(curve.a6)};

    const int n = order;
    // w = sum_{k>=0} A_k z^{k+3}; the chord slope is sum A_k (z1^{k+3} - z2^{k+3}) / (z1 - z2)
    const auto w = detail::weierstrass_w(c, ring, z, n + 2);
    Polynomial lambda_body(ring);
    for (int m = 3; m <= n + 1; ++m) {
        auto A = w.coefficient(m);
        if (A.is_zero())
            continue;
        for (int i = 0; i <= m - 1; ++i) {
            std::vector<int> e(ring->size(), 0);
            e[x] = i;
            e[y] = m - 1 - i;
            lambda_body += A * Polynomial::monomial(ring, Monomial::from_exponents(*ring, e));
        }
    }
    const std::vector<std::size_t> xy{x, y};
    const TruncatedSeries lambda(lambda_body, xy, n);
    const auto X = TruncatedSeries::variable(ring, x, n);
    const auto Y = TruncatedSeries::variable(ring, y, n);
    const auto w_x = TruncatedSeries(w.body(), {z}, n).substitute({{z, X}});
    const auto nu = w_x - lambda * X;

    const auto lam2 = lambda * lambda;
    const auto num = lambda * c.a1 + lam2 * c.a3 + nu * c.a2 + lambda * nu * (c.a4 * mpz_class(2)) +
                     lam2 * nu * (c.a6 * mpz_class(3));
    const auto one = TruncatedSeries::constant(Polynomial::constant(ring, 1), xy, n);
    const auto den = one + lambda * c.a2 + lam2 * c.a4 + lam2 * lambda * c.a6;
    const auto z3 = -X - Y - num * detail::series_reciprocal(den);

    // inverse point: i(z) = -z / (1 - a1 z - a3 w(z))
    const auto w3 = TruncatedSeries(w.body(), {z}, n).substitute({{z, z3}});
    const auto inv_den = one - z3 * c.a1 - w3 * c.a3;
    const auto F = -(z3 * detail::series_reciprocal(inv_den));

    return {curve, base, ring, x, y, z, F};
}

/// [n](z): [0] = 0, [k+1] = F([k], z), and [-n] = [n] composed with the formal inverse.
inline TruncatedSeries n_series(const FormalGroupLaw& f, long n)
{
    const int order = f.order();
    const auto Z = f.variable(f.z);
    const auto zero = TruncatedSeries(Polynomial(f.ring), {f.z}, order);
    auto positive = [&](const TruncatedSeries& base, long k) {
        if (k == 0)
            return zero;
        auto acc = base;
        for (long i = 1; i < k; ++i)
            acc = f.apply(acc, base);
        return acc;
    };
    if (n >= 0)
        return positive(Z, n);
    // formal inverse: iota = iota - F(z, iota) converges one order per pass
    auto iota = -Z;
    for (int pass = 0; pass < order; ++pass) {
        auto next = iota - f.apply(Z, iota);
        if (next == iota)
            break;
        iota = std::move(next);
    }
    return positive(iota, -n);
}

/// Coefficients of the series variable z as base-ring elements, index = power.
inline std::vector<Polynomial> series_coefficients(const FormalGroupLaw& f, const TruncatedSeries& s)
{
    std::vector<Polynomial> out;
    for (int k = 0; k <= s.order(); ++k)
        out.push_back(s.coefficient(k).restricted(f.base));
    return out;
}

struct HasseData {
    std::uint64_t p;
    int order;
    std::vector<Polynomial> v; // v[i] = coefficient of z^{p^i} in [p](z)
};

inline std::uint64_t checked_power(std::uint64_t p, int i)
{
    std::uint64_t r = 1;
    for (int k = 0; k < i; ++k) {
        if (r > (1u << 20) / p)
            throw AlgebraError("p^i too large");
        r *= p;
    }
    return r;
}

/// v_i for i = 0..i_max; order 0 means the minimal order p^{i_max}.
inline HasseData hasse_coefficients(const WeierstrassCurve& c, std::uint64_t p, int i_max, int order = 0)
{
    if (!is_prime(p))
        throw AlgebraError(std::to_string(p) + " is not prime");
    const auto need = static_cast<int>(checked_power(p, i_max));
    if (order == 0)
        order = std::max(need, 2);
    if (order < need)
        throw AlgebraError("truncation order " + std::to_string(order) + " is below p^i_max = " +
                           std::to_string(need));
    auto f = fgl_from_curve(c, order);
    auto s = n_series(f, static_cast<long>(p));
    HasseData out{p, order, {}};
    for (int i = 0; i <= i_max; ++i)
        out.v.push_back(s.coefficient(static_cast<int>(checked_power(p, i))).restricted(f.base));
    return out;
}

/// Reduction of a modulo the ideal generated by the listed generators (set them to zero).
inline Polynomial modulo_generators(const Polynomial& a, const std::vector<std::string>& names)
{
    std::vector<std::size_t> idx;
    for (const auto& n : names)
        idx.push_back(a.ring()->require(n));
    return a.without(idx);
}

} // namespace tmfalg
