#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tmfalg/algebra/linalg.hpp"
#include "tmfalg/elliptic/curve.hpp"

namespace tmfalg {

/// k = F_p (characteristic > 0) or Q (characteristic 0).
struct FieldSpec {
    std::uint64_t characteristic = 0;

    static FieldSpec parse(const std::string& name)
    {
        if (name == "Q" || name == "QQ")
            return {0};
        if (name.size() >= 2 && (name[0] == 'F' || name[0] == 'f')) {
            auto p = std::stoull(name.substr(1));
            if (!is_prime(p))
                throw AlgebraError("field F" + name.substr(1) + ": characteristic is not prime");
            return {p};
        }
        throw AlgebraError("unknown field '" + name + "' (expected Q or Fp)");
    }

    std::string to_string() const { return characteristic ? "F" + std::to_string(characteristic) : "Q"; }
};

struct FiberAlgebra {
    std::uint64_t prime;      // cover prime (2 or 3)
    FieldSpec field;
    RingPtr ring;             // k[r, s, t] (Q is represented over Z)
    std::vector<Polynomial> relations;
    std::vector<Monomial> basis;
    // table[i][j][k]: coefficient of basis[k] in basis[i] * basis[j]
    std::vector<std::vector<std::vector<mpq_class>>> table;
    bool associative = false;
    bool unital = false;
    bool commutative = false;
    int filtration_bound = 0;

    std::size_t rank() const { return basis.size(); }

    std::vector<std::string> basis_names() const
    {
        std::vector<std::string> out;
        for (const auto& m : basis)
            out.push_back(m.is_one() ? "1" : m.to_string(*ring));
        return out;
    }
};

namespace detail {

// weight descending, then monomials containing an eliminated variable, then lex
inline std::vector<Monomial> fiber_column_order(const RingPtr& ring, int bound,
                                                const std::vector<std::size_t>& eliminated)
{
    std::vector<Monomial> cols;
    std::vector<std::size_t> vars{0, 1, 2};
    for (int w = bound; w >= 0; --w) {
        auto ms = monomials_of_weight(*ring, vars, w);
        std::stable_sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) {
            auto key = [&](const Monomial& m) {
                int e = 0;
                for (auto v : eliminated)
                    e += m.exponent(v);
                return e;
            };
            if (key(a) != key(b))
                return key(a) > key(b);
            return b < a;
        });
        cols.insert(cols.end(), ms.begin(), ms.end());
    }
    return cols;
}

template <class Field>
FiberAlgebra compute_fiber(const Field& field, FiberAlgebra fa, const std::vector<std::size_t>& eliminated)
{
    using E = typename Field::Element;
    const int bound = fa.filtration_bound;
    auto cols = fiber_column_order(fa.ring, bound, eliminated);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < cols.size(); ++i)
        index[cols[i]] = i;
    auto to_vector = [&](const Polynomial& p) {
        std::vector<E> v(cols.size(), field.zero());
        for (const auto& [m, c] : p.terms()) {
            auto it = index.find(m);
            if (it == index.end())
                throw AlgebraError("fiber element exceeds the filtration bound");
            v[it->second] = field.add(v[it->second], field.from_integer(c));
        }
        return v;
    };
    auto top_weight = [](const Polynomial& p) {
        std::int64_t w = 0;
        for (const auto& [m, c] : p.terms())
            w = std::max(w, m.weight());
        return w;
    };

    EchelonBasis<Field> ideal(field, cols.size());
    std::vector<std::size_t> vars{0, 1, 2};
    for (const auto& f : fa.relations) {
        const auto d = top_weight(f);
        for (std::int64_t w = 0; w + d <= bound; ++w)
            for (const auto& m : monomials_of_weight(*fa.ring, vars, w))
                ideal.insert(to_vector(f * Polynomial::monomial(fa.ring, m)));
    }

    std::vector<std::size_t> chosen = ideal.free_coordinates();
    // present as t-degree, then s-degree, then r-degree: 1, s, s^2, s^3, t, st, ...
    std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t v : {2, 1, 0})
            if (cols[a].exponent(v) != cols[b].exponent(v))
                return cols[a].exponent(v) < cols[b].exponent(v);
        return false;
    });
    for (auto j : chosen)
        fa.basis.push_back(cols[j]);

    const std::size_t n = fa.basis.size();
    auto coords = [&](const Polynomial& p) {
        auto v = ideal.reduce(to_vector(p));
        std::vector<E> out(n, field.zero());
        for (std::size_t k = 0; k < n; ++k)
            out[k] = v[chosen[k]];
        return out;
    };
    std::vector<std::vector<std::vector<E>>> table(n, std::vector<std::vector<E>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i][j] = coords(Polynomial::monomial(fa.ring, fa.basis[i] * fa.basis[j]));

    auto mul = [&](const std::vector<E>& a, const std::vector<E>& b) {
        std::vector<E> out(n, field.zero());
        for (std::size_t i = 0; i < n; ++i) {
            if (field.is_zero(a[i]))
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (field.is_zero(b[j]))
                    continue;
                auto c = field.mul(a[i], b[j]);
                for (std::size_t k = 0; k < n; ++k)
                    out[k] = field.add(out[k], field.mul(c, table[i][j][k]));
            }
        }
        return out;
    };
    auto unit_vec = [&](std::size_t i) {
        std::vector<E> v(n, field.zero());
        v[i] = field.one();
        return v;
    };

    fa.associative = fa.commutative = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j] != table[j][i])
                fa.commutative = false;
            for (std::size_t k = 0; k < n; ++k)
                if (mul(table[i][j], unit_vec(k)) != mul(unit_vec(i), table[j][k]))
                    fa.associative = false;
        }
    fa.unital = false;
    for (std::size_t u = 0; u < n; ++u)
        if (fa.basis[u].is_one()) {
            fa.unital = true;
            for (std::size_t i = 0; i < n; ++i)
                if (table[u][i] != unit_vec(i))
                    fa.unital = false;
        }

    fa.table.assign(n, std::vector<std::vector<mpq_class>>(n, std::vector<mpq_class>(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if constexpr (std::is_same_v<E, mpq_class>)
                    fa.table[i][j][k] = table[i][j][k];
                else
                    fa.table[i][j][k] = mpq_class(static_cast<unsigned long>(table[i][j][k]));
            }
    return fa;
}

} // namespace detail

/// Fiber of the cover over a curve with constant coefficients in a field k:
/// k[r, s, t] modulo a2' = a4' = a6' = 0 (p = 2) or a1' = a3' = a6' = 0 (p = 3),
/// computed by filtered linear reduction through weight `bound`.
inline FiberAlgebra cover_fiber(const WeierstrassCurve& curve, std::uint64_t p, FieldSpec field, int bound = 30)
{
    if (p != 2 && p != 3)
        throw AlgebraError("covers exist for p = 2 and p = 3 only");
    const std::uint64_t off = p == 2 ? 3 : 2;
    const auto q = field.characteristic;
    if (q == off)
        throw AlgebraError(std::to_string(off) + " is not invertible in " + field.to_string());
    if (curve.ring()->size() != 0) {
        for (auto* c : curve.coefficients())
            if (!c->is_constant())
                throw AlgebraError("cover fiber basis needs a curve over a field; coefficient " +
                                   c->to_string() + " is not a constant");
    }
    if (curve.ring()->modulus() != 0 && curve.ring()->modulus() != q)
        throw AlgebraError("curve is defined modulo " + std::to_string(curve.ring()->modulus()) +
                           ", not over " + field.to_string());

    auto ring = Ring::make({{"r", 4}, {"s", 2}, {"t", 6}}, q);
    auto lift = [&](const Polynomial* c) { return Polynomial::constant(ring, c->constant_term()); };
    WeierstrassCurve k_curve{lift(&curve.a1), lift(&curve.a2), lift(&curve.a3), lift(&curve.a4), lift(&curve.a6)};
    auto g = CoordinateChange{Polynomial::constant(ring, 1), Polynomial::generator(ring, "r"),
                              Polynomial::generator(ring, "s"), Polynomial::generator(ring, "t")};
    auto a = transform(k_curve, g);

    FiberAlgebra fa;
    fa.prime = p;
    fa.field = field;
    fa.ring = ring;
    fa.filtration_bound = bound;
    std::vector<std::size_t> eliminated;
    if (p == 2) {
        fa.relations = {a.a2, a.a4, a.a6};
        eliminated = {0}; // r = (s^2 + s a1 - a2) / 3
    } else {
        fa.relations = {a.a1, a.a3, a.a6};
        eliminated = {1, 2}; // s = -a1 / 2, t = -(a3 + r a1) / 2
    }
    if (q)
        return detail::compute_fiber(PrimeField(q), std::move(fa), eliminated);
    return detail::compute_fiber(RationalField{}, std::move(fa), eliminated);
}

} // namespace tmfalg
