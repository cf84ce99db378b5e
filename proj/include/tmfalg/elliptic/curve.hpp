#pragma once

#include <array>
#include <cctype>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "tmfalg/algebra/parse.hpp"

namespace tmfalg {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a base ring.
struct WeierstrassCurve {
    Polynomial a1, a2, a3, a4, a6;

    const RingPtr& ring() const { return a1.ring(); }

    std::array<const Polynomial*, 5> coefficients() const { return {&a1, &a2, &a3, &a4, &a6}; }

    friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;

    std::string to_string() const
    {
        std::string out;
        for (auto* c : coefficients())
            out += (out.empty() ? "" : ", ") + c->to_string();
        return "(" + out + ")";
    }
};

inline constexpr std::array<int, 5> kCoefficientIndex{1, 2, 3, 4, 6};

inline WeierstrassCurve make_curve(const RingPtr& ring, const std::array<Polynomial, 5>& a)
{
    RingPtr common = ring;
    for (const auto& c : a)
        if (c.ring())
            common = common_ring(common, c.ring());
    auto lift = [&](const Polynomial& p) { return p.ring() ? p.embedded(common) : Polynomial(common); };
    return {lift(a[0]), lift(a[1]), lift(a[2]), lift(a[3]), lift(a[4])};
}

/// Z[a1, a2, a3, a4, a6] with |a_i| = 2i.
inline RingPtr weierstrass_ring(std::uint64_t modulus = 0)
{
    return Ring::make({{"a1", 2}, {"a2", 4}, {"a3", 6}, {"a4", 8}, {"a6", 12}}, modulus);
}

inline WeierstrassCurve universal_curve(const RingPtr& ring = weierstrass_ring())
{
    auto g = [&](const char* n) { return Polynomial::generator(ring, n); };
    return {g("a1"), g("a2"), g("a3"), g("a4"), g("a6")};
}

/// Parses five comma-separated coefficients ("a1,0,a3,0,0"). Generator weights
/// come from the coefficient slot a bare name occupies, or else from a
/// trailing index (alpha3 -> 6); A and B get 8 and 12.
inline WeierstrassCurve parse_curve(const std::string& text, std::uint64_t modulus = 0)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 5)
        throw AlgebraError("a curve needs five coefficients a1,a2,a3,a4,a6; got '" + text + "'");

    auto trim = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.pop_back();
        std::size_t i = 0;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        return s.substr(i);
    };

    std::vector<Generator> gens;
    std::map<std::string, int> weight;
    auto declare = [&](const std::string& name, int w) {
        if (weight.count(name))
            return;
        weight[name] = w;
        gens.push_back({name, w});
    };
    static const std::regex ident("[A-Za-z_][A-Za-z_0-9]*");
    static const std::regex indexed("[A-Za-z_]+?([0-9]+)");
    for (std::size_t k = 0; k < 5; ++k) {
        auto s = trim(parts[k]);
        if (std::regex_match(s, ident))
            declare(s, 2 * kCoefficientIndex[k]);
    }
    for (const auto& part : parts) {
        auto s = trim(part);
        for (std::sregex_iterator it(s.begin(), s.end(), ident), end; it != end; ++it) {
            std::string name = it->str();
            if (weight.count(name))
                continue;
            std::smatch m;
            if (name == "A")
                declare(name, 8);
            else if (name == "B")
                declare(name, 12);
            else if (std::regex_match(name, m, indexed))
                declare(name, 2 * std::stoi(m[1].str()));
            else
                throw AlgebraError("cannot infer a weight for generator '" + name + "'");
        }
    }
    auto ring = Ring::make(gens, modulus);
    std::array<Polynomial, 5> a;
    for (std::size_t k = 0; k < 5; ++k)
        a[k] = parse_polynomial(ring, trim(parts[k]));
    return make_curve(ring, a);
}

/// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct CoordinateChange {
    Polynomial u, r, s, t;

    static CoordinateChange identity(const RingPtr& ring)
    {
        return {Polynomial::constant(ring, 1), Polynomial(ring), Polynomial(ring), Polynomial(ring)};
    }
};

namespace detail {

// inverse of a constant unit, as an element of the ring's coefficients
inline mpz_class unit_inverse(const Polynomial& u)
{
    if (!u.is_constant() || u.is_zero())
        throw AlgebraError("u is not invertible: " + u.to_string());
    mpz_class c = u.constant_term();
    if (u.ring()->is_integral()) {
        if (c != 1 && c != -1)
            throw AlgebraError("u = " + c.get_str() + " is not invertible over Z");
        return c;
    }
    mpz_class inv, p(static_cast<unsigned long>(u.ring()->modulus()));
    if (mpz_invert(inv.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t()) == 0)
        throw AlgebraError("u is not invertible modulo " + p.get_str());
    return inv;
}

} // namespace detail

/// The curve a' obtained from the displayed transformation laws
///   u a1' = a1 + 2s
///   u^2 a2' = a2 - s a1 + 3r - s^2
///   u^3 a3' = a3 + r a1 + 2t
///   u^4 a4' = a4 - s a3 + 2 a2 r - (t + rs) a1 + 3r^2 - 2st
///   u^6 a6' = a6 + r a4 + r^2 a2 + r^3 - t a3 - t^2 - r t a1
inline WeierstrassCurve transform(const WeierstrassCurve& c, const CoordinateChange& g)
{
    RingPtr ring = c.ring();
    for (auto* p : {&g.u, &g.r, &g.s, &g.t})
        ring = common_ring(ring, p->ring());
    auto E = [&](const Polynomial& p) { return p.embedded(ring); };
    const auto a1 = E(c.a1), a2 = E(c.a2), a3 = E(c.a3), a4 = E(c.a4), a6 = E(c.a6);
    const auto r = E(g.r), s = E(g.s), t = E(g.t);
    const mpz_class v = detail::unit_inverse(g.u);

    auto n1 = a1 + s * mpz_class(2);
    auto n2 = a2 - s * a1 + r * mpz_class(3) - s * s;
    auto n3 = a3 + r * a1 + t * mpz_class(2);
    auto n4 = a4 - s * a3 + mpz_class(2) * a2 * r - (t + r * s) * a1 + mpz_class(3) * r * r -
              mpz_class(2) * s * t;
    auto n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    auto scale = [&](Polynomial p, int k) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k));
        return p * f;
    };
    return {scale(n1, 1), scale(n2, 2), scale(n3, 3), scale(n4, 4), scale(n6, 6)};
}

struct CurveInvariants {
    Polynomial b2, b4, b6, b8, c4, c6, discriminant;
};

inline CurveInvariants invariants(const WeierstrassCurve& c)
{
    const auto &a1 = c.a1, &a2 = c.a2, &a3 = c.a3, &a4 = c.a4, &a6 = c.a6;
    using Z = mpz_class;
    auto b2 = a1 * a1 + Z(4) * a2;
    auto b4 = Z(2) * a4 + a1 * a3;
    auto b6 = a3 * a3 + Z(4) * a6;
    auto b8 = a1 * a1 * a6 + Z(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    auto c4 = b2 * b2 - Z(24) * b4;
    auto c6 = -(b2 * b2 * b2) + Z(36) * b2 * b4 - Z(216) * b6;
    auto disc = -(b2 * b2 * b8) - Z(8) * b4 * b4 * b4 - Z(27) * b6 * b6 + Z(9) * b2 * b4 * b6;
    return {b2, b4, b6, b8, c4, c6, disc};
}

} // namespace tmfalg
