#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tmfalg/algebra/polynomial.hpp"
#include "tmfalg/elliptic/curve.hpp"

namespace tmfalg {

/// Evaluates a ring map given by generator images, caching generator powers
/// across calls. Images must live in `target`.
class RingMap {
public:
    RingMap(RingPtr source, RingPtr target, std::vector<Polynomial> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
    {
        if (images_.size() != source_->size())
            throw AlgebraError("ring map needs one image per generator");
        for (auto& im : images_)
            im = im.embedded(target_);
        powers_.resize(images_.size());
    }

    const RingPtr& target() const { return target_; }

    Polynomial operator()(const Polynomial& p)
    {
        Polynomial out(target_);
        for (const auto& [m, c] : p.terms())
            out += image(m) * c;
        return out;
    }

    Polynomial image(const Monomial& m)
    {
        Polynomial term = Polynomial::constant(target_, 1);
        for (std::size_t i = 0; i < images_.size() && !term.is_zero(); ++i)
            if (int e = m.exponent(i))
                term = term * power(i, e);
        return term;
    }

private:
    const Polynomial& power(std::size_t i, int e)
    {
        auto& cache = powers_[i];
        if (cache.empty()) {
            cache.push_back(Polynomial::constant(target_, 1));
            cache.push_back(images_[i]);
        }
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(cache.back() * images_[i]);
        return cache[e];
    }

    RingPtr source_, target_;
    std::vector<Polynomial> images_;
    std::vector<std::vector<Polynomial>> powers_;
};

struct AxiomCheck {
    std::string name;
    bool ok = false;
    std::string detail; // first failing generator, if any
};

/// (A, Gamma) with Gamma = A[g_1..g_n] (or a quotient by g^2 = g for
/// generators flagged idempotent). Elements of Gamma^{(x)s} live in the ring
/// T_s = A[g[1], .., g[s]] with A-coefficients on the far left; a coefficient
/// a sitting right of block k is written R_k(a) = eta_R applied k times.
/// Delta encodes "first the left factor, then the right factor".
class HopfAlgebroid {
public:
    std::string name;
    RingPtr A;
    RingPtr gamma;                  // A extended by the Gamma generators
    std::vector<bool> idempotent;   // per Gamma generator
    std::vector<Polynomial> eta_R;  // per A generator, in gamma
    std::vector<Polynomial> delta;  // per Gamma generator, in tensor(2)
    std::vector<Polynomial> chi;    // per Gamma generator, in gamma
    Polynomial omega_unit;          // grouplike u; the twist omega^j has coaction u^j
    int omega_weight = 2;           // omega^j sits in weight j * omega_weight
    std::vector<std::string> notes;

    std::size_t a_size() const { return A->size(); }
    std::size_t g_size() const { return gamma->size() - A->size(); }
    std::size_t g_index(std::size_t g, int block) const
    {
        return a_size() + static_cast<std::size_t>(block - 1) * g_size() + g;
    }

    RingPtr tensor(int s) const
    {
        while (static_cast<int>(tensors_->size()) <= s) {
            const int k = static_cast<int>(tensors_->size());
            if (k == 0) {
                tensors_->push_back(A);
                continue;
            }
            std::vector<Generator> extra;
            for (std::size_t g = 0; g < g_size(); ++g) {
                const auto& gen = gamma->generator(a_size() + g);
                extra.push_back({gen.name + "_" + std::to_string(k), gen.weight});
            }
            tensors_->push_back(tensors_->back()->extended(extra));
        }
        return (*tensors_)[s];
    }

    /// Reduces exponents of idempotent generators in T_s (or in gamma when s < 0).
    Polynomial normal_form(const Polynomial& p) const
    {
        if (std::none_of(idempotent.begin(), idempotent.end(), [](bool b) { return b; }))
            return p;
        const auto& ring = p.ring();
        const std::size_t blocks = (ring->size() - a_size()) / std::max<std::size_t>(g_size(), 1);
        Polynomial out(ring);
        for (const auto& [m, c] : p.terms()) {
            std::vector<int> e(ring->size());
            for (std::size_t i = 0; i < ring->size(); ++i)
                e[i] = m.exponent(i);
            for (std::size_t b = 1; b <= blocks; ++b)
                for (std::size_t g = 0; g < g_size(); ++g)
                    if (idempotent[g])
                        e[g_index(g, static_cast<int>(b))] = std::min(e[g_index(g, static_cast<int>(b))], 1);
            out.add_term(Monomial::from_exponents(*ring, e), c);
        }
        return out;
    }

    /// R_k(a_i) in T_k.
    const Polynomial& transported(std::size_t a, int k) const
    {
        while (static_cast<int>(transport_->size()) <= k) {
            const int level = static_cast<int>(transport_->size());
            std::vector<Polynomial> row;
            for (std::size_t i = 0; i < a_size(); ++i) {
                if (level == 0)
                    row.push_back(Polynomial::generator(A, i));
                else
                    row.push_back(place(eta_R[i], level, level));
            }
            transport_->push_back(std::move(row));
        }
        return (*transport_)[k][a];
    }

    /// Gamma element placed in block k of T_s.
    Polynomial place(const Polynomial& x, int k, int s) const
    {
        const auto& T = tensor(s);
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < a_size(); ++i)
            images.push_back(transported(i, k - 1).embedded(T));
        for (std::size_t g = 0; g < g_size(); ++g)
            images.push_back(Polynomial::generator(T, g_index(g, k)));
        return normal_form(x.embedded(gamma).substitute(images, T));
    }

    /// Gamma element in T_1 (block 1), and back.
    Polynomial to_tensor1(const Polynomial& x) const { return place(x, 1, 1); }
    Polynomial from_tensor1(const Polynomial& x) const
    {
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < gamma->size(); ++i)
            images.push_back(Polynomial::generator(gamma, i));
        return x.embedded(tensor(1)).substitute(images, gamma);
    }

    /// Coface d^i : T_s -> T_{s+1}, 0 <= i <= s + 1. d^0 prepends 1, d^i
    /// applies Delta to block i, d^{s+1} appends 1.
    RingMap coface(int s, int i) const
    {
        if (i < 0 || i > s + 1)
            throw AlgebraError("coface index out of range");
        const auto& T = tensor(s + 1);
        std::vector<Polynomial> images;
        for (std::size_t a = 0; a < a_size(); ++a)
            images.push_back(i == 0 ? transported(a, 1).embedded(T) : Polynomial::generator(T, a));
        for (int k = 1; k <= s; ++k)
            for (std::size_t g = 0; g < g_size(); ++g) {
                if (k < i)
                    images.push_back(Polynomial::generator(T, g_index(g, k)));
                else if (k > i)
                    images.push_back(Polynomial::generator(T, g_index(g, k + 1)));
                else
                    images.push_back(delta_at(g, k, s + 1));
            }
        return RingMap(tensor(s), T, std::move(images));
    }

    /// Delta(g) occupying blocks k, k+1 of T_s.
    Polynomial delta_at(std::size_t g, int k, int s) const
    {
        const auto& T = tensor(s);
        std::vector<Polynomial> images;
        for (std::size_t a = 0; a < a_size(); ++a)
            images.push_back(transported(a, k - 1).embedded(T));
        for (int b = 1; b <= 2; ++b)
            for (std::size_t h = 0; h < g_size(); ++h)
                images.push_back(Polynomial::generator(T, g_index(h, k + b - 1)));
        return normal_form(delta[g].substitute(images, T));
    }

    /// Ring map Gamma -> Gamma: chi(a) = eta_R(a), chi(g) = chi[g].
    Polynomial apply_chi(const Polynomial& x) const
    {
        std::vector<Polynomial> images = eta_R;
        images.insert(images.end(), chi.begin(), chi.end());
        return normal_form(x.embedded(gamma).substitute(images, gamma));
    }

    Polynomial counit(const Polynomial& x) const
    {
        std::vector<std::size_t> gs;
        for (std::size_t g = 0; g < g_size(); ++g)
            gs.push_back(a_size() + g);
        return x.embedded(gamma).without(gs).restricted(A);
    }

    /// u^j for the twist comodule; negative j uses chi(u) = u^{-1}.
    Polynomial omega_power(int j) const
    {
        const auto base = j >= 0 ? omega_unit : apply_chi(omega_unit);
        return normal_form(base.pow(static_cast<unsigned>(std::abs(j))));
    }

    std::vector<AxiomCheck> verify() const;

    std::string describe() const
    {
        std::string out = name + ": A = " + ring_text(*A) + ", Gamma = A[";
        for (std::size_t g = 0; g < g_size(); ++g)
            out += (g ? ", " : "") + gamma->generator(a_size() + g).name;
        out += "]\n";
        for (std::size_t a = 0; a < a_size(); ++a)
            out += "  eta_R(" + A->generator(a).name + ") = " + eta_R[a].to_string() + "\n";
        for (std::size_t g = 0; g < g_size(); ++g)
            out += "  Delta(" + gamma->generator(a_size() + g).name + ") = " + delta[g].to_string() + "\n";
        for (std::size_t g = 0; g < g_size(); ++g)
            out += "  chi(" + gamma->generator(a_size() + g).name + ") = " + chi[g].to_string() + "\n";
        return out;
    }

private:
    static std::string ring_text(const Ring& r)
    {
        std::string out = "Z[";
        for (std::size_t i = 0; i < r.size(); ++i)
            out += (i ? ", " : "") + r.generator(i).name;
        return out + "]";
    }

    std::shared_ptr<std::vector<RingPtr>> tensors_ = std::make_shared<std::vector<RingPtr>>();
    std::shared_ptr<std::vector<std::vector<Polynomial>>> transport_ =
        std::make_shared<std::vector<std::vector<Polynomial>>>();
};

inline std::vector<AxiomCheck> HopfAlgebroid::verify() const
{
    std::vector<AxiomCheck> out;
    auto check = [&](const std::string& what, std::size_t count, const std::function<bool(std::size_t)>& pred) {
        AxiomCheck c{what, true, ""};
        for (std::size_t i = 0; c.ok && i < count; ++i)
            if (!pred(i)) {
                c.ok = false;
                c.detail = "fails on generator " + std::to_string(i);
            }
        out.push_back(std::move(c));
    };
    const auto gamma_gen = [&](std::size_t g) { return Polynomial::generator(gamma, a_size() + g); };

    check("counit of eta_R", a_size(), [&](std::size_t a) {
                                      return counit(eta_R[a]) == Polynomial::generator(A, a);
                                  });
    // counit laws: kill block 1 (resp. 2) of Delta(g)
    auto collapse = [&](const Polynomial& x, int killed) {
        std::vector<Polynomial> images;
        for (std::size_t a = 0; a < a_size(); ++a)
            images.push_back(Polynomial::generator(gamma, a));
        for (int b = 1; b <= 2; ++b)
            for (std::size_t h = 0; h < g_size(); ++h)
                images.push_back(b == killed ? Polynomial(gamma) : gamma_gen(h));
        return normal_form(x.substitute(images, gamma));
    };
    check("left counit", g_size(), [&](std::size_t g) { return collapse(delta[g], 1) == gamma_gen(g); });
    check("right counit", g_size(), [&](std::size_t g) { return collapse(delta[g], 2) == gamma_gen(g); });
    check("Delta respects eta_R", a_size(), [&](std::size_t a) {
                                           auto d1 = coface(1, 1);
                                           return normal_form(d1(transported(a, 1))) == transported(a, 2);
                                       });
    check("coassociativity", g_size(), [&](std::size_t g) {
                                      auto d1 = coface(2, 1), d2 = coface(2, 2);
                                      const auto& x = delta[g];
                                      return normal_form(d1(x)) == normal_form(d2(x));
                                  });
    check("idempotents preserved by Delta and chi", g_size(), [&](std::size_t g) {
                                                             if (!idempotent[g])
                                                                 return true;
                                                             const auto& d = delta[g];
                                                             return normal_form(d * d) == d &&
                                                                    normal_form(chi[g] * chi[g]) == chi[g];
                                                         });
    check("chi exchanges the units", a_size(), [&](std::size_t a) {
                                              return apply_chi(eta_R[a]) == Polynomial::generator(gamma, a);
                                          });
    check("chi is an involution", g_size(), [&](std::size_t g) { return apply_chi(chi[g]) == gamma_gen(g); });
    // mu(1 (x) chi) Delta(g) = 0 and mu(chi (x) 1) Delta(g) = 0
    auto antipode = [&](std::size_t g, bool left) {
        std::vector<Polynomial> images;
        for (std::size_t a = 0; a < a_size(); ++a)
            images.push_back(left ? eta_R[a] : Polynomial::generator(gamma, a));
        for (int b = 1; b <= 2; ++b)
            for (std::size_t h = 0; h < g_size(); ++h)
                images.push_back((b == 1) == left ? chi[h] : gamma_gen(h));
        return normal_form(delta[g].substitute(images, gamma)).is_zero();
    };
    check("antipode (1 x chi)", g_size(), [&](std::size_t g) { return antipode(g, false); });
    check("antipode (chi x 1)", g_size(), [&](std::size_t g) { return antipode(g, true); });
    check("twist unit is grouplike", 1, [&](std::size_t) {
                                              auto d1 = coface(1, 1);
                                              auto u1 = to_tensor1(omega_unit);
                                              auto lhs = normal_form(d1(u1));
                                              auto rhs = normal_form(place(omega_unit, 1, 2) * place(omega_unit, 2, 2));
                                              return lhs == rhs && counit(omega_unit) == Polynomial::constant(A, 1);
                                          });
    return out;
}

inline bool all_axioms_hold(const std::vector<AxiomCheck>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.ok; });
}

namespace detail {

inline HopfAlgebroid make_algebroid(std::string name, RingPtr A, const std::vector<Generator>& gens,
                                    std::vector<bool> idempotent)
{
    HopfAlgebroid h;
    h.name = std::move(name);
    h.A = std::move(A);
    h.gamma = h.A->extended(gens);
    h.idempotent = std::move(idempotent);
    h.omega_unit = Polynomial::constant(h.gamma, 1);
    return h;
}

// chi(g) from mu(1 (x) chi) Delta(g) = 0, solved generator by generator in weight order.
inline void derive_conjugation(HopfAlgebroid& h)
{
    const auto n = h.g_size();
    std::vector<std::size_t> order(n);
    for (std::size_t g = 0; g < n; ++g)
        order[g] = g;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return h.gamma->weight(h.a_size() + x) < h.gamma->weight(h.a_size() + y);
    });
    h.chi.assign(n, Polynomial(h.gamma));
    std::vector<bool> known(n, false);
    const auto T2 = h.tensor(2);
    for (auto g : order) {
        const auto gen2 = Polynomial::generator(T2, h.g_index(g, 2));
        const auto rest = h.delta[g] - gen2;
        std::vector<Polynomial> images;
        for (std::size_t a = 0; a < h.a_size(); ++a)
            images.push_back(Polynomial::generator(h.gamma, a));
        for (std::size_t k = 0; k < n; ++k)
            images.push_back(Polynomial::generator(h.gamma, h.a_size() + k));
        for (std::size_t k = 0; k < n; ++k) {
            const bool occurs = std::any_of(rest.terms().begin(), rest.terms().end(), [&](const auto& t) {
                return t.first.exponent(h.g_index(k, 2)) != 0;
            });
            if (occurs && !known[k])
                throw AlgebraError("conjugation of " + h.gamma->generator(h.a_size() + g).name +
                                   " is not determined by lower generators");
            images.push_back(h.chi[k]);
        }
        h.chi[g] = -rest.substitute(images, h.gamma);
        known[g] = true;
    }
}

} // namespace detail

/// Weierstrass algebroid (Z[a1..a6], Z[a1..a6][r, s, t]) with u = 1. eta_R is
/// read off the transformation laws; Delta is obtained by composing two generic
/// changes x = x' + r, y = y' + s x' + t; chi solves the antipode identity.
inline HopfAlgebroid synthesize_weierstrass_algebroid()
{
    auto h = detail::make_algebroid("weierstrass", weierstrass_ring(), {{"r", 4}, {"s", 2}, {"t", 6}},
                                    {false, false, false});
    auto g = [&](const char* n) { return Polynomial::generator(h.gamma, n); };
    auto curve = make_curve(h.gamma, {g("a1"), g("a2"), g("a3"), g("a4"), g("a6")});
    auto moved = transform(curve, {Polynomial::constant(h.gamma, 1), g("r"), g("s"), g("t")});
    h.eta_R = {moved.a1, moved.a2, moved.a3, moved.a4, moved.a6};

    // composite of (r1, s1, t1) followed by (r2, s2, t2)
    auto B = h.A->extended(
        {{"r1", 4}, {"s1", 2}, {"t1", 6}, {"r2", 4}, {"s2", 2}, {"t2", 6}, {"X", 4}, {"Y", 6}});
    auto b = [&](const char* n) { return Polynomial::generator(B, n); };
    const auto x_mid = b("X") + b("r2");
    const auto y_mid = b("Y") + b("s2") * b("X") + b("t2");
    const auto x_old = x_mid + b("r1");
    const auto y_old = y_mid + b("s1") * x_mid + b("t1");
    const std::size_t X = B->require("X"), Y = B->require("Y");
    auto coeff = [&](const Polynomial& p, int ex, int ey) {
        Polynomial out(B);
        for (const auto& [m, c] : p.terms())
            if (m.exponent(X) == ex && m.exponent(Y) == ey) {
                std::vector<int> e(B->size());
                for (std::size_t i = 0; i < B->size(); ++i)
                    e[i] = m.exponent(i);
                e[X] = e[Y] = 0;
                out.add_term(Monomial::from_exponents(*B, e), c);
            }
        return out;
    };
    const auto r = coeff(x_old, 0, 0), s = coeff(y_old, 1, 0), t = coeff(y_old, 0, 0);
    if (x_old != b("X") + r || y_old != b("Y") + s * b("X") + t)
        throw AlgebraError("composite is not a coordinate change of the same shape");

    const auto T2 = h.tensor(2);
    std::vector<Polynomial> images;
    for (std::size_t a = 0; a < h.a_size(); ++a)
        images.push_back(Polynomial::generator(T2, a));
    for (int blk = 1; blk <= 2; ++blk)
        for (std::size_t k = 0; k < 3; ++k)
            images.push_back(Polynomial::generator(T2, h.g_index(k, blk)));
    images.push_back(Polynomial(T2));
    images.push_back(Polynomial(T2));
    h.delta = {r.substitute(images, T2), s.substitute(images, T2), t.substitute(images, T2)};
    detail::derive_conjugation(h);
    h.notes.push_back("Delta(g) reads the left tensor factor as the first coordinate change");
    if (!all_axioms_hold(h.verify()))
        throw AlgebraError("synthesized Weierstrass algebroid fails its axioms");
    return h;
}

/// Built-in presentations: "mqd" (Z[b, c], Z[b, c, t]) and "z2_group"
/// (Z, functions on Z/2 with e the indicator of the non-identity element).
inline HopfAlgebroid builtin_algebroid(const std::string& name)
{
    if (name == "mqd") {
        auto h = detail::make_algebroid("mqd", Ring::make({{"b", 2}, {"c", 4}}), {{"t", 2}}, {false});
        auto g = [&](const char* n) { return Polynomial::generator(h.gamma, n); };
        h.eta_R = {g("b") + mpz_class(2) * g("t"), g("c") + g("t") * g("t") + g("b") * g("t")};
        auto T2 = h.tensor(2);
        h.delta = {Polynomial::generator(T2, "t_1") + Polynomial::generator(T2, "t_2")};
        h.chi = {-g("t")};
        if (!all_axioms_hold(h.verify()))
            throw AlgebraError("mqd presentation fails its axioms");
        return h;
    }
    if (name == "z2_group") {
        auto h = detail::make_algebroid("z2_group", Ring::make(std::vector<Generator>{}), {{"e", 0}}, {true});
        auto e = Polynomial::generator(h.gamma, "e");
        auto T2 = h.tensor(2);
        auto e1 = Polynomial::generator(T2, "e_1"), e2 = Polynomial::generator(T2, "e_2");
        h.eta_R = {};
        h.delta = {e1 + e2 - mpz_class(2) * e1 * e2};
        h.chi = {e};
        h.omega_unit = Polynomial::constant(h.gamma, 1) - mpz_class(2) * e;
        h.omega_weight = 0;
        h.notes.push_back("omega^j is Z with the generator acting by (-1)^j");
        if (!all_axioms_hold(h.verify()))
            throw AlgebraError("z2_group presentation fails its axioms");
        return h;
    }
    if (name == "weierstrass")
        return synthesize_weierstrass_algebroid();
    throw AlgebraError("unknown algebroid '" + name + "' (expected mqd, z2_group or weierstrass)");
}

} // namespace tmfalg
