#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tmfalg/algebra/ring.hpp"

namespace tmfalg {

/// Exponent vector indexed positionally by a generator table, with its
/// cached weight. Positions beyond the owning ring are always zero.
class Monomial {
public:
    Monomial() = default;

    static Monomial from_exponents(const Ring& ring, std::span<const int> exps)
    {
        if (exps.size() > ring.size())
            throw AlgebraError("exponent vector longer than generator table");
        Monomial m;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0 || exps[i] > 0xFFFF)
                throw AlgebraError("exponent out of range");
            m.exps_[i] = static_cast<std::uint16_t>(exps[i]);
            m.weight_ += static_cast<std::int64_t>(exps[i]) * ring.weight(i);
        }
        return m;
    }

    static Monomial generator(const Ring& ring, std::size_t i, int power = 1)
    {
        Monomial m;
        m.exps_.at(i) = static_cast<std::uint16_t>(power);
        m.weight_ = static_cast<std::int64_t>(power) * ring.weight(i);
        return m;
    }

    int exponent(std::size_t i) const { return exps_[i]; }
    std::int64_t weight() const { return weight_; }

    int degree() const
    {
        int d = 0;
        for (auto e : exps_)
            d += e;
        return d;
    }

    bool is_one() const { return degree() == 0; }

    int degree_in(std::span<const std::size_t> vars) const
    {
        int d = 0;
        for (auto v : vars)
            d += exps_[v];
        return d;
    }

    bool divides(const Monomial& other) const
    {
        for (std::size_t i = 0; i < kMaxGenerators; ++i)
            if (exps_[i] > other.exps_[i])
                return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const
    {
        Monomial m;
        for (std::size_t i = 0; i < kMaxGenerators; ++i) {
            unsigned e = unsigned(exps_[i]) + o.exps_[i];
            if (e > 0xFFFF)
                throw AlgebraError("exponent overflow");
            m.exps_[i] = static_cast<std::uint16_t>(e);
        }
        m.weight_ = weight_ + o.weight_;
        return m;
    }

    /// Drops the given positions (sets them to zero) and returns what was removed.
    Monomial split_off(std::span<const std::size_t> vars, const Ring& ring)
    {
        Monomial removed;
        for (auto v : vars) {
            removed.exps_[v] = exps_[v];
            removed.weight_ += std::int64_t(exps_[v]) * ring.weight(v);
            weight_ -= std::int64_t(exps_[v]) * ring.weight(v);
            exps_[v] = 0;
        }
        return removed;
    }

    /// Graded lexicographic: weight first, then exponents with the first
    /// generator most significant.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (auto c = a.weight_ <=> b.weight_; c != 0)
            return c;
        for (std::size_t i = 0; i < kMaxGenerators; ++i)
            if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0)
                return c;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) = default;

    std::string to_string(const Ring& ring) const
    {
        std::string out;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            if (exps_[i] == 0)
                continue;
            if (!out.empty())
                out += '*';
            out += ring.generator(i).name;
            if (exps_[i] != 1)
                out += '^' + std::to_string(exps_[i]);
        }
        return out;
    }

private:
    std::array<std::uint16_t, kMaxGenerators> exps_{};
    std::int64_t weight_ = 0;
};

/// Sparse exact polynomial over Z or Z/p on a named, weighted generator table.
/// Never stores a zero coefficient; residues are kept in [0, p).
class Polynomial {
public:
    using TermMap = std::map<Monomial, mpz_class>;

    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial constant(RingPtr ring, const mpz_class& c)
    {
        Polynomial p(std::move(ring));
        p.add_term(Monomial{}, c);
        return p;
    }

    static Polynomial generator(RingPtr ring, std::size_t i)
    {
        Polynomial p(ring);
        p.add_term(Monomial::generator(*ring, i), 1);
        return p;
    }

    static Polynomial generator(RingPtr ring, std::string_view name)
    {
        auto i = ring->require(name);
        return generator(std::move(ring), i);
    }

    static Polynomial monomial(RingPtr ring, const Monomial& m, const mpz_class& c = 1)
    {
        Polynomial p(std::move(ring));
        p.add_term(m, c);
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    mpz_class constant_term() const { return coefficient(Monomial{}); }

    mpz_class coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? mpz_class(0) : it->second;
    }

    /// Accumulates c*m, normalizing modulo p and erasing cancellations.
    void add_term(const Monomial& m, const mpz_class& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted)
            it->second += c;
        normalize(it->second);
        if (it->second == 0)
            terms_.erase(it);
    }

    /// Re-tags this polynomial with a ring it embeds in.
    Polynomial embedded(const RingPtr& target) const
    {
        if (target == ring_)
            return *this;
        if (!ring_->embeds_in(*target))
            throw AlgebraError("polynomial ring does not embed in target ring");
        Polynomial p(target);
        p.terms_ = terms_;
        return p;
    }

    /// Re-tags this polynomial with a prefix ring; fails if a dropped generator occurs.
    Polynomial restricted(const RingPtr& target) const
    {
        if (target == ring_)
            return *this;
        if (!target->embeds_in(*ring_))
            throw AlgebraError("target ring is not a prefix of this ring");
        for (const auto& [m, c] : terms_)
            for (std::size_t i = target->size(); i < ring_->size(); ++i)
                if (m.exponent(i))
                    throw AlgebraError("generator '" + ring_->generator(i).name +
                                       "' does not exist in the target ring");
        Polynomial p(target);
        p.terms_ = terms_;
        return p;
    }

    /// Same monomials, coefficients reduced modulo a prime.
    Polynomial reduced_mod(std::uint64_t p) const
    {
        if (ring_->modulus() == p)
            return *this;
        if (!ring_->is_integral())
            throw AlgebraError("can only reduce integral polynomials");
        Polynomial out(ring_->with_modulus(p));
        for (const auto& [m, c] : terms_)
            out.add_term(m, c);
        return out;
    }

    std::optional<std::int64_t> weight() const
    {
        if (terms_.empty())
            return std::nullopt;
        auto w = terms_.begin()->first.weight();
        for (const auto& [m, c] : terms_)
            if (m.weight() != w)
                return std::nullopt;
        return w;
    }

    bool is_homogeneous() const { return terms_.empty() || weight().has_value(); }

    Polynomial homogeneous_part(std::int64_t w) const
    {
        Polynomial p(ring_);
        for (const auto& [m, c] : terms_)
            if (m.weight() == w)
                p.terms_.emplace(m, c);
        return p;
    }

    Polynomial& operator+=(const Polynomial& o) { return accumulate(o, 1); }
    Polynomial& operator-=(const Polynomial& o) { return accumulate(o, -1); }

    Polynomial& operator*=(const mpz_class& c)
    {
        if (c == 0 || (ring_ && !ring_->is_integral() && residue(c) == 0)) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= c;
            normalize(it->second);
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const mpz_class& c) { return a *= c; }
    friend Polynomial operator*(const mpz_class& c, Polynomial a) { return a *= c; }
    friend Polynomial operator-(Polynomial a) { return a *= -1; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial out(common_ring(a.ring_, b.ring_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.add_term(ma * mb, ca * cb);
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(unsigned n) const
    {
        Polynomial result = constant(ring_, 1);
        Polynomial base = *this;
        while (n) {
            if (n & 1u)
                result *= base;
            n >>= 1;
            if (n)
                base *= base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        if (a.ring_ && b.ring_ && a.ring_->modulus() != b.ring_->modulus())
            return false;
        return a.terms_ == b.terms_;
    }

    /// Divides every coefficient by d, failing unless the division is exact
    /// (over Z) or d is invertible (over Z/p).
    Polynomial divided_exactly(const mpz_class& d) const
    {
        if (d == 0)
            throw AlgebraError("division by zero");
        Polynomial out(ring_);
        if (!ring_->is_integral()) {
            mpz_class inv, p(static_cast<unsigned long>(ring_->modulus()));
            if (mpz_invert(inv.get_mpz_t(), mpz_class(d).get_mpz_t(), p.get_mpz_t()) == 0)
                throw AlgebraError(d.get_str() + " is not invertible modulo " + p.get_str());
            return *this * inv;
        }
        for (const auto& [m, c] : terms_) {
            if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
                throw AlgebraError("coefficient " + c.get_str() + " not divisible by " + d.get_str());
            out.terms_.emplace(m, mpz_class(c / d));
        }
        return out;
    }

    /// Ring homomorphism: generator i of this ring maps to images[i].
    /// All images must share a ring; generators past images.size() are fixed
    /// only when they exist in that ring.
    Polynomial substitute(const std::vector<Polynomial>& images, const RingPtr& target) const
    {
        Polynomial out(target);
        std::vector<std::vector<Polynomial>> powers(ring_->size());
        auto power = [&](std::size_t i, int e) -> const Polynomial& {
            auto& cache = powers[i];
            if (cache.empty()) {
                cache.push_back(constant(target, 1));
                cache.push_back(i < images.size() ? images[i].embedded(target)
                                                  : generator(target, i));
            }
            while (static_cast<int>(cache.size()) <= e)
                cache.push_back(cache.back() * cache[1]);
            return cache[e];
        };
        for (const auto& [m, c] : terms_) {
            Polynomial term = constant(target, c);
            for (std::size_t i = 0; i < ring_->size() && !term.is_zero(); ++i)
                if (int e = m.exponent(i))
                    term = term * power(i, e);
            out += term;
        }
        return out;
    }

    /// Sets the listed generators to zero.
    Polynomial without(std::span<const std::size_t> vars) const
    {
        Polynomial out(ring_);
        for (const auto& [m, c] : terms_) {
            bool keep = true;
            for (auto v : vars)
                keep = keep && m.exponent(v) == 0;
            if (keep)
                out.terms_.emplace(m, c);
        }
        return out;
    }

    /// Canonical text form: `coef*gen^e*...` joined by ` + `, highest
    /// monomial first; exponent 1 is written as the bare name.
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const bool negative = it->second < 0;
            const mpz_class mag = abs(it->second);
            if (out.empty())
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            if (it->first.is_one())
                out += mag.get_str();
            else
                out += (mag == 1 ? "" : mag.get_str() + '*') + it->first.to_string(*ring_);
        }
        return out;
    }

private:
    mpz_class residue(const mpz_class& c) const
    {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(ring_->modulus()));
        return r;
    }

    void normalize(mpz_class& c) const
    {
        if (ring_ && !ring_->is_integral())
            mpz_fdiv_r_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(ring_->modulus()));
    }

    Polynomial& accumulate(const Polynomial& o, int sign)
    {
        if (!ring_)
            ring_ = o.ring_;
        ring_ = common_ring(ring_, o.ring_);
        for (const auto& [m, c] : o.terms_)
            add_term(m, sign > 0 ? c : mpz_class(-c));
        return *this;
    }

    RingPtr ring_;
    TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

/// All monomials of exactly weight `w` in the listed generators (all of
/// which must have positive weight), in increasing monomial order.
inline std::vector<Monomial> monomials_of_weight(const Ring& ring, std::span<const std::size_t> vars,
                                                 std::int64_t w)
{
    std::vector<Monomial> out;
    if (w < 0)
        return out;
    for (auto v : vars)
        if (ring.weight(v) <= 0)
            throw AlgebraError("monomial enumeration needs positive generator weights");
    std::vector<int> exps(ring.size(), 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
        if (k == vars.size()) {
            if (left == 0)
                out.push_back(Monomial::from_exponents(ring, exps));
            return;
        }
        auto v = vars[k];
        for (int e = 0; std::int64_t(e) * ring.weight(v) <= left; ++e) {
            exps[v] = e;
            rec(k + 1, left - std::int64_t(e) * ring.weight(v));
        }
        exps[v] = 0;
    };
    rec(0, w);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Monomial> monomials_of_weight(const Ring& ring, std::int64_t w)
{
    std::vector<std::size_t> vars(ring.size());
    for (std::size_t i = 0; i < vars.size(); ++i)
        vars[i] = i;
    return monomials_of_weight(ring, vars, w);
}

} // namespace tmfalg
