#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tmfalg/algebra/poincare.hpp"
#include "tmfalg/algebra/polynomial.hpp"
#include "tmfalg/hopf/algebroid.hpp"

namespace tmfalg {

/// Mod 2 dual Steenrod algebra Z/2[xi_1, xi_2, ...], |xi_i| = 2^i - 1, with
/// the generators needed through `cutoff`. A (x) A is the ring on xi_i
/// (left legs) and xi_i_R (right legs), so x.embedded(tensor) is x (x) 1.
class DualSteenrod {
public:
    explicit DualSteenrod(int cutoff) : cutoff_(cutoff)
    {
        if (cutoff < 1)
            throw AlgebraError("dual Steenrod cutoff must be at least 1");
        std::vector<Generator> gens, rights;
        for (int i = 1; (1 << i) - 1 <= cutoff; ++i) {
            gens.push_back({"xi" + std::to_string(i), (1 << i) - 1});
            rights.push_back({"xi" + std::to_string(i) + "_R", (1 << i) - 1});
        }
        ring_ = Ring::make(gens, 2);
        tensor_ = ring_->extended(rights);
        n_ = static_cast<int>(gens.size());

        std::vector<Polynomial> delta;
        for (int k = 1; k <= n_; ++k) {
            Polynomial d(tensor_);
            for (int i = 0; i <= k; ++i)
                d += left(xi(k - i).pow(1u << i)) * right(xi(i));
            delta.push_back(std::move(d));
        }
        delta_ = std::make_unique<RingMap>(ring_, tensor_, delta);

        // sum_{i=0}^{k} xi_{k-i}^{2^i} chi(xi_i) = 0 solved for chi(xi_k)
        conj_.push_back(Polynomial::constant(ring_, 1));
        for (int k = 1; k <= n_; ++k) {
            Polynomial c(ring_);
            for (int i = 0; i < k; ++i)
                c += xi(k - i).pow(1u << i) * conj_[i];
            conj_.push_back(std::move(c));
        }
        std::vector<Polynomial> images(conj_.begin() + 1, conj_.end());
        chi_ = std::make_unique<RingMap>(ring_, ring_, images);
    }

    int cutoff() const { return cutoff_; }
    int generators() const { return n_; }
    const RingPtr& ring() const { return ring_; }
    const RingPtr& tensor_ring() const { return tensor_; }

    /// xi_i; xi_0 = 1.
    Polynomial xi(int i) const
    {
        if (i == 0)
            return Polynomial::constant(ring_, 1);
        if (i < 0 || i > n_)
            throw AlgebraError("xi" + std::to_string(i) + " is beyond the cutoff " + std::to_string(cutoff_));
        return Polynomial::generator(ring_, static_cast<std::size_t>(i - 1));
    }

    /// Conjugate xi-bar_i.
    const Polynomial& conj_xi(int i) const
    {
        if (i < 0 || i > n_)
            throw AlgebraError("xi-bar" + std::to_string(i) + " is beyond the cutoff");
        return conj_[i];
    }

    Polynomial left(const Polynomial& x) const { return x.embedded(tensor_); }

    Polynomial right(const Polynomial& x) const
    {
        std::vector<Polynomial> images;
        for (int i = 0; i < n_; ++i)
            images.push_back(Polynomial::generator(tensor_, static_cast<std::size_t>(n_ + i)));
        return x.embedded(ring_).substitute(images, tensor_);
    }

    Polynomial coproduct(const Polynomial& x) const
    {
        check_degree(x);
        Polynomial out(tensor_);
        for (const auto& [m, c] : x.terms()) {
            auto it = delta_cache_.find(m);
            if (it == delta_cache_.end())
                it = delta_cache_.emplace(m, delta_->image(m)).first;
            out += it->second;
        }
        return out;
    }

    Polynomial conjugate(const Polynomial& x) const
    {
        check_degree(x);
        return (*chi_)(x.embedded(ring_));
    }

    /// A (x) A element as left monomial -> right-leg polynomial.
    std::map<Monomial, Polynomial> right_legs(const Polynomial& t) const
    {
        std::map<Monomial, Polynomial> out;
        std::vector<std::size_t> right_vars;
        for (int i = 0; i < n_; ++i)
            right_vars.push_back(static_cast<std::size_t>(n_ + i));
        std::vector<int> e(static_cast<std::size_t>(n_));
        for (const auto& [m, c] : t.terms()) {
            Monomial l = m;
            const Monomial r = l.split_off(right_vars, *tensor_);
            for (int i = 0; i < n_; ++i)
                e[static_cast<std::size_t>(i)] = r.exponent(static_cast<std::size_t>(n_ + i));
            auto [it, inserted] = out.try_emplace(l, ring_);
            it->second.add_term(Monomial::from_exponents(*ring_, e), c);
        }
        std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
    }

    std::vector<Monomial> basis(int d) const
    {
        if (d < 0)
            return {};
        if (d == 0)
            return {Monomial{}};
        return monomials_of_weight(*ring_, d);
    }

    PoincareSeries poincare(int cutoff) const
    {
        std::vector<int> degrees;
        for (int i = 1; i <= n_; ++i)
            degrees.push_back((1 << i) - 1);
        return PoincareSeries::polynomial(degrees, cutoff);
    }

    /// sum_{i=0}^{k} xi_{k-i}^{2^i} chi(xi_i) for k = 1..generators(); all should vanish.
    std::vector<Polynomial> antipode_defects() const
    {
        std::vector<Polynomial> out;
        for (int k = 1; k <= n_; ++k) {
            Polynomial s(ring_);
            for (int i = 0; i <= k; ++i)
                s += xi(k - i).pow(1u << i) * conjugate(xi(i));
            out.push_back(std::move(s));
        }
        return out;
    }

    std::string text(const Polynomial& x) const { return x.is_zero() ? "0" : x.to_string(); }

private:
    void check_degree(const Polynomial& x) const
    {
        for (const auto& [m, c] : x.terms())
            if (m.weight() > cutoff_)
                throw AlgebraError("degree " + std::to_string(m.weight()) + " exceeds the cutoff " +
                                   std::to_string(cutoff_));
    }

    int cutoff_;
    int n_ = 0;
    RingPtr ring_, tensor_;
    std::vector<Polynomial> conj_;
    std::unique_ptr<RingMap> delta_, chi_;
    mutable std::map<Monomial, Polynomial> delta_cache_;
};

} // namespace tmfalg
