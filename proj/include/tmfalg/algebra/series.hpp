#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "tmfalg/algebra/polynomial.hpp"

namespace tmfalg {

/// Power series in designated variables of a ring, truncated at total
/// series-degree `order`. The remaining generators form the coefficient ring
/// and are never truncated.
class TruncatedSeries {
public:
    TruncatedSeries() = default;

    TruncatedSeries(Polynomial body, std::vector<std::size_t> vars, int order)
        : body_(std::move(body)), vars_(std::move(vars)), order_(order)
    {
        std::sort(vars_.begin(), vars_.end());
        vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
        truncate();
    }

    static TruncatedSeries variable(const RingPtr& ring, std::size_t var, int order)
    {
        return {Polynomial::generator(ring, var), {var}, order};
    }

    static TruncatedSeries constant(const Polynomial& c, std::vector<std::size_t> vars, int order)
    {
        return {c, std::move(vars), order};
    }

    const Polynomial& body() const { return body_; }
    const RingPtr& ring() const { return body_.ring(); }
    const std::vector<std::size_t>& vars() const { return vars_; }
    int order() const { return order_; }

    int series_degree(const Monomial& m) const { return m.degree_in(vars_); }

    /// Coefficient of the series monomial with the given exponents (one per
    /// series variable, in `vars()` order), as a polynomial in the base generators.
    Polynomial coefficient(const std::vector<int>& exps) const
    {
        if (exps.size() != vars_.size())
            throw AlgebraError("series exponent arity mismatch");
        Polynomial out(ring());
        for (const auto& [m, c] : body_.terms()) {
            bool match = true;
            for (std::size_t k = 0; k < vars_.size() && match; ++k)
                match = m.exponent(vars_[k]) == exps[k];
            if (!match)
                continue;
            Monomial base = m;
            base.split_off(vars_, *ring());
            out.add_term(base, c);
        }
        return out;
    }

    Polynomial coefficient(int e) const { return coefficient(std::vector<int>{e}); }

    /// Part of series degree zero.
    Polynomial constant_part() const
    {
        Polynomial out(ring());
        for (const auto& [m, c] : body_.terms())
            if (series_degree(m) == 0)
                out.add_term(m, c);
        return out;
    }

    TruncatedSeries with_order(int order) const { return {body_, vars_, std::min(order, order_)}; }

    TruncatedSeries& operator+=(const TruncatedSeries& o)
    {
        merge_shape(o);
        body_ += o.body_;
        truncate();
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o)
    {
        merge_shape(o);
        body_ -= o.body_;
        truncate();
        return *this;
    }
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator-(TruncatedSeries a)
    {
        a.body_ *= -1;
        return a;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const Polynomial& c)
    {
        return {a.body_ * c, a.vars_, a.order_};
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        TruncatedSeries out = a;
        out.merge_shape(b);
        out.body_ = Polynomial(common_ring(a.ring(), b.ring()));
        // bucket the right factor by series degree so out-of-range pairs are never formed
        std::vector<std::vector<std::pair<Monomial, mpz_class>>> buckets(out.order_ + 1);
        for (const auto& [m, c] : b.body_.terms()) {
            int d = out.series_degree(m);
            if (d <= out.order_)
                buckets[d].emplace_back(m, c);
        }
        for (const auto& [ma, ca] : a.body_.terms()) {
            int da = out.series_degree(ma);
            for (int db = 0; da + db <= out.order_; ++db)
                for (const auto& [mb, cb] : buckets[db])
                    out.body_.add_term(ma * mb, ca * cb);
        }
        return out;
    }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    TruncatedSeries pow(unsigned n) const
    {
        TruncatedSeries result = constant(Polynomial::constant(ring(), 1), vars_, order_);
        for (unsigned i = 0; i < n; ++i)
            result = result * *this;
        return result;
    }

    /// Composition: each listed series variable is replaced by a series with
    /// zero constant term. Exact through the minimum of the truncation orders.
    TruncatedSeries substitute(const std::map<std::size_t, TruncatedSeries>& assignments) const
    {
        std::vector<std::size_t> out_vars;
        int out_order = order_;
        RingPtr out_ring = ring();
        std::vector<std::size_t> replaced;
        for (const auto& [var, g] : assignments) {
            if (std::find(vars_.begin(), vars_.end(), var) == vars_.end())
                throw AlgebraError("substituted variable is not a series variable");
            if (!g.constant_part().is_zero())
                throw AlgebraError("substituted series has nonzero constant term");
            out_order = std::min(out_order, g.order());
            out_ring = common_ring(out_ring, g.ring());
            out_vars.insert(out_vars.end(), g.vars().begin(), g.vars().end());
            replaced.push_back(var);
        }
        for (auto v : vars_)
            if (!assignments.count(v))
                out_vars.push_back(v);

        // group terms by their exponents in the replaced variables
        std::map<std::vector<int>, Polynomial> groups;
        for (const auto& [m, c] : body_.terms()) {
            std::vector<int> key;
            for (auto v : replaced)
                key.push_back(m.exponent(v));
            Monomial rest = m;
            rest.split_off(replaced, *ring());
            auto [it, _] = groups.try_emplace(key, Polynomial(out_ring));
            it->second.add_term(rest, c);
        }

        std::vector<std::vector<TruncatedSeries>> powers(replaced.size());
        std::size_t k = 0;
        for (const auto& [var, g] : assignments) {
            TruncatedSeries gg(g.body().embedded(out_ring), out_vars, out_order);
            powers[k].push_back(constant(Polynomial::constant(out_ring, 1), out_vars, out_order));
            powers[k].push_back(gg);
            ++k;
        }
        auto power = [&](std::size_t idx, int e) -> const TruncatedSeries& {
            auto& cache = powers[idx];
            while (static_cast<int>(cache.size()) <= e)
                cache.push_back(cache.back() * cache[1]);
            return cache[e];
        };

        TruncatedSeries out(Polynomial(out_ring), out_vars, out_order);
        for (const auto& [key, coeff] : groups) {
            // substituted powers raise the series degree by at least their exponent
            int min_degree = 0;
            for (auto e : key)
                min_degree += e;
            if (min_degree > out_order)
                continue;
            TruncatedSeries term(coeff, out_vars, out_order);
            for (std::size_t i = 0; i < key.size(); ++i)
                if (key[i] > 0)
                    term = term * power(i, key[i]);
            out += term;
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        return a.vars_ == b.vars_ && a.order_ == b.order_ && a.body_ == b.body_;
    }

private:
    void merge_shape(const TruncatedSeries& o)
    {
        std::vector<std::size_t> vars;
        std::set_union(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                       std::back_inserter(vars));
        vars_ = std::move(vars);
        order_ = std::min(order_, o.order_);
        if (body_.ring() && o.body_.ring())
            body_ = body_.embedded(common_ring(body_.ring(), o.body_.ring()));
        truncate();
    }

    void truncate()
    {
        if (!body_.ring())
            return;
        Polynomial kept(body_.ring());
        bool dropped = false;
        for (const auto& [m, c] : body_.terms()) {
            if (series_degree(m) <= order_)
                kept.add_term(m, c);
            else
                dropped = true;
        }
        if (dropped)
            body_ = std::move(kept);
    }

    Polynomial body_;
    std::vector<std::size_t> vars_;
    int order_ = 0;
};

/// Compositional inverse g of a one-variable series f = u*z + O(z^2) with u a
/// unit of the coefficients: f(g(z)) = z = g(f(z)) through `order`.
inline TruncatedSeries functional_inverse(const TruncatedSeries& f, int order)
{
    if (f.vars().size() != 1)
        throw AlgebraError("functional inverse needs a one-variable series");
    const auto var = f.vars().front();
    const auto& ring = f.ring();
    if (!f.constant_part().is_zero())
        throw AlgebraError("series has nonzero constant term");
    Polynomial lead = f.coefficient(1);
    if (!lead.is_constant() || lead.is_zero())
        throw AlgebraError("leading coefficient is not a unit");
    mpz_class u = lead.constant_term();
    mpz_class u_inv;
    if (ring->is_integral()) {
        if (u != 1 && u != -1)
            throw AlgebraError("leading coefficient " + u.get_str() + " is not a unit");
        u_inv = u;
    } else {
        mpz_class p(static_cast<unsigned long>(ring->modulus()));
        if (mpz_invert(u_inv.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t()) == 0)
            throw AlgebraError("leading coefficient is not a unit");
    }
    order = std::min(order, f.order());
    const TruncatedSeries z = TruncatedSeries::variable(ring, var, order);
    TruncatedSeries g = z * Polynomial::constant(ring, u_inv);
    // each pass fixes one more coefficient
    for (int i = 1; i < order; ++i) {
        TruncatedSeries fg = f.with_order(order).substitute({{var, g}});
        g += (z - fg) * Polynomial::constant(ring, u_inv);
    }
    return g;
}

} // namespace tmfalg
