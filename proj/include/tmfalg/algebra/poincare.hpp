#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tmfalg/algebra/ring.hpp"

namespace tmfalg {

/// Graded rank data sum_w dim_w q^w, exact through `cutoff`.
class PoincareSeries {
public:
    explicit PoincareSeries(int cutoff = 0) : coeffs_(static_cast<std::size_t>(cutoff) + 1) {}

    static PoincareSeries one(int cutoff)
    {
        PoincareSeries s(cutoff);
        s.coeffs_[0] = 1;
        return s;
    }

    /// From a weight -> rank table; weights past the cutoff are ignored.
    static PoincareSeries from_ranks(const std::map<int, mpz_class>& ranks, int cutoff)
    {
        PoincareSeries s(cutoff);
        for (const auto& [w, r] : ranks) {
            if (w < 0)
                throw AlgebraError("negative weight in Poincare data");
            if (w <= cutoff)
                s.coeffs_[w] += r;
        }
        return s;
    }

    /// Polynomial algebra on generators of the given positive degrees.
    static PoincareSeries polynomial(const std::vector<int>& degrees, int cutoff)
    {
        auto s = one(cutoff);
        for (int d : degrees) {
            if (d <= 0)
                throw AlgebraError("polynomial generator needs positive degree");
            // multiply by 1/(1 - q^d)
            for (int w = d; w <= cutoff; ++w)
                s.coeffs_[w] += s.coeffs_[w - d];
        }
        return s;
    }

    /// Exterior algebra on generators of the given positive degrees.
    static PoincareSeries exterior(const std::vector<int>& degrees, int cutoff)
    {
        auto s = one(cutoff);
        for (int d : degrees)
            for (int w = cutoff; w >= d; --w)
                s.coeffs_[w] += s.coeffs_[w - d];
        return s;
    }

    /// Sum of q^d over a multiset of cell degrees.
    static PoincareSeries cells(const std::vector<int>& degrees, int cutoff)
    {
        PoincareSeries s(cutoff);
        for (int d : degrees)
            if (d >= 0 && d <= cutoff)
                s.coeffs_[d] += 1;
        return s;
    }

    int cutoff() const { return static_cast<int>(coeffs_.size()) - 1; }
    const mpz_class& operator[](int w) const { return coeffs_.at(w); }
    mpz_class& operator[](int w) { return coeffs_.at(w); }
    const std::vector<mpz_class>& coefficients() const { return coeffs_; }

    friend PoincareSeries operator*(const PoincareSeries& a, const PoincareSeries& b)
    {
        const int n = std::min(a.cutoff(), b.cutoff());
        PoincareSeries out(n);
        for (int i = 0; i <= n; ++i) {
            if (a.coeffs_[i] == 0)
                continue;
            for (int j = 0; i + j <= n; ++j)
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return out;
    }

    /// a / b for b with constant term 1.
    friend PoincareSeries operator/(const PoincareSeries& a, const PoincareSeries& b)
    {
        if (b.coeffs_[0] != 1)
            throw AlgebraError("Poincare division needs constant term 1");
        const int n = std::min(a.cutoff(), b.cutoff());
        PoincareSeries out(n);
        for (int w = 0; w <= n; ++w) {
            mpz_class c = a.coeffs_[w];
            for (int j = 1; j <= w; ++j)
                c -= b.coeffs_[j] * out.coeffs_[w - j];
            out.coeffs_[w] = c;
        }
        return out;
    }

    friend bool operator==(const PoincareSeries&, const PoincareSeries&) = default;

    mpz_class total() const
    {
        mpz_class t = 0;
        for (const auto& c : coeffs_)
            t += c;
        return t;
    }

    /// Highest degree with a nonzero coefficient, or -1.
    int top_degree() const
    {
        for (int w = cutoff(); w >= 0; --w)
            if (coeffs_[w] != 0)
                return w;
        return -1;
    }

    bool nonnegative() const
    {
        for (const auto& c : coeffs_)
            if (c < 0)
                return false;
        return true;
    }

    /// Coefficients at 0, step, 2*step, ... through the cutoff.
    std::vector<mpz_class> sampled(int step) const
    {
        std::vector<mpz_class> out;
        for (int w = 0; w <= cutoff(); w += step)
            out.push_back(coeffs_[w]);
        return out;
    }

private:
    std::vector<mpz_class> coeffs_;
};

} // namespace tmfalg
