#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "tmfalg/algebra/ring.hpp"

namespace tmfalg {

/// Z/p with word-sized residues.
struct PrimeField {
    using Element = std::uint64_t;
    std::uint64_t p;

    explicit PrimeField(std::uint64_t prime) : p(prime)
    {
        if (!is_prime(p))
            throw AlgebraError("field characteristic " + std::to_string(p) + " is not prime");
    }

    Element zero() const { return 0; }
    Element one() const { return 1 % p; }
    bool is_zero(Element a) const { return a == 0; }
    Element add(Element a, Element b) const { return (a + b) % p; }
    Element sub(Element a, Element b) const { return (a + p - b) % p; }
    Element neg(Element a) const { return a ? p - a : 0; }
    Element mul(Element a, Element b) const
    {
        return static_cast<Element>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Element inv(Element a) const
    {
        if (a == 0)
            throw AlgebraError("inverse of zero");
        Element result = 1, base = a, e = p - 2;
        while (e) {
            if (e & 1)
                result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    Element from_integer(const mpz_class& c) const
    {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        return r.get_ui();
    }
    mpz_class to_integer(Element a) const { return mpz_class(static_cast<unsigned long>(a)); }
    std::uint64_t characteristic() const { return p; }
};

/// The rationals, for characteristic-zero fiber and rank computations.
struct RationalField {
    using Element = mpq_class;

    Element zero() const { return 0; }
    Element one() const { return 1; }
    bool is_zero(const Element& a) const { return a == 0; }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element neg(const Element& a) const { return -a; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element inv(const Element& a) const
    {
        if (a == 0)
            throw AlgebraError("inverse of zero");
        return 1 / a;
    }
    Element from_integer(const mpz_class& c) const { return mpq_class(c); }
    std::uint64_t characteristic() const { return 0; }
};

/// Incrementally built subspace of F^n kept in reduced row echelon form.
template <class Field>
class EchelonBasis {
public:
    using Element = typename Field::Element;
    using Vector = std::vector<Element>;

    EchelonBasis(Field field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const Field& field() const { return field_; }
    const std::vector<Vector>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Residue of v modulo the span (pivot coordinates cleared).
    Vector reduce(Vector v) const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const auto c = v[pivots_[r]];
            if (field_.is_zero(c))
                continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!field_.is_zero(rows_[r][j]))
                    v[j] = field_.sub(v[j], field_.mul(c, rows_[r][j]));
        }
        return v;
    }

    bool contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

    /// Adds v; returns false when it was already in the span.
    bool insert(const Vector& v)
    {
        Vector w = reduce(v);
        std::size_t piv = dim_;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!field_.is_zero(w[j])) {
                piv = j;
                break;
            }
        if (piv == dim_)
            return false;
        const auto s = field_.inv(w[piv]);
        for (auto& x : w)
            x = field_.mul(x, s);
        // keep the existing rows reduced against the new pivot
        for (auto& row : rows_) {
            const auto c = row[piv];
            if (field_.is_zero(c))
                continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!field_.is_zero(w[j]))
                    row[j] = field_.sub(row[j], field_.mul(c, w[j]));
        }
        rows_.push_back(std::move(w));
        pivots_.push_back(piv);
        return true;
    }

    bool is_zero_vector(const Vector& v) const
    {
        for (const auto& x : v)
            if (!field_.is_zero(x))
                return false;
        return true;
    }

    /// Non-pivot coordinates, i.e. a basis of the quotient F^n / span.
    std::vector<std::size_t> free_coordinates() const
    {
        std::vector<bool> is_pivot(dim_, false);
        for (auto p : pivots_)
            is_pivot[p] = true;
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!is_pivot[j])
                out.push_back(j);
        return out;
    }

private:
    Field field_;
    std::size_t dim_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Rank of a row list over a field.
template <class Field>
std::size_t field_rank(const Field& field, const std::vector<std::vector<typename Field::Element>>& rows,
                       std::size_t dim)
{
    EchelonBasis<Field> basis(field, dim);
    for (const auto& r : rows)
        basis.insert(r);
    return basis.rank();
}

/// Kernel of the linear map whose images of the basis vectors are `images`
/// (each of length `target_dim`); returned as coefficient vectors on the source basis.
template <class Field>
std::vector<std::vector<typename Field::Element>>
field_kernel(const Field& field, const std::vector<std::vector<typename Field::Element>>& images,
             std::size_t target_dim)
{
    using E = typename Field::Element;
    const std::size_t n = images.size();
    // augmented rows [image | e_i]; rows whose image part reduces to zero span the kernel
    EchelonBasis<Field> basis(field, target_dim + n);
    std::vector<std::vector<E>> kernel;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<E> row(target_dim + n, field.zero());
        for (std::size_t j = 0; j < target_dim; ++j)
            row[j] = images[i][j];
        row[target_dim + i] = field.one();
        basis.insert(row);
    }
    for (std::size_t r = 0; r < basis.rank(); ++r)
        if (basis.pivots()[r] >= target_dim)
            kernel.emplace_back(basis.rows()[r].begin() + static_cast<std::ptrdiff_t>(target_dim),
                                basis.rows()[r].end());
    return kernel;
}

} // namespace tmfalg
