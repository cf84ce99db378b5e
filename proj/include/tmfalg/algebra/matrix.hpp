#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tmfalg/algebra/ring.hpp"

namespace tmfalg {

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw AlgebraError("ragged matrix literal");
            for (long v : r)
                data_.emplace_back(v);
        }
    }

    static IntegerMatrix identity(std::size_t n)
    {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw AlgebraError("matrix dimension mismatch");
        IntegerMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& x = a(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += x * b(k, j);
            }
        return out;
    }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const mpz_class& x) { return x == 0; });
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    // row_dst += q * row_src
    void add_row(std::size_t dst, std::size_t src, const mpz_class& q)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(src, j) != 0)
                (*this)(dst, j) += q * (*this)(src, j);
    }
    void add_col(std::size_t dst, std::size_t src, const mpz_class& q)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, src) != 0)
                (*this)(i, dst) += q * (*this)(i, src);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = -(*this)(i, j);
    }

    std::string to_string() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            out += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j)
                out += (j ? ", " : "") + (*this)(i, j).get_str();
            out += "]";
        }
        return out + "]";
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
    IntegerMatrix U, D, V;
    std::vector<mpz_class> diagonal; // min(rows, cols) entries, zeros last

    std::size_t rank() const
    {
        return static_cast<std::size_t>(
            std::count_if(diagonal.begin(), diagonal.end(), [](const mpz_class& d) { return d != 0; }));
    }
};

namespace detail {

// Shared driver; `track` toggles maintenance of the transforms.
inline SmithForm smith_impl(const IntegerMatrix& a, bool track)
{
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm out{track ? IntegerMatrix::identity(m) : IntegerMatrix(), a,
                  track ? IntegerMatrix::identity(n) : IntegerMatrix(), {}};
    auto& D = out.D;
    auto& U = out.U;
    auto& V = out.V;
    const std::size_t k = std::min(m, n);

    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D(i, j) != 0 && (pi == m || abs(D(i, j)) < abs(D(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) {
                out.diagonal.assign(k, 0);
                for (std::size_t s = 0; s < t; ++s)
                    out.diagonal[s] = D(s, s);
                return out;
            }
            D.swap_rows(t, pi);
            D.swap_cols(t, pj);
            if (track) {
                U.swap_rows(t, pi);
                V.swap_cols(t, pj);
            }

            bool clean = true;
            const mpz_class piv = D(t, t);
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), piv.get_mpz_t());
                D.add_row(i, t, -q);
                if (track)
                    U.add_row(i, t, -q);
                clean = clean && D(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), piv.get_mpz_t());
                D.add_col(j, t, -q);
                if (track)
                    V.add_col(j, t, -q);
                clean = clean && D(t, j) == 0;
            }
            if (!clean)
                continue;

            // divisibility: fold an offending row into the pivot row and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), piv.get_mpz_t())) {
                        D.add_row(t, i, 1);
                        if (track)
                            U.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            if (track)
                U.negate_row(t);
        }
    }
    out.diagonal.resize(k);
    for (std::size_t s = 0; s < k; ++s)
        out.diagonal[s] = D(s, s);
    return out;
}

} // namespace detail

inline SmithForm smith_normal_form(const IntegerMatrix& a) { return detail::smith_impl(a, true); }

/// Sparse integer matrix: one ordered map per row.
class SparseIntegerMatrix {
public:
    using Row = std::map<std::size_t, mpz_class>;

    SparseIntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void add(std::size_t i, std::size_t j, const mpz_class& v)
    {
        if (v == 0)
            return;
        auto& cell = data_.at(i)[j];
        cell += v;
        if (cell == 0)
            data_[i].erase(j);
    }

    const Row& row(std::size_t i) const { return data_[i]; }
    std::vector<Row>& raw() { return data_; }
    const std::vector<Row>& raw() const { return data_; }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Row& r) { return r.empty(); });
    }

    IntegerMatrix dense() const
    {
        IntegerMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [j, v] : data_[i])
                m(i, j) = v;
        return m;
    }

    /// this * other
    SparseIntegerMatrix multiply(const SparseIntegerMatrix& other) const
    {
        if (cols_ != other.rows_)
            throw AlgebraError("matrix dimension mismatch");
        SparseIntegerMatrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [k, v] : data_[i])
                for (const auto& [j, w] : other.data_[k])
                    out.add(i, j, v * w);
        return out;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Row> data_;
};

/// Nonzero invariant factors (sorted, each dividing the next). Unit pivots are
/// eliminated sparsely first; the residual block goes through dense Smith form.
inline std::vector<mpz_class> invariant_factors(SparseIntegerMatrix m)
{
    auto& rows = m.raw();
    std::vector<std::set<std::size_t>> col_rows(m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [j, v] : rows[i])
            col_rows[j].insert(i);

    std::size_t units = 0;
    std::vector<bool> row_done(rows.size(), false);
    for (;;) {
        // pick the shortest row holding a unit entry, in its sparsest column
        std::size_t best_row = rows.size(), best_col = 0, best_cost = SIZE_MAX;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (row_done[i] || rows[i].empty() || rows[i].size() >= best_cost)
                continue;
            for (const auto& [j, v] : rows[i])
                if (v == 1 || v == -1) {
                    std::size_t cost = (rows[i].size() - 1) * (col_rows[j].size() - 1);
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_row = i;
                        best_col = j;
                    }
                }
        }
        if (best_row == rows.size())
            break;
        const std::size_t pr = best_row, pc = best_col;
        const mpz_class pv = rows[pr].at(pc);
        std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
        for (auto i : targets) {
            if (i == pr)
                continue;
            mpz_class f = rows[i].at(pc) * pv; // pv = +-1 so this is the exact quotient
            for (const auto& [j, v] : rows[pr]) {
                auto& cell = rows[i][j];
                bool was_zero = cell == 0;
                cell -= f * v;
                if (cell == 0) {
                    rows[i].erase(j);
                    col_rows[j].erase(i);
                } else if (was_zero) {
                    col_rows[j].insert(i);
                }
            }
        }
        for (const auto& [j, v] : rows[pr])
            col_rows[j].erase(pr);
        rows[pr].clear();
        row_done[pr] = true;
        ++units;
    }

    std::vector<std::size_t> live_rows, live_cols;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].empty())
            live_rows.push_back(i);
    for (std::size_t j = 0; j < col_rows.size(); ++j)
        if (!col_rows[j].empty())
            live_cols.push_back(j);

    std::vector<mpz_class> out(units, mpz_class(1));
    if (!live_rows.empty()) {
        std::map<std::size_t, std::size_t> col_index;
        for (std::size_t c = 0; c < live_cols.size(); ++c)
            col_index[live_cols[c]] = c;
        IntegerMatrix rest(live_rows.size(), live_cols.size());
        for (std::size_t r = 0; r < live_rows.size(); ++r)
            for (const auto& [j, v] : rows[live_rows[r]])
                rest(r, col_index.at(j)) = v;
        auto snf = detail::smith_impl(rest, false);
        for (const auto& d : snf.diagonal)
            if (d != 0)
                out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<mpz_class> invariant_factors(const IntegerMatrix& m)
{
    SparseIntegerMatrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s.add(i, j, m(i, j));
    return invariant_factors(std::move(s));
}

/// Z-basis of {v : A v = 0}, as the trailing columns of V in U A V = D.
inline std::vector<std::vector<mpz_class>> integer_kernel(const IntegerMatrix& a)
{
    auto snf = smith_normal_form(a);
    std::vector<std::vector<mpz_class>> basis;
    const std::size_t r = snf.rank();
    for (std::size_t j = r; j < a.cols(); ++j) {
        std::vector<mpz_class> v(a.cols());
        for (std::size_t i = 0; i < a.cols(); ++i)
            v[i] = snf.V(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// The p-primary part of an integer (1 when p does not divide it).
inline mpz_class prime_part(const mpz_class& n, std::uint64_t p)
{
    mpz_class out = 1, rest = abs(n);
    const mpz_class pp(static_cast<unsigned long>(p));
    while (rest != 0 && mpz_divisible_p(rest.get_mpz_t(), pp.get_mpz_t())) {
        rest /= pp;
        out *= pp;
    }
    return out;
}

} // namespace tmfalg
