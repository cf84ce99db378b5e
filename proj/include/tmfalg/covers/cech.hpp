#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tmfalg/algebra/matrix.hpp"
#include "tmfalg/algebra/ring.hpp"

namespace tmfalg {

/// Cohomology of one twist omega^j. Generators are monomial text; when
/// `generators_listed` is false only the ranks are meaningful.
struct TwoRowEntry {
    int twist = 0;
    mpz_class h0_rank = 0;
    mpz_class h1_rank = 0;
    std::vector<std::string> h0;
    std::vector<std::string> h1;
    std::vector<std::array<int, 2>> h0_exponents; // filled by the weighted projective computation
    std::vector<std::array<int, 2>> h1_exponents;
    std::vector<mpz_class> h1_torsion;            // orders of cyclic torsion summands; empty = free
    bool generators_listed = true;
    bool stable = true;                           // false when a truncated limit has not settled
    std::vector<mpz_class> h1_stage_ranks;        // per Koszul stage, when computed that way
};

struct TwoRowPage {
    std::string base;  // coefficient ring, e.g. "Z_(2)"
    std::string label; // e.g. "P(1,3)"
    std::map<int, TwoRowEntry> entries;
    std::vector<std::string> notes;

    /// Throws on a page that is not a well-formed two-row page.
    void validate() const
    {
        for (const auto& [j, e] : entries) {
            auto where = " at twist " + std::to_string(j);
            if (e.twist != j)
                throw AlgebraError("page entry is filed under the wrong twist" + where);
            if (e.h0_rank < 0 || e.h1_rank < 0)
                throw AlgebraError("negative rank" + where);
            if (e.generators_listed && (e.h0_rank != static_cast<unsigned long>(e.h0.size()) ||
                                        e.h1_rank != static_cast<unsigned long>(e.h1.size())))
                throw AlgebraError("generator list does not match rank" + where);
        }
    }
};

namespace detail {

inline std::string laurent_monomial(const std::array<std::string, 2>& names, int i, int k)
{
    std::string out;
    auto put = [&](const std::string& n, int e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += '*';
        out += n;
        if (e != 1)
            out += '^' + std::to_string(e);
    };
    put(names[0], i);
    put(names[1], k);
    return out.empty() ? "1" : out;
}

inline std::string local_ring_name(std::uint64_t p) { return p ? "Z_(" + std::to_string(p) + ")" : "Z"; }

} // namespace detail

/// Cech complex of P(w1, w2) with coordinates x, y:
///   B[x^-1] (+) B[y^-1] -> B[(xy)^-1]  in weight j,
/// with B = Z or Z_(p). Twist j lives in topological degree 2j.
/// Ranks come from monomial bookkeeping and are cross-checked against the
/// Smith form of the differential restricted to the box |i|, |k| <= |j| + 1.
inline TwoRowPage cech_weighted_projective(std::array<int, 2> weights, int j_min, int j_max,
                                           std::uint64_t local_prime = 0,
                                           std::array<std::string, 2> names = {"", ""})
{
    const int w1 = weights[0], w2 = weights[1];
    if (w1 < 1 || w2 < 1)
        throw AlgebraError("weights must be positive");
    if (j_min > j_max)
        throw AlgebraError("empty twist range");
    if (local_prime && !is_prime(local_prime))
        throw AlgebraError(std::to_string(local_prime) + " is not prime");
    for (int n = 0; n < 2; ++n)
        if (names[n].empty())
            names[n] = "alpha" + std::to_string(weights[n]);

    TwoRowPage page;
    page.base = detail::local_ring_name(local_prime);
    page.label = "P(" + std::to_string(w1) + "," + std::to_string(w2) + ")";
    for (int j = j_min; j <= j_max; ++j) {
        TwoRowEntry e;
        e.twist = j;
        // lattice points on w1 i + w2 k = j inside the box
        const int N = std::abs(j) + 1;
        std::vector<std::array<int, 2>> points;
        for (int i = -N; i <= N; ++i) {
            const int rest = j - w1 * i;
            if (rest % w2 == 0 && std::abs(rest / w2) <= N)
                points.push_back({i, rest / w2});
        }
        for (const auto& [i, k] : points) {
            if (i >= 0 && k >= 0) {
                e.h0_exponents.push_back({i, k});
                e.h0.push_back(detail::laurent_monomial(names, i, k));
            } else if (i < 0 && k < 0) {
                e.h1_exponents.push_back({i, k});
                e.h1.push_back(detail::laurent_monomial(names, i, k));
            }
        }
        e.h0_rank = static_cast<unsigned long>(e.h0.size());
        e.h1_rank = static_cast<unsigned long>(e.h1.size());

        // differential (a, b) |-> a - b; rows index C^1 monomials
        std::vector<std::size_t> a_cols, b_cols;
        std::size_t cols = 0;
        for (const auto& [i, k] : points) {
            a_cols.push_back(k >= 0 ? cols++ : SIZE_MAX);
            b_cols.push_back(i >= 0 ? cols++ : SIZE_MAX);
        }
        SparseIntegerMatrix d(points.size(), cols);
        for (std::size_t r = 0; r < points.size(); ++r) {
            if (a_cols[r] != SIZE_MAX)
                d.add(r, a_cols[r], 1);
            if (b_cols[r] != SIZE_MAX)
                d.add(r, b_cols[r], -1);
        }
        const auto factors = invariant_factors(d);
        const auto rank = factors.size();
        if (cols - rank != e.h0.size() || points.size() - rank != e.h1.size())
            throw AlgebraError("Cech rank mismatch at twist " + std::to_string(j));
        for (const auto& f : factors)
            if (f != 1)
                e.h1_torsion.push_back(f);
        page.entries.emplace(j, std::move(e));
    }
    return page;
}

struct HomotopyGroup {
    int degree = 0;
    mpz_class rank = 0;
    std::vector<mpz_class> torsion;
    std::vector<std::string> generators; // "H0(j): gen" / "H1(j): gen"
};

struct HomotopyTable {
    std::string base;
    std::string label;
    std::map<int, HomotopyGroup> groups; // degree -> group
    bool graded_rank_only = true;        // extensions between the two rows are not resolved

    mpz_class rank(int d) const
    {
        auto it = groups.find(d);
        if (it == groups.end())
            throw AlgebraError("degree " + std::to_string(d) + " is outside the assembled window");
        return it->second.rank;
    }
};

/// E_2^{i,2j} = H^i(omega^j) contributes to pi_{2j-i}. With two rows there
/// are no differentials, so pi_d is read off additively.
inline HomotopyTable descent_assemble(const TwoRowPage& page)
{
    page.validate();
    HomotopyTable out;
    out.base = page.base;
    out.label = page.label;
    if (page.entries.empty())
        return out;
    const int d_min = 2 * page.entries.begin()->first - 1;
    const int d_max = 2 * page.entries.rbegin()->first;
    for (int d = d_min; d <= d_max; ++d) {
        const bool even = d % 2 == 0;
        const int j = even ? d / 2 : (d + 1) / 2;
        auto it = page.entries.find(j);
        if (it == page.entries.end())
            continue;
        const auto& e = it->second;
        HomotopyGroup g;
        g.degree = d;
        const std::string tag = (even ? "H0(" : "H1(") + std::to_string(j) + "): ";
        if (even) {
            g.rank = e.h0_rank;
            for (const auto& s : e.h0)
                g.generators.push_back(tag + s);
        } else {
            g.rank = e.h1_rank;
            g.torsion = e.h1_torsion;
            for (const auto& s : e.h1)
                g.generators.push_back(tag + s);
        }
        out.groups.emplace(d, std::move(g));
    }
    return out;
}

} // namespace tmfalg
