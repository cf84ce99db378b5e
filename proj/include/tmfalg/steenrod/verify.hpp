#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmfalg/steenrod/subalgebra.hpp"

namespace tmfalg {

struct FreenessReport {
    std::string big, small;
    int cutoff = 0;
    std::vector<int> expected_cells;
    std::vector<int> found_cells;      // degrees of a basis of big (x)_small Z/2
    std::vector<std::string> lifts;    // chosen lifts, as monomials in big's generators
    bool big_independent = false;      // big's generators algebraically independent through cutoff
    bool series_identity = false;      // PS(big) = PS(small) * cells
    bool contained = false;
    bool generated = false;            // lifts generate big over small (Nakayama)
    bool free = false;                 // and the dimension count leaves no relations
    std::string failure;
    bool ok() const
    {
        return big_independent && series_identity && contained && generated && free && found_cells == expected_cells;
    }
};

/// Checks that `big` is a free module over `small` on cells of the expected degrees.
inline FreenessReport freeness_rank_check(const DualSteenrod& a, const SubalgebraSpec& big_spec,
                                          const SubalgebraSpec& small_spec, std::vector<int> cells, int cutoff = -1)
{
    if (cutoff < 0 || cutoff > a.cutoff())
        cutoff = a.cutoff();
    std::sort(cells.begin(), cells.end());
    FreenessReport out;
    out.big = big_spec.name;
    out.small = small_spec.name;
    out.cutoff = cutoff;
    out.expected_cells = cells;

    DegreeCoordinates coords(a);
    SubalgebraBasis big(a, big_spec, coords), small(a, small_spec, coords);

    out.big_independent = true;
    for (int d = 0; d <= cutoff; ++d)
        if (big.dim(d) != big.monomials(d).size())
            out.big_independent = false;
    out.series_identity =
        big.poincare(cutoff) == small.poincare(cutoff) * PoincareSeries::cells(cells, cutoff);
    if (!out.big_independent) {
        out.failure = "generators of " + big_spec.name + " are not independent";
        return out;
    }

    // rewrite small's generators in big's generator ring
    const RingPtr& y = big.y_ring();
    std::vector<Polynomial> small_in_big;
    for (const auto& g : small_spec.generators) {
        const auto mons = big.monomials(g.degree);
        std::vector<F2Vector> images;
        for (const auto& m : mons)
            images.push_back(coords.vector(big.image(m), g.degree));
        EchelonBasis<PrimeField> aug(PrimeField(2), coords.dim(g.degree) + mons.size());
        for (std::size_t i = 0; i < mons.size(); ++i) {
            auto row = images[i];
            row.resize(coords.dim(g.degree) + mons.size(), 0);
            row[coords.dim(g.degree) + i] = 1;
            aug.insert(row);
        }
        auto target = coords.vector(g.value, g.degree);
        target.resize(coords.dim(g.degree) + mons.size(), 0);
        const auto r = aug.reduce(target);
        if (!std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(coords.dim(g.degree)),
                         [](auto v) { return v == 0; })) {
            out.failure = g.name + " is not in " + big_spec.name;
            return out;
        }
        Polynomial p(y);
        for (std::size_t i = 0; i < mons.size(); ++i)
            if (r[coords.dim(g.degree) + i])
                p.add_term(mons[i], 1);
        small_in_big.push_back(std::move(p));
    }
    out.contained = true;

    // small's monomials as polynomials in big's generators
    std::map<Monomial, Polynomial> small_mono;
    auto small_value = [&](const Monomial& m) {
        if (auto it = small_mono.find(m); it != small_mono.end())
            return it->second;
        Polynomial v = Polynomial::constant(y, 1);
        for (std::size_t i = 0; i < small_in_big.size(); ++i)
            v = v * small_in_big[i].pow(static_cast<unsigned>(m.exponent(i)));
        return small_mono.emplace(m, v).first->second;
    };
    auto y_vector = [&](const Polynomial& p, const std::vector<Monomial>& basis) {
        F2Vector v(basis.size(), 0);
        for (const auto& [m, c] : p.terms()) {
            const auto it = std::lower_bound(basis.begin(), basis.end(), m);
            if (it == basis.end() || !(*it == m))
                throw AlgebraError("product left the expected degree");
            v[static_cast<std::size_t>(it - basis.begin())] ^= 1u;
        }
        return v;
    };

    std::map<int, std::vector<Monomial>> lifts;
    out.generated = out.free = true;
    for (int d = 0; d <= cutoff; ++d) {
        auto basis = big.monomials(d);
        std::sort(basis.begin(), basis.end());
        // decomposables: positive-degree part of small times big
        EchelonBasis<PrimeField> dec(PrimeField(2), basis.size());
        for (int e = 1; e <= d; ++e)
            for (const auto& s : small.monomials(e))
                for (const auto& b : big.monomials(d - e))
                    dec.insert(y_vector(small_value(s) * Polynomial::monomial(y, b), basis));
        for (auto i : dec.free_coordinates()) {
            lifts[d].push_back(basis[i]);
            out.found_cells.push_back(d);
            out.lifts.push_back(big.label(basis[i]));
        }
        // the lifts span big_d over small, with no room for relations
        EchelonBasis<PrimeField> gen(PrimeField(2), basis.size());
        std::size_t count = 0;
        for (const auto& [ld, ls] : lifts)
            for (const auto& s : small.monomials(d - ld))
                for (const auto& l : ls) {
                    gen.insert(y_vector(small_value(s) * Polynomial::monomial(y, l), basis));
                    ++count;
                }
        if (gen.rank() != basis.size()) {
            out.generated = false;
            out.failure = "lifts do not generate in degree " + std::to_string(d);
        }
        if (count != basis.size() || small.dim(d) != small.monomials(d).size()) {
            out.free = false;
            if (out.failure.empty())
                out.failure = "relation among lifts in degree " + std::to_string(d);
        }
    }
    return out;
}

struct UniquenessStep {
    int degree = 0;
    std::size_t target_dim = 0;
    std::size_t candidate_dim = 0; // dim of elements whose coaction is compatible with lower degrees
    bool forced = false;           // candidate_dim == target_dim, so C_d is determined
    bool matches = false;          // and agrees with the named target
    std::vector<std::string> candidates;
};

struct UniquenessReport {
    std::string target;
    int depth = 0;
    int lowest_degree = -1;
    std::optional<std::string> forced_generator;
    std::vector<UniquenessStep> steps;
    struct Decoy {
        std::string element;
        int degree = 0;
        bool excluded = false;
        std::string left, right; // a coaction term whose right leg leaves C
    };
    std::vector<Decoy> decoys;
    bool ok() const
    {
        if (!forced_generator)
            return false;
        for (const auto& s : steps)
            if (!s.forced || !s.matches)
                return false;
        for (const auto& d : decoys)
            if (!d.excluded)
                return false;
        return true;
    }
};

/// Walks degrees below `depth` determining a subcomodule C of the ambient
/// algebra with the target's graded dimension: C_d must lie in the space of x
/// whose coaction has every lower right leg in C_{<d}. When that space has
/// exactly the target dimension, C_d is forced. Decoys are elements that the
/// walk must exclude.
inline UniquenessReport uniqueness_probe(const DualSteenrod& a, const SubalgebraSpec& ambient_spec,
                                         const SubalgebraSpec& target_spec, int depth = 16,
                                         const std::vector<Polynomial>& decoys = {})
{
    UniquenessReport out;
    out.target = target_spec.name;
    out.depth = depth;
    DegreeCoordinates coords(a);
    SubalgebraBasis ambient(a, ambient_spec, coords), target(a, target_spec, coords);
    const int top = std::min(depth - 1, a.cutoff());

    std::map<int, EchelonBasis<PrimeField>> forced; // C_d as determined so far
    forced.emplace(0, target.span(0));

    // reduced-coaction obstruction for x in degree d against C_{<d}
    auto obstruction = [&](const Polynomial& x, int d, std::string* left, std::string* right) {
        for (const auto& [l, r] : a.right_legs(a.coproduct(x))) {
            const int rd = d - static_cast<int>(l.weight());
            if (rd == d || rd == 0)
                continue;
            auto it = forced.find(rd);
            const auto v = coords.vector(r, rd);
            const bool inside = it != forced.end() ? it->second.contains(v)
                                                   : std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; });
            if (!inside) {
                if (left) {
                    *left = l.to_string(*a.ring());
                    *right = r.to_string();
                }
                return true;
            }
        }
        return false;
    };

    for (int d = 1; d <= top; ++d) {
        UniquenessStep step;
        step.degree = d;
        step.target_dim = target.dim(d);
        if (step.target_dim == 0)
            continue;
        // candidates: kernel of the obstruction map on ambient_d
        std::vector<Polynomial> elems;
        EchelonBasis<PrimeField> seen(PrimeField(2), coords.dim(d));
        for (const auto& m : ambient.monomials(d))
            if (seen.insert(coords.vector(ambient.image(m), d)))
                elems.push_back(ambient.image(m));
        detail::TensorCoordinates tc;
        std::vector<std::vector<std::pair<std::size_t, bool>>> rows;
        for (const auto& x : elems) {
            std::vector<std::pair<std::size_t, bool>> row;
            for (const auto& [l, r] : a.right_legs(a.coproduct(x))) {
                const int rd = d - static_cast<int>(l.weight());
                if (rd == d || rd == 0)
                    continue;
                auto it = forced.find(rd);
                auto v = coords.vector(r, rd);
                if (it != forced.end())
                    v = it->second.reduce(v);
                const auto& rb = coords.basis(rd);
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (v[i])
                        row.emplace_back(tc.index(l, rb[i]), true);
            }
            rows.push_back(std::move(row));
        }
        EchelonBasis<PrimeField> cand(PrimeField(2), coords.dim(d));
        for (const auto& k : field_kernel(PrimeField(2), detail::pad(rows, tc.size()), tc.size())) {
            Polynomial x(a.ring());
            for (std::size_t i = 0; i < k.size(); ++i)
                if (k[i])
                    x += elems[i];
            if (cand.insert(coords.vector(x, d)))
                step.candidates.push_back(x.to_string());
        }
        step.candidate_dim = cand.rank();
        step.forced = step.candidate_dim == step.target_dim;
        step.matches = step.forced;
        for (const auto& row : target.span(d).rows())
            step.matches = step.matches && cand.contains(row);
        if (out.lowest_degree < 0) {
            out.lowest_degree = d;
            if (step.forced && step.candidate_dim == 1)
                out.forced_generator = step.candidates.front();
        }
        forced.emplace(d, step.forced ? cand : target.span(d));
        out.steps.push_back(std::move(step));
    }

    for (const auto& x : decoys) {
        UniquenessReport::Decoy dc;
        const auto xr = x.embedded(a.ring());
        dc.element = xr.to_string();
        dc.degree = xr.is_zero() ? 0 : static_cast<int>(xr.terms().begin()->first.weight());
        dc.excluded = obstruction(xr, dc.degree, &dc.left, &dc.right);
        out.decoys.push_back(std::move(dc));
    }
    return out;
}

/// PS(A) / PS(C) through the cutoff: the graded dimension of A (x)_C Z/2 when A is free over C.
inline PoincareSeries quotient_pattern(const DualSteenrod& a, const SubalgebraSpec& spec, int cutoff = -1)
{
    if (cutoff < 0 || cutoff > a.cutoff())
        cutoff = a.cutoff();
    DegreeCoordinates coords(a);
    SubalgebraBasis c(a, spec, coords);
    return a.poincare(cutoff) / c.poincare(cutoff);
}

} // namespace tmfalg
