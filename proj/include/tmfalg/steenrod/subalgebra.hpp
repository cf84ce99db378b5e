#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmfalg/algebra/linalg.hpp"
#include "tmfalg/steenrod/dual.hpp"

namespace tmfalg {

using F2Vector = std::vector<PrimeField::Element>;

/// Coordinates on A_d in its monomial basis, one table per degree.
class DegreeCoordinates {
public:
    explicit DegreeCoordinates(const DualSteenrod& a) : a_(&a) {}

    const std::vector<Monomial>& basis(int d)
    {
        auto it = bases_.find(d);
        if (it == bases_.end()) {
            auto b = a_->basis(d);
            std::map<Monomial, std::size_t> idx;
            for (std::size_t i = 0; i < b.size(); ++i)
                idx.emplace(b[i], i);
            index_.emplace(d, std::move(idx));
            it = bases_.emplace(d, std::move(b)).first;
        }
        return it->second;
    }

    std::size_t dim(int d) { return basis(d).size(); }

    /// x must be homogeneous of degree d.
    F2Vector vector(const Polynomial& x, int d)
    {
        F2Vector v(dim(d), 0);
        const auto& idx = index_.at(d);
        for (const auto& [m, c] : x.terms()) {
            auto it = idx.find(m);
            if (it == idx.end())
                throw AlgebraError("element is not homogeneous of degree " + std::to_string(d));
            v[it->second] = static_cast<PrimeField::Element>(c.get_ui() & 1u);
        }
        return v;
    }

    Polynomial polynomial(const F2Vector& v, int d)
    {
        const auto& b = basis(d);
        Polynomial x(a_->ring());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i])
                x.add_term(b[i], 1);
        return x;
    }

private:
    const DualSteenrod* a_;
    std::map<int, std::vector<Monomial>> bases_;
    std::map<int, std::map<Monomial, std::size_t>> index_;
};

struct SubalgebraGenerator {
    std::string name;    // display form, e.g. "xibar1^8"
    Polynomial value;
    int degree = 0;
};

/// Polynomial subalgebra of A on listed generators, truncated at a cutoff.
/// The conjugate-power form lists exponents for xibar_1, xibar_2, ... and
/// uses `tail` for every later xibar_i.
struct SubalgebraSpec {
    std::string name;
    std::vector<SubalgebraGenerator> generators;
    int cutoff = 0;
};

inline SubalgebraSpec conjugate_power_spec(const DualSteenrod& a, std::string name, const std::vector<int>& powers,
                                           int tail = 1)
{
    SubalgebraSpec s{std::move(name), {}, a.cutoff()};
    for (int i = 1; i <= a.generators(); ++i) {
        const int p = i <= static_cast<int>(powers.size()) ? powers[static_cast<std::size_t>(i - 1)] : tail;
        if (p <= 0)
            continue;
        const int deg = p * ((1 << i) - 1);
        if (deg > a.cutoff())
            continue;
        std::string label = "xibar" + std::to_string(i);
        if (p != 1)
            label += "^" + std::to_string(p);
        s.generators.push_back({label, a.conj_xi(i).pow(static_cast<unsigned>(p)), deg});
    }
    return s;
}

/// Explicit homogeneous generators, e.g. {xi1^3}.
inline SubalgebraSpec explicit_spec(const DualSteenrod& a, std::string name, const std::vector<Polynomial>& gens)
{
    SubalgebraSpec s{std::move(name), {}, a.cutoff()};
    for (const auto& g : gens) {
        auto x = g.embedded(a.ring());
        if (x.is_zero() || x.is_constant())
            throw AlgebraError("subalgebra generators must be nonconstant");
        const auto deg = static_cast<int>(x.terms().begin()->first.weight());
        for (const auto& [m, c] : x.terms())
            if (m.weight() != deg)
                throw AlgebraError("subalgebra generator " + x.to_string() + " is not homogeneous");
        if (deg <= a.cutoff())
            s.generators.push_back({x.to_string(), x, deg});
    }
    return s;
}

inline SubalgebraSpec ko_homology(const DualSteenrod& a) { return conjugate_power_spec(a, "ko", {4, 2}); }
inline SubalgebraSpec tmf_homology(const DualSteenrod& a) { return conjugate_power_spec(a, "tmf", {8, 4, 2}); }
inline SubalgebraSpec trivial_spec(const DualSteenrod& a) { return {"Z/2", {}, a.cutoff()}; }
inline SubalgebraSpec whole_algebra(const DualSteenrod& a) { return conjugate_power_spec(a, "A", {}); }

/// Z/2[xi_1^2, xi_2^2, ...].
inline SubalgebraSpec squares_spec(const DualSteenrod& a)
{
    std::vector<Polynomial> gens;
    for (int i = 1; i <= a.generators(); ++i)
        gens.push_back(a.xi(i).pow(2));
    return explicit_spec(a, "Z/2[xi_i^2]", gens);
}

/// Monomial spanning set of a SubalgebraSpec, its images in A, and per-degree spans.
class SubalgebraBasis {
public:
    SubalgebraBasis(const DualSteenrod& a, const SubalgebraSpec& spec, DegreeCoordinates& coords)
        : a_(&a), spec_(&spec), coords_(&coords)
    {
        std::vector<Generator> gens;
        for (std::size_t i = 0; i < spec.generators.size(); ++i)
            gens.push_back({"y" + std::to_string(i), spec.generators[i].degree});
        y_ = Ring::make(gens, 2);
    }

    const RingPtr& y_ring() const { return y_; }

    std::vector<Monomial> monomials(int d) const
    {
        if (d < 0)
            return {};
        if (d == 0)
            return {Monomial{}};
        if (y_->size() == 0)
            return {};
        return monomials_of_weight(*y_, d);
    }

    const Polynomial& image(const Monomial& m)
    {
        if (auto it = images_.find(m); it != images_.end())
            return it->second;
        Polynomial value = Polynomial::constant(a_->ring(), 1);
        for (std::size_t i = 0; i < y_->size(); ++i)
            if (m.exponent(i) > 0) {
                Monomial rest = m;
                std::vector<int> e(y_->size());
                for (std::size_t k = 0; k < y_->size(); ++k)
                    e[k] = m.exponent(k);
                --e[i];
                rest = Monomial::from_exponents(*y_, e);
                value = image(rest) * spec_->generators[i].value;
                break;
            }
        return images_.emplace(m, std::move(value)).first->second;
    }

    std::string label(const Monomial& m) const
    {
        if (m.is_one())
            return "1";
        std::string out;
        for (std::size_t i = 0; i < y_->size(); ++i) {
            const int e = m.exponent(i);
            if (e == 0)
                continue;
            if (!out.empty())
                out += '*';
            const auto& g = spec_->generators[i];
            out += e == 1 ? g.name : "(" + g.name + ")^" + std::to_string(e);
        }
        return out;
    }

    /// Span of C_d inside A_d.
    const EchelonBasis<PrimeField>& span(int d)
    {
        if (auto it = spans_.find(d); it != spans_.end())
            return it->second;
        EchelonBasis<PrimeField> b(PrimeField(2), coords_->dim(d));
        for (const auto& m : monomials(d))
            b.insert(coords_->vector(image(m), d));
        return spans_.emplace(d, std::move(b)).first->second;
    }

    std::size_t dim(int d) { return span(d).rank(); }

    PoincareSeries poincare(int cutoff)
    {
        PoincareSeries s(cutoff);
        for (int d = 0; d <= cutoff; ++d)
            s[d] = static_cast<unsigned long>(dim(d));
        return s;
    }

    bool contains(const Polynomial& x, int d) { return span(d).contains(coords_->vector(x, d)); }

private:
    const DualSteenrod* a_;
    const SubalgebraSpec* spec_;
    DegreeCoordinates* coords_;
    RingPtr y_;
    std::map<Monomial, Polynomial> images_;
    std::map<int, EchelonBasis<PrimeField>> spans_;
};

struct ClosureReport {
    std::string name;
    int cutoff = 0;
    bool closed = true;
    std::size_t checked = 0; // basis monomials whose coaction was reduced
    std::optional<std::string> witness_element, witness_left, witness_right;
};

/// Delta(x) in A (x) span(C) for every spanning monomial x of C through the cutoff.
inline ClosureReport comodule_closure_check(const DualSteenrod& a, const SubalgebraSpec& spec, int cutoff = -1)
{
    if (cutoff < 0 || cutoff > a.cutoff())
        cutoff = a.cutoff();
    DegreeCoordinates coords(a);
    SubalgebraBasis c(a, spec, coords);
    ClosureReport out;
    out.name = spec.name;
    out.cutoff = cutoff;
    for (int d = 1; d <= cutoff && out.closed; ++d) {
        for (const auto& m : c.monomials(d)) {
            const auto& x = c.image(m);
            if (x.is_zero())
                continue;
            ++out.checked;
            const auto legs = a.right_legs(a.coproduct(x));
            // highest left degree first, so the witness has the smallest right leg
            for (auto it = legs.rbegin(); it != legs.rend(); ++it) {
                const int rd = d - static_cast<int>(it->first.weight());
                if (c.contains(it->second, rd))
                    continue;
                out.closed = false;
                out.witness_element = x.to_string();
                out.witness_left = it->first.is_one() ? "1" : it->first.to_string(*a.ring());
                out.witness_right = it->second.to_string();
                break;
            }
            if (!out.closed)
                break;
        }
    }
    return out;
}

/// H_*(BP<n>; Z/2): xibar_1..xibar_{n+1} squared, the rest unsquared.
inline SubalgebraSpec bp_n_homology(const DualSteenrod& a, int n)
{
    if (n < 0)
        throw AlgebraError("BP<n> needs n >= 0");
    std::vector<int> powers(static_cast<std::size_t>(n + 1), 2);
    auto spec = conjugate_power_spec(a, n == 0 ? "HZ" : n == 1 ? "ku" : "BP<" + std::to_string(n) + ">", powers);
    const auto report = comodule_closure_check(a, spec);
    if (!report.closed)
        throw AlgebraError(spec.name + " homology is not a subcomodule: " + *report.witness_left + " (x) " +
                           *report.witness_right);
    return spec;
}

enum class PrimitiveKind { hopf, subcomodule, quotient };

struct PrimitiveReport {
    PrimitiveKind kind = PrimitiveKind::hopf;
    std::string label;
    int through = 0;
    std::map<int, std::vector<std::string>> classes; // degree -> representatives
    std::size_t count() const
    {
        std::size_t n = 0;
        for (const auto& [d, v] : classes)
            n += v.size();
        return n;
    }
    std::vector<int> degrees() const
    {
        std::vector<int> out;
        for (const auto& [d, v] : classes)
            for (std::size_t i = 0; i < v.size(); ++i)
                out.push_back(d);
        return out;
    }
};

namespace detail {

// Indexes (left monomial, right monomial) pairs on the fly.
class TensorCoordinates {
public:
    std::size_t index(const Monomial& l, const Monomial& r)
    {
        auto [it, inserted] = index_.try_emplace({l, r}, index_.size());
        return it->second;
    }
    std::size_t size() const { return index_.size(); }

private:
    std::map<std::pair<Monomial, Monomial>, std::size_t> index_;
};

inline std::vector<F2Vector> pad(std::vector<std::vector<std::pair<std::size_t, bool>>> sparse, std::size_t dim)
{
    std::vector<F2Vector> out;
    for (auto& row : sparse) {
        F2Vector v(dim, 0);
        for (auto [i, b] : row)
            v[i] ^= b ? 1u : 0u;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

/// Elements with Delta(x) = x (x) 1 + 1 (x) x in positive degrees through `through`.
inline PrimitiveReport hopf_primitives(const DualSteenrod& a, int through)
{
    PrimitiveReport out{PrimitiveKind::hopf, "A", through, {}};
    DegreeCoordinates coords(a);
    for (int d = 1; d <= std::min(through, a.cutoff()); ++d) {
        const auto& basis = coords.basis(d);
        detail::TensorCoordinates tc;
        std::vector<std::vector<std::pair<std::size_t, bool>>> rows;
        for (const auto& m : basis) {
            const auto x = Polynomial::monomial(a.ring(), m);
            std::vector<std::pair<std::size_t, bool>> row;
            for (const auto& [l, r] : a.right_legs(a.coproduct(x)))
                for (const auto& [rm, c] : r.terms())
                    if (!l.is_one() && !rm.is_one())
                        row.emplace_back(tc.index(l, rm), true);
            rows.push_back(std::move(row));
        }
        for (const auto& k : field_kernel(PrimeField(2), detail::pad(rows, tc.size()), tc.size()))
            out.classes[d].push_back(coords.polynomial(k, d).to_string());
    }
    return out;
}

/// Elements of C with Delta(x) = 1 (x) x, degree 0 included.
inline PrimitiveReport subcomodule_primitives(const DualSteenrod& a, const SubalgebraSpec& c_spec, int through)
{
    PrimitiveReport out{PrimitiveKind::subcomodule, c_spec.name, through, {}};
    DegreeCoordinates coords(a);
    SubalgebraBasis c(a, c_spec, coords);
    out.classes[0].push_back("1");
    for (int d = 1; d <= std::min(through, a.cutoff()); ++d) {
        // independent spanning elements of C_d
        EchelonBasis<PrimeField> seen(PrimeField(2), coords.dim(d));
        std::vector<Polynomial> elems;
        for (const auto& m : c.monomials(d))
            if (seen.insert(coords.vector(c.image(m), d)))
                elems.push_back(c.image(m));
        detail::TensorCoordinates tc;
        std::vector<std::vector<std::pair<std::size_t, bool>>> rows;
        for (const auto& x : elems) {
            std::vector<std::pair<std::size_t, bool>> row;
            for (const auto& [l, r] : a.right_legs(a.coproduct(x)))
                if (!l.is_one())
                    for (const auto& [rm, cf] : r.terms())
                        row.emplace_back(tc.index(l, rm), true);
            rows.push_back(std::move(row));
        }
        for (const auto& k : field_kernel(PrimeField(2), detail::pad(rows, tc.size()), tc.size())) {
            Polynomial x(a.ring());
            for (std::size_t i = 0; i < k.size(); ++i)
                if (k[i])
                    x += elems[i];
            out.classes[d].push_back(x.to_string());
        }
    }
    return out;
}

/// Classes [x] in A/C with Delta(x) - 1 (x) x in A (x) C, positive degrees.
inline PrimitiveReport quotient_primitives(const DualSteenrod& a, const SubalgebraSpec& c_spec, int through)
{
    PrimitiveReport out{PrimitiveKind::quotient, "A/" + c_spec.name, through, {}};
    DegreeCoordinates coords(a);
    SubalgebraBasis c(a, c_spec, coords);
    for (int d = 1; d <= std::min(through, a.cutoff()); ++d) {
        const auto& basis = coords.basis(d);
        detail::TensorCoordinates tc;
        std::vector<std::vector<std::pair<std::size_t, bool>>> rows;
        for (const auto& m : basis) {
            const auto x = Polynomial::monomial(a.ring(), m);
            std::vector<std::pair<std::size_t, bool>> row;
            for (const auto& [l, r] : a.right_legs(a.coproduct(x))) {
                if (l.is_one())
                    continue;
                const int rd = d - static_cast<int>(l.weight());
                const auto residue = c.span(rd).reduce(coords.vector(r, rd));
                const auto& rb = coords.basis(rd);
                for (std::size_t i = 0; i < residue.size(); ++i)
                    if (residue[i])
                        row.emplace_back(tc.index(l, rb[i]), true);
            }
            rows.push_back(std::move(row));
        }
        auto quotient = c.span(d);
        for (const auto& k : field_kernel(PrimeField(2), detail::pad(rows, tc.size()), tc.size()))
            if (quotient.insert(k))
                out.classes[d].push_back(coords.polynomial(c.span(d).reduce(k), d).to_string());
    }
    return out;
}

} // namespace tmfalg
