#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tmfalg/algebra/linalg.hpp"
#include "tmfalg/algebra/poincare.hpp"
#include "tmfalg/algebra/polynomial.hpp"
#include "tmfalg/elliptic/curve.hpp"
#include "tmfalg/elliptic/formal_group.hpp"

namespace tmfalg {

struct RegularityFailure {
    std::size_t index;  // position in the input sequence
    std::int64_t weight; // weight of the annihilated quotient element
};

struct RegularityReport {
    bool regular = false;
    int cutoff = 0;
    std::string field;                  // "F_p" or "Q"
    std::map<int, std::size_t> quotient_ranks; // weight -> dim of R/(x_1..x_n), through cutoff
    std::optional<RegularityFailure> failure;
    bool hilbert_series_match = false;  // quotient ranks equal prod(1 - q^d_i) / prod(1 - q^w_j)
    bool zero_dimensional = false;      // quotient vanishes from some weight <= cutoff on
    std::size_t total_rank = 0;         // sum of quotient ranks (meaningful when zero_dimensional)
    std::vector<std::string> notes;
};

namespace detail {

// Degreewise multiplication maps over a field on a polynomial ring with positive weights.
template <class Field>
class GradedIdealTracker {
public:
    using E = typename Field::Element;

    GradedIdealTracker(Field field, RingPtr ring, std::vector<std::size_t> vars)
        : field_(std::move(field)), ring_(std::move(ring)), vars_(std::move(vars))
    {
    }

    const std::vector<Monomial>& basis(std::int64_t w)
    {
        auto it = bases_.find(w);
        if (it != bases_.end())
            return it->second;
        auto mons = monomials_of_weight(*ring_, vars_, w);
        auto& index = index_[w];
        for (std::size_t i = 0; i < mons.size(); ++i)
            index[mons[i]] = i;
        return bases_.emplace(w, std::move(mons)).first->second;
    }

    std::vector<E> coordinates(const Polynomial& p, std::int64_t w)
    {
        const auto& b = basis(w);
        std::vector<E> v(b.size(), field_.zero());
        const auto& index = index_.at(w);
        for (const auto& [m, c] : p.terms()) {
            auto it = index.find(m);
            if (it == index.end())
                throw AlgebraError("term outside the tracked variables or weight");
            v[it->second] = field_.add(v[it->second], field_.from_integer(c));
        }
        return v;
    }

    /// dim of (x_1..x_k) in weight w, for k = 0..n; rows[k] is cumulative.
    std::vector<std::size_t> ideal_dims(const std::vector<Polynomial>& xs, const std::vector<std::int64_t>& degs,
                                        std::int64_t w)
    {
        const auto& b = basis(w);
        EchelonBasis<Field> span(field_, b.size());
        std::vector<std::size_t> dims{0};
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (w >= degs[k])
                for (const auto& m : basis(w - degs[k]))
                    span.insert(coordinates(xs[k] * Polynomial::monomial(ring_, m), w));
            dims.push_back(span.rank());
        }
        return dims;
    }

    /// Membership of a homogeneous element in (x_1..x_n) at its weight.
    bool member(const Polynomial& f, const std::vector<Polynomial>& xs, const std::vector<std::int64_t>& degs)
    {
        if (f.is_zero())
            return true;
        const auto w = *f.weight();
        const auto& b = basis(w);
        EchelonBasis<Field> span(field_, b.size());
        for (std::size_t k = 0; k < xs.size(); ++k)
            if (w >= degs[k])
                for (const auto& m : basis(w - degs[k]))
                    span.insert(coordinates(xs[k] * Polynomial::monomial(ring_, m), w));
        return span.contains(coordinates(f, w));
    }

private:
    Field field_;
    RingPtr ring_;
    std::vector<std::size_t> vars_;
    std::map<std::int64_t, std::vector<Monomial>> bases_;
    std::map<std::int64_t, std::map<Monomial, std::size_t>> index_;
};

struct PreparedSequence {
    RingPtr ring;                       // coefficient-reduced ring
    std::vector<Polynomial> elements;   // nonconstant, homogeneous, positive weight
    std::vector<std::size_t> positions; // original indices
    std::vector<std::size_t> vars;      // generators still present
    std::optional<RegularityFailure> failure;
    std::vector<std::string> notes;
};

// Reduces coefficients, strips leading p, and eliminates elements that are unit
// multiples of a single generator (R/(x_i) is again a polynomial ring).
inline PreparedSequence prepare_sequence(const RingPtr& ring, const std::vector<Polynomial>& xs,
                                         std::optional<std::uint64_t> prime)
{
    PreparedSequence out;
    std::uint64_t q = prime ? *prime : ring->modulus();
    if (prime && ring->modulus() != 0 && ring->modulus() != *prime)
        throw AlgebraError("prime does not match the ring's modulus");
    out.ring = q ? ring->with_modulus(q) : ring;
    for (std::size_t i = 0; i < ring->size(); ++i) {
        if (ring->weight(i) <= 0)
            throw AlgebraError("regularity check needs positive generator weights");
        out.vars.push_back(i);
    }

    for (std::size_t k = 0; k < xs.size(); ++k) {
        const auto& x = xs[k];
        if (!x.is_homogeneous())
            throw AlgebraError("element " + std::to_string(k) + " is not homogeneous: " + x.to_string());
        if (prime && ring->is_integral() && x.is_constant() &&
            x.constant_term() == mpz_class(static_cast<unsigned long>(*prime))) {
            // p is a nonzerodivisor on a free Z_(p)-module; continue over F_p
            out.notes.push_back("element " + std::to_string(k) + " = p handled by reduction mod p");
            continue;
        }
        auto r = q ? x.reduced_mod(q).embedded(out.ring) : x;
        if (r.is_zero() || r.is_constant()) {
            if (!out.failure)
                out.failure = RegularityFailure{k, 0};
            out.notes.push_back("element " + std::to_string(k) +
                                (r.is_zero() ? " is zero in the quotient" : " is a unit"));
            continue;
        }
        out.elements.push_back(r);
        out.positions.push_back(k);
    }

    // eliminate linear generators first; homogeneous sequences of positive
    // degree are regular in any order
    std::vector<std::size_t> killed;
    std::vector<bool> eliminated(out.elements.size(), false);
    for (std::size_t k = 0; k < out.elements.size(); ++k) {
        const auto& e = out.elements[k];
        if (e.size() != 1)
            continue;
        const auto& [m, c] = *e.terms().begin();
        if (m.degree() != 1)
            continue;
        bool unit = q ? true : (c == 1 || c == -1);
        if (!unit)
            continue;
        std::size_t g = 0;
        while (m.exponent(g) == 0)
            ++g;
        if (std::find(killed.begin(), killed.end(), g) != killed.end())
            continue; // a repeated generator is a zero divisor; leave it to the linear algebra
        killed.push_back(g);
        eliminated[k] = true;
        out.notes.push_back("element " + std::to_string(out.positions[k]) + " = unit * " +
                            out.ring->generator(g).name + " eliminated by substitution");
    }
    std::vector<Polynomial> rest;
    std::vector<std::size_t> rest_pos;
    for (std::size_t k = 0; k < out.elements.size(); ++k) {
        if (eliminated[k])
            continue;
        auto e = out.elements[k].without(killed);
        rest.push_back(e);
        rest_pos.push_back(out.positions[k]);
    }
    out.elements = std::move(rest);
    out.positions = std::move(rest_pos);
    std::vector<std::size_t> vars;
    for (auto v : out.vars)
        if (std::find(killed.begin(), killed.end(), v) == killed.end())
            vars.push_back(v);
    out.vars = std::move(vars);
    return out;
}

template <class Field>
RegularityReport run_regularity(Field field, const PreparedSequence& prep, int cutoff)
{
    RegularityReport rep;
    rep.cutoff = cutoff;
    rep.notes = prep.notes;
    rep.failure = prep.failure;
    GradedIdealTracker<Field> tracker(field, prep.ring, prep.vars);

    std::vector<std::int64_t> degs;
    for (const auto& e : prep.elements) {
        if (e.is_zero()) {
            degs.push_back(0);
            continue;
        }
        degs.push_back(*e.weight());
    }
    for (std::size_t k = 0; k < prep.elements.size(); ++k)
        if (prep.elements[k].is_zero() && !rep.failure)
            rep.failure = RegularityFailure{prep.positions[k], 0};

    std::int64_t step = 0;
    for (auto v : prep.vars)
        step = std::gcd(step, static_cast<std::int64_t>(prep.ring->weight(v)));
    if (step == 0)
        step = 1;

    std::map<std::int64_t, std::vector<std::size_t>> dims;
    for (std::int64_t w = 0; w <= cutoff; w += step) {
        dims[w] = tracker.ideal_dims(prep.elements, degs, w);
        const auto rw = tracker.basis(w).size();
        rep.quotient_ranks[static_cast<int>(w)] = rw - dims[w].back();
        if (rep.failure)
            continue;
        for (std::size_t k = 0; k < prep.elements.size(); ++k) {
            // x_k injective on R/(x_1..x_{k-1}) in weight w - d_k
            const auto d = degs[k];
            std::size_t expected = dims[w][k];
            if (w >= d)
                expected += tracker.basis(w - d).size() - dims.at(w - d)[k];
            if (dims[w][k + 1] != expected) {
                rep.failure = RegularityFailure{prep.positions[k], w - d};
                break;
            }
        }
    }
    rep.regular = !rep.failure;

    // complete-intersection Hilbert series of the final quotient
    PoincareSeries expected = PoincareSeries::one(cutoff);
    for (auto v : prep.vars)
        expected = expected * PoincareSeries::polynomial({prep.ring->weight(v)}, cutoff);
    for (auto d : degs) {
        if (d <= 0)
            continue;
        PoincareSeries factor = PoincareSeries::one(cutoff);
        if (d <= cutoff)
            factor[static_cast<int>(d)] = -1;
        expected = expected * factor;
    }
    rep.hilbert_series_match = true;
    for (const auto& [w, r] : rep.quotient_ranks)
        if (expected[w] != static_cast<unsigned long>(r))
            rep.hilbert_series_match = false;
    for (int w = 0; w <= cutoff; ++w)
        if (w % step != 0 && expected[w] != 0)
            rep.hilbert_series_match = false;

    // zero-dimensional when as many elements as variables and the expected
    // series is a polynomial of degree sum(d_i) - sum(w_j) within the cutoff
    std::int64_t top = 0;
    for (auto d : degs)
        top += d;
    for (auto v : prep.vars)
        top -= prep.ring->weight(v);
    rep.zero_dimensional =
        rep.regular && prep.elements.size() == prep.vars.size() && top <= cutoff && rep.hilbert_series_match;
    for (const auto& [w, r] : rep.quotient_ranks)
        rep.total_rank += r;
    return rep;
}

} // namespace detail

/// Decides, weight by weight through `cutoff`, whether xs is a regular
/// sequence on the graded polynomial ring. With a prime the computation runs
/// over F_p (certifying (p, xs) and hence xs regular over Z_(p)); with no prime
/// over Z it runs over Q; over Z/q it runs over F_q.
inline RegularityReport graded_regular_sequence_check(const RingPtr& ring, const std::vector<Polynomial>& xs,
                                                      std::optional<std::uint64_t> prime, int cutoff)
{
    if (cutoff < 0)
        throw AlgebraError("cutoff must be nonnegative");
    std::vector<Polynomial> lifted;
    for (const auto& x : xs)
        lifted.push_back(x.ring() ? x.embedded(ring) : Polynomial(ring));
    // a leading prime constant over Z fixes the working prime
    if (!prime && ring->is_integral() && !lifted.empty() && lifted.front().is_constant()) {
        auto c = lifted.front().constant_term();
        if (c > 1 && c.fits_ulong_p() && is_prime(c.get_ui()))
            prime = c.get_ui();
    }
    auto prep = detail::prepare_sequence(ring, lifted, prime);
    const std::uint64_t q = prep.ring->modulus();
    RegularityReport rep;
    if (q) {
        rep = detail::run_regularity(PrimeField(q), prep, cutoff);
        rep.field = "F_" + std::to_string(q);
    } else {
        rep = detail::run_regularity(RationalField{}, prep, cutoff);
        rep.field = "Q";
    }
    return rep;
}

struct LandweberReport {
    std::uint64_t p;
    std::vector<Polynomial> v;   // v_0 .. v_h as computed
    RegularityReport regularity; // of (p, v_1, .., v_h)
    std::optional<int> c4_power; // least M with c4^M in (p, v_1, .., v_h), if within cutoff
    std::optional<int> discriminant_power;
    bool cusp_containment = false;
    std::vector<std::string> notes;
};

/// Regularity of (p, v_1, .., v_h) and V(p, v_1, .., v_h) inside the cuspidal
/// locus, via c4^M, Delta^M in the ideal for some M with weight <= cutoff.
inline LandweberReport landweber_report(const WeierstrassCurve& c, std::uint64_t p, int height, int cutoff,
                                        int order = 0)
{
    if (height < 0 || height > 2)
        throw AlgebraError("height must be 0, 1 or 2");
    LandweberReport out;
    out.p = p;
    auto h = hasse_coefficients(c, p, height, order);
    out.v = h.v;
    const auto ring = c.ring();
    out.regularity = graded_regular_sequence_check(ring, out.v, p, cutoff);

    const auto Fring = ring->with_modulus(p);
    std::vector<Polynomial> gens;
    std::vector<std::int64_t> degs;
    for (std::size_t i = 1; i < out.v.size(); ++i) {
        auto g = out.v[i].reduced_mod(p).embedded(Fring);
        if (g.is_zero())
            continue;
        if (!g.is_homogeneous())
            throw AlgebraError("v_" + std::to_string(i) + " is not homogeneous");
        gens.push_back(g);
        degs.push_back(*g.weight());
    }
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < ring->size(); ++i)
        vars.push_back(i);
    detail::GradedIdealTracker<PrimeField> tracker(PrimeField(p), Fring, vars);
    auto inv = invariants(c);
    auto least_power = [&](const Polynomial& f) -> std::optional<int> {
        auto g = f.reduced_mod(p).embedded(Fring);
        if (g.is_zero())
            return 1;
        if (!g.is_homogeneous())
            throw AlgebraError("invariant is not homogeneous");
        Polynomial power = g;
        for (int M = 1; *power.weight() <= cutoff; ++M) {
            if (tracker.member(power, gens, degs))
                return M;
            power = power * g;
        }
        return std::nullopt;
    };
    out.c4_power = least_power(inv.c4);
    out.discriminant_power = least_power(inv.discriminant);
    out.cusp_containment = out.c4_power.has_value() && out.discriminant_power.has_value();
    out.notes.push_back("v_i are literal coefficients of z^(p^i) in [p](z) in the coordinate -x/y; "
                        "their unit factors are convention-dependent");
    return out;
}

} // namespace tmfalg
