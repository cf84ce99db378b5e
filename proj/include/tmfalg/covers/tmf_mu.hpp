#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmfalg/algebra/poincare.hpp"
#include "tmfalg/covers/cech.hpp"
#include "tmfalg/elliptic/curve.hpp"
#include "tmfalg/elliptic/regular.hpp"

namespace tmfalg {

struct TmfMuOptions {
    std::uint64_t prime = 2;
    int twist_min = -8;
    int twist_max = 8;
    int en_cutoff = -1;             // largest n with e_n present; -1 = whatever the window demands
    int stages = 4;                 // Koszul stages m = 1..stages
    bool specialize = false;        // a2 = a4 = a6 = e_n = 0
    int certificate_cutoff = 48;    // weight through which (c4, Delta) regularity is checked
    std::size_t generator_limit = 64; // list H^0 monomials only up to this rank
};

struct TmfMuPage {
    TwoRowPage page;
    RegularityReport certificate; // (c4, Delta) on the base ring mod p
    int en_cutoff = 0;
    int demanded_en = 0;
};

namespace detail {

// H^1 of the Cech complex R[c4^-1] (+) R[D^-1] -> R[(c4 D)^-1] is the colimit
// over m of R/(c4^m, D^m) shifted down by m(|c4| + |D|), along multiplication
// by c4 D. For a regular pair each stage has Hilbert series
// H_R (1 - q^{8m}) (1 - q^{24m}) and the transition maps are injective.
inline mpz_class koszul_stage_rank(const PoincareSeries& hilbert, int m, int weight)
{
    const int target = weight + 32 * m;
    if (target < 0)
        return 0;
    auto at = [&](int w) -> mpz_class { return w < 0 ? mpz_class(0) : hilbert[w]; };
    return at(target) - at(target - 8 * m) - at(target - 24 * m) + at(target - 32 * m);
}

} // namespace detail

/// Two-row page for Tmf smash MU over Z_(p): twist j sits in weight 2j of
/// R = Z_(p)[a1, a2, a3, a4, a6, e_4, e_5, ...] with |e_n| = 2n.
/// H^0 = R (depth two from the regularity certificate). H^1 is reported as
/// the Koszul stage ranks m = 1..stages; `stable` means the last two agree.
inline TmfMuPage tmf_mu_page(const TmfMuOptions& opt)
{
    if (!is_prime(opt.prime))
        throw AlgebraError(std::to_string(opt.prime) + " is not prime");
    if (opt.twist_min > opt.twist_max)
        throw AlgebraError("empty twist window");
    if (opt.stages < 1)
        throw AlgebraError("need at least one Koszul stage");

    TmfMuPage out;
    const int top_weight = 2 * opt.twist_max + 32 * opt.stages;
    out.demanded_en = opt.specialize ? 0 : top_weight / 2;
    out.en_cutoff = opt.en_cutoff < 0 ? out.demanded_en : opt.en_cutoff;
    if (!opt.specialize && out.en_cutoff < out.demanded_en)
        throw AlgebraError("window demands e_n up to n = " + std::to_string(out.demanded_en) +
                           " but the cutoff is " + std::to_string(out.en_cutoff));

    // base ring without the e_n, which do not occur in c4 or Delta
    RingPtr base;
    WeierstrassCurve curve;
    std::vector<int> degrees;
    if (opt.specialize) {
        base = Ring::make({{"a1", 2}, {"a3", 6}});
        auto g = [&](const char* n) { return Polynomial::generator(base, n); };
        curve = {g("a1"), Polynomial(base), g("a3"), Polynomial(base), Polynomial(base)};
        degrees = {2, 6};
    } else {
        base = weierstrass_ring();
        curve = universal_curve(base);
        degrees = {2, 4, 6, 8, 12};
        for (int n = 4; n <= out.en_cutoff; ++n)
            degrees.push_back(2 * n);
    }
    const auto inv = invariants(curve);
    out.certificate =
        graded_regular_sequence_check(base, {inv.c4, inv.discriminant}, opt.prime, opt.certificate_cutoff);
    if (!out.certificate.regular)
        throw AlgebraError("(c4, Delta) is not regular mod " + std::to_string(opt.prime) +
                           "; the Koszul description does not apply");

    const auto hilbert = PoincareSeries::polynomial(degrees, std::max(top_weight, 0));

    // monomials for listing H^0 generators; e_n with 2n above the window never occur
    std::vector<Generator> gens = base->generators();
    if (!opt.specialize)
        for (int n = 4; n <= std::min(out.en_cutoff, opt.twist_max); ++n)
            gens.push_back({"e" + std::to_string(n), 2 * n});
    const auto list_ring = Ring::make(gens);

    auto& page = out.page;
    page.base = detail::local_ring_name(opt.prime);
    page.label = opt.specialize ? "Tmf^MU/(a2,a4,a6,e_n)" : "Tmf^MU";
    page.notes.push_back("(c4, Delta) regular mod " + std::to_string(opt.prime) + " through weight " +
                         std::to_string(opt.certificate_cutoff));
    if (!opt.specialize)
        page.notes.push_back("e_n present for 4 <= n <= " + std::to_string(out.en_cutoff));
    page.notes.push_back("H1 ranks are Koszul stage ranks m = 1.." + std::to_string(opt.stages));

    for (int j = opt.twist_min; j <= opt.twist_max; ++j) {
        TwoRowEntry e;
        e.twist = j;
        const int w = 2 * j;
        e.h0_rank = w >= 0 ? hilbert[w] : mpz_class(0);
        for (int m = 1; m <= opt.stages; ++m)
            e.h1_stage_ranks.push_back(detail::koszul_stage_rank(hilbert, m, w));
        e.h1_rank = e.h1_stage_ranks.back();
        e.stable = e.h1_stage_ranks.size() < 2 || e.h1_stage_ranks.rbegin()[0] == e.h1_stage_ranks.rbegin()[1];
        e.generators_listed = e.h0_rank <= static_cast<unsigned long>(opt.generator_limit) && e.h1_rank == 0;
        if (e.generators_listed && w >= 0)
            for (const auto& mono : monomials_of_weight(*list_ring, w))
                e.h0.push_back(mono.is_one() ? "1" : mono.to_string(*list_ring));
        page.entries.emplace(j, std::move(e));
    }
    return out;
}

} // namespace tmfalg
