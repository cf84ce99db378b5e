#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tmfalg/cli/dispatch.hpp"

using namespace tmfalg;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what)
    {
        if (!ok)
            pass = false;
        notes.push_back((ok ? "ok: " : "FAILED: ") + what);
    }
};

WeierstrassCurve constant_curve(std::array<long, 5> a, std::uint64_t modulus = 0)
{
    auto ring = Ring::make({}, modulus);
    std::array<Polynomial, 5> c;
    for (int i = 0; i < 5; ++i)
        c[i] = Polynomial::constant(ring, a[i]);
    return make_curve(ring, c);
}

Polynomial P(const RingPtr& r, const char* text) { return parse_polynomial(r, text); }

Outcome two_series()
{
    Outcome o;
    const auto f = fgl_from_curve(universal_curve(), 4);
    const auto c = series_coefficients(f, n_series(f, 2));
    const char* expected[] = {"2", "-a1", "-2*a2", "a1*a2 - 7*a3"};
    for (int k = 1; k <= 4; ++k)
        o.check(c[k] == P(f.base, expected[k - 1]), "z^" + std::to_string(k) + " coefficient " + c[k].to_string());
    return o;
}

Outcome three_series()
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const auto curve = parse_curve("0,a2,0,a4,0");
    const auto h = hasse_coefficients(curve, 3, 2, 10);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto& r = curve.ring();
    o.check(h.v[1] == P(r, "-8*a2"), "v1 = " + h.v[1].to_string());
    const auto v2 = modulo_generators(h.v[2], {"a2"});
    o.check(v2 == P(r, "2432*a4^2"), "v2 mod (a2) = " + v2.to_string());
    o.check(secs <= 10.0, "runtime " + std::to_string(secs) + " s");
    return o;
}

Outcome cover_fibers()
{
    Outcome o;
    const auto two = cover_fiber(constant_curve({0, 0, 0, 0, 0}, 2), 2, FieldSpec::parse("F2"));
    const std::set<std::string> eight{"1", "s", "s^2", "s^3", "t", "s*t", "s^2*t", "s^3*t"};
    const auto names2 = two.basis_names();
    o.check(std::set<std::string>(names2.begin(), names2.end()) == eight && two.associative,
            "cusp at 2: " + cli::join(names2));
    const auto three = cover_fiber(constant_curve({0, 0, 0, 0, 0}, 3), 3, FieldSpec::parse("F3"));
    const auto names3 = three.basis_names();
    o.check(std::set<std::string>(names3.begin(), names3.end()) == std::set<std::string>{"1", "r", "r^2"},
            "cusp at 3: " + cli::join(names3));
    for (const auto& a : std::vector<std::array<long, 5>>{{0, 0, 0, 1, 0}, {1, 0, 1, 0, 0}, {1, -1, 1, 2, 3}}) {
        const auto q = cover_fiber(constant_curve(a), 2, FieldSpec::parse("Q"));
        const auto f5 = cover_fiber(constant_curve(a, 5), 2, FieldSpec::parse("F5"));
        o.check(q.rank() == 8 && f5.rank() == 8,
                "curve " + constant_curve(a).to_string() + ": rank " + std::to_string(q.rank()) + " over Q, " +
                    std::to_string(f5.rank()) + " over F5");
    }
    return o;
}

Outcome invariants_mod_two()
{
    Outcome o;
    const auto c = parse_curve("alpha1,0,alpha3,0,0", 2);
    const auto inv = invariants(c);
    o.check(inv.c4 == P(c.ring(), "alpha1^4"), "c4 = " + inv.c4.to_string());
    o.check(inv.discriminant == P(c.ring(), "alpha1^3*alpha3^3 + alpha3^4"), "Delta = " + inv.discriminant.to_string());
    std::mt19937_64 rng(20240613);
    std::uniform_int_distribution<long> coeff(-50, 50);
    int good = 0;
    for (int i = 0; i < 100; ++i) {
        const auto v = invariants(constant_curve({coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng)}));
        good += v.c4 * v.c4 * v.c4 - v.c6 * v.c6 == mpz_class(1728) * v.discriminant;
    }
    o.check(good == 100, std::to_string(good) + "/100 random curves satisfy c4^3 - c6^2 = 1728 Delta");
    return o;
}

Outcome cech_descent()
{
    Outcome o;
    const auto p13 = descent_assemble(cech_weighted_projective({1, 3}, -6, 24, 2));
    bool poly = true;
    for (int d = 0; d <= 48; ++d) {
        // monomials alpha1^a alpha3^b with 2a + 6b = d
        long count = 0;
        if (d % 2 == 0)
            for (int b = 0; 6 * b <= d; ++b)
                ++count;
        poly = poly && p13.rank(d) == count;
    }
    o.check(poly, "P(1,3): pi_d ranks equal Z_(2)[alpha1, alpha3] through degree 48");
    bool gap = true;
    for (int d = -8; d < 0; ++d)
        gap = gap && p13.rank(d) == 0;
    const auto& g9 = p13.groups.at(-9);
    o.check(gap && g9.rank == 1 && g9.generators.front() == "H1(-4): alpha1^-1*alpha3^-1",
            "first negative class: degree -9, " + cli::join(g9.generators));

    const auto p46 = descent_assemble(cech_weighted_projective({4, 6}, -12, 0, 2, {"c4", "c6"}));
    bool zero = true;
    for (int d = -20; d < 0; ++d)
        zero = zero && p46.rank(d) == 0;
    o.check(zero, "P(4,6): pi_j = 0 for -21 < j < 0");
    const auto& g21 = p46.groups.at(-21);
    o.check(g21.rank > 0, "P(4,6): class at -21: " + cli::join(g21.generators));
    return o;
}

Outcome regular_sequences()
{
    Outcome o;
    const auto c = universal_curve();
    const auto inv = invariants(c);
    const auto rep = graded_regular_sequence_check(c.ring(), {inv.c4, inv.discriminant, c.a2, c.a4, c.a6}, 2, 48);
    o.check(rep.regular, "(c4, Delta, a2, a4, a6) regular mod 2 through weight 48");
    const auto lw = landweber_report(parse_curve("0,0,0,A,B"), 5, 2, 60);
    o.check(lw.regularity.regular, "(5, v1, v2) regular on Z_(5)[A, B]");
    o.check(lw.regularity.zero_dimensional && lw.regularity.total_rank == 8,
            "quotient total rank " + std::to_string(lw.regularity.total_rank) + " (expected 8)");
    return o;
}

Outcome hopf_algebroids()
{
    Outcome o;
    const auto w = synthesize_weierstrass_algebroid();
    o.check(all_axioms_hold(w.verify()), "synthesized Weierstrass presentation satisfies every axiom identity");
    for (const char* name : {"weierstrass", "mqd"}) {
        const auto h = builtin_algebroid(name);
        bool agree = true;
        for (int j = -12; j <= 12; ++j) {
            const auto cobar = cobar_cohomology(h, {Comodule::Kind::twist, j}, 0);
            agree = agree && cobar.groups[0].rank == static_cast<unsigned long>(invariants_h0(h, j).size()) &&
                    cobar.groups[0].torsion.empty();
        }
        o.check(agree, std::string(name) + ": cobar H0 equals the invariants oracle for |j| <= 12");
    }
    auto acyclic = [&](const char* name, int s_max, int j_max) {
        const auto h = builtin_algebroid(name);
        bool ok = true;
        for (int j = -j_max; j <= j_max; ++j) {
            const auto res = cobar_cohomology(h, {Comodule::Kind::extended, j}, s_max);
            for (int s = 1; s <= s_max; ++s)
                ok = ok && res.groups[s].empty();
        }
        o.check(ok, std::string(name) + ": extended comodules acyclic for s <= " + std::to_string(s_max) +
                        ", |j| <= " + std::to_string(j_max));
    };
    acyclic("mqd", 3, 6);
    acyclic("weierstrass", 2, 4);
    return o;
}

Outcome z2_chart()
{
    Outcome o;
    const auto chart = cobar_chart(builtin_algebroid("z2_group"), Comodule::Kind::twist, -4, 7, 6);
    bool closed = true;
    for (int j = -4; j <= 7; ++j)
        for (int s = 0; s <= 6; ++s)
            closed = closed && chart.at(s, 2 * j) == z2_group_cohomology(s, j);
    o.check(closed, "cobar chart equals H^s(Z/2; omega^j) for s <= 6");

    // glyphs drawn in the KO homotopy fixed point figure, as (t - s, s)
    const std::vector<std::pair<int, int>> boxes{{-4, 0}, {0, 0}, {4, 0}};
    const std::vector<std::pair<int, int>> dots{{1, 1},  {2, 2},  {3, 3},  {4, 4},  {5, 5},  {5, 1},  {6, 2},
                                                {-3, 1}, {-2, 2}, {-1, 3}, {-4, 4}, {-3, 5}, {-2, 6}};
    bool placed = true;
    for (auto [x, s] : boxes) {
        const auto c = chart.at(s, x + s);
        placed = placed && c.rank == 1 && c.torsion.empty();
    }
    for (auto [x, s] : dots) {
        const auto c = chart.at(s, x + s);
        placed = placed && c.rank == 0 && c.torsion == std::vector<mpz_class>{2};
    }
    // and nothing else in the window: boxes only on s = 0, every other cell one Z/2
    bool shape = true;
    for (const auto& [st, c] : chart.cells) {
        const int x = st.second - st.first;
        if (x < -8 || x > 8)
            continue;
        shape = shape && (st.first == 0 ? (c.rank == 1 && c.torsion.empty())
                                        : (c.rank == 0 && c.torsion == std::vector<mpz_class>{2}));
    }
    o.check(placed && shape, "box and dot placements agree with the figure in s <= 6, |t - s| <= 8");
    return o;
}

Outcome ku_cp2()
{
    Outcome o;
    const auto k = ku_cp2_involution();
    o.check(k.matrix == IntegerMatrix{{-1, 0}, {1, 1}}, "alpha -> -alpha + beta, beta -> beta");
    o.check(k.is_involution && k.witness_is_basis && k.witness_is_swap, "swap in the basis {alpha, -alpha + beta}");
    return o;
}

Outcome steenrod()
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const DualSteenrod a(64);
    o.check(a.conj_xi(2) == parse_polynomial(a.ring(), "xi2 + xi1^3"), "xibar2 = " + a.conj_xi(2).to_string());
    bool antipode = a.generators() >= 6;
    for (const auto& d : a.antipode_defects())
        antipode = antipode && d.is_zero();
    o.check(antipode, "antipode identity for k <= " + std::to_string(a.generators()));
    const auto prim = hopf_primitives(a, 16);
    o.check(prim.degrees() == std::vector<int>{1, 2, 4, 8, 16}, "Prim(A) through 16 is {xi1^(2^n)}");

    for (const auto& spec : {ko_homology(a), tmf_homology(a), bp_n_homology(a, 1), bp_n_homology(a, 2)}) {
        const auto c = comodule_closure_check(a, spec);
        o.check(c.closed, spec.name + " closed through 64 (" + std::to_string(c.checked) + " monomials)");
    }
    const auto ku = freeness_rank_check(a, bp_n_homology(a, 1), ko_homology(a), {0, 2});
    o.check(ku.ok(), "H(ku) free over H(ko) on cells {0, 2}" + (ku.failure.empty() ? "" : ": " + ku.failure));
    const auto bp2 = freeness_rank_check(a, bp_n_homology(a, 2), tmf_homology(a), {0, 2, 4, 6, 6, 8, 10, 12});
    o.check(bp2.ok(), "H(BP<2>) free over H(tmf) on cells {0,2,4,6,6,8,10,12}" +
                          (bp2.failure.empty() ? "" : ": " + bp2.failure));

    const auto ko = uniqueness_probe(a, whole_algebra(a), ko_homology(a), 16);
    o.check(ko.ok() && ko.forced_generator == std::optional<std::string>("xi1^4"),
            "ko: degree " + std::to_string(ko.lowest_degree) + " generator forced to " +
                ko.forced_generator.value_or("nothing"));
    const auto tmf =
        uniqueness_probe(a, whole_algebra(a), tmf_homology(a), 16, {a.xi(1).pow(6) * a.conj_xi(2).pow(2)});
    o.check(tmf.ok() && tmf.forced_generator == std::optional<std::string>("xi1^8"),
            "tmf: degree " + std::to_string(tmf.lowest_degree) + " generator forced to " +
                tmf.forced_generator.value_or("nothing"));
    o.check(!tmf.decoys.empty() && tmf.decoys[0].excluded,
            "xi1^6 xibar2^2 not primitive mod xi1^8: " + tmf.decoys[0].left + " (x) " + tmf.decoys[0].right);
    const auto q = quotient_pattern(a, tmf_homology(a));
    o.check(q.nonnegative() && q.total() == 64 && q.top_degree() == 23,
            "PS(A)/PS(tmf): total " + q.total().get_str() + ", top degree " + std::to_string(q.top_degree()));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs <= 300, "runtime " + std::to_string(secs) + " s at cutoff 64");
    return o;
}

Outcome determinism()
{
    Outcome o;
    using cli::RunConfig;
    std::vector<std::pair<RunConfig, std::string>> runs;
    auto add = [&](std::function<void(RunConfig&)> set, std::string format = "json") {
        RunConfig c;
        set(c);
        for (const auto& f : {std::string("json"), format}) {
            c.format = f;
            runs.emplace_back(c, f);
        }
    };
    add([](RunConfig& c) { c.verb = "curve", c.sub = "invariants", c.random = 20; }, "tsv");
    add([](RunConfig& c) { c.verb = "curve", c.sub = "fgl"; }, "tsv");
    add([](RunConfig& c) { c.verb = "curve", c.sub = "nseries", c.curve = "a1,0,a3,0,0", c.order = 4; }, "tsv");
    add([](RunConfig& c) { c.verb = "curve", c.sub = "hasse", c.curve = "0,a2,0,a4,0", c.prime = 3, c.height = 2,
                           c.order = 10; }, "tsv");
    add([](RunConfig& c) { c.verb = "curve", c.sub = "landweber", c.curve = "0,0,0,A,B", c.prime = 5, c.height = 2,
                           c.cutoff = 60; }, "tsv");
    add([](RunConfig& c) { c.verb = "cover", c.sub = "fiber", c.cusp = true; }, "tsv");
    add([](RunConfig& c) { c.verb = "cech", c.twists = "-6..6"; }, "tsv");
    add([](RunConfig& c) { c.verb = "descent", c.twists = "0..6"; }, "tsv");
    add([](RunConfig& c) { c.verb = "tmf-mu", c.twists = "-4..4"; }, "tsv");
    add([](RunConfig& c) { c.verb = "hopf", c.sub = "synthesize"; }, "tsv");
    add([](RunConfig& c) { c.verb = "hopf", c.sub = "cobar", c.presentation = "z2_group", c.twists = "-4..7",
                           c.s_max = 6; }, "svg");
    add([](RunConfig& c) { c.verb = "hopf", c.sub = "h0", c.presentation = "mqd"; }, "tsv");
    add([](RunConfig& c) { c.verb = "hopf", c.sub = "kucp2"; }, "tsv");
    add([](RunConfig& c) { c.verb = "steenrod", c.sub = "conjugate", c.element = "xi3", c.cutoff = 16; }, "tsv");
    add([](RunConfig& c) { c.verb = "steenrod", c.sub = "coproduct", c.element = "xibar2^2", c.cutoff = 16; }, "tsv");
    add([](RunConfig& c) { c.verb = "steenrod", c.sub = "verify", c.target = "tmf", c.cutoff = 32; }, "tsv");
    add([](RunConfig& c) { c.verb = "steenrod", c.sub = "primitives", c.of = "A/squares", c.cutoff = 32; }, "tsv");
    add([](RunConfig& c) { c.verb = "chart", c.sub = "render", c.presentation = "z2_group", c.s_max = 6; }, "svg");

    std::size_t same = 0;
    for (const auto& [c, f] : runs) {
        std::ostringstream a, b, ea, eb;
        const int ra = cli::execute(c, a, ea), rb = cli::execute(c, b, eb);
        const bool ok = ra == rb && a.str() == b.str() && !a.str().empty() && ra == 0;
        same += ok;
        if (!ok)
            o.check(false, c.verb + " " + c.sub + " --format " + f + " (exit " + std::to_string(ra) + ") " + ea.str());
    }
    o.check(same == runs.size(), std::to_string(same) + "/" + std::to_string(runs.size()) +
                                     " command runs byte-identical on re-run");

    // file output goes through the atomic writer
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "tmfalg_acceptance";
    fs::remove_all(dir);
    RunConfig c;
    c.verb = "chart", c.sub = "render", c.presentation = "z2_group", c.twists = "-4..7", c.s_max = 6;
    c.format = "svg";
    std::string contents[2];
    for (int i = 0; i < 2; ++i) {
        c.output = (dir / ("chart" + std::to_string(i) + ".svg")).string();
        std::ostringstream out, err;
        cli::execute(c, out, err);
        std::ifstream f(c.output, std::ios::binary);
        contents[i].assign(std::istreambuf_iterator<char>(f), {});
    }
    o.check(!contents[0].empty() && contents[0] == contents[1] && !fs::exists(c.output + ".tmp"),
            "SVG files written twice are identical");
    fs::remove_all(dir);
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"[2]-series of the universal curve", two_series},
        {"[3]-series: v1 and v2 for y^2 = x^3 + a2 x^2 + a4 x", three_series},
        {"cover fibers", cover_fibers},
        {"invariants mod 2 and the c4/c6/Delta identity", invariants_mod_two},
        {"Cech pages and descent", cech_descent},
        {"regular sequences", regular_sequences},
        {"Hopf algebroids", hopf_algebroids},
        {"Z/2 descent chart", z2_chart},
        {"KU(CP^2) involution", ku_cp2},
        {"dual Steenrod algebra through degree 64", steenrod},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char t[32];
        std::snprintf(t, sizeof t, "%.1fs", secs);
        std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first
                  << " (" << t << ")\n";
        for (const auto& n : o.notes)
            std::cout << "    " << n << "\n";
        failed += !o.pass;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria pass\n";
    return failed ? 1 : 0;
}
