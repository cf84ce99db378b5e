#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "tmfalg/cli/emit.hpp"
#include "tmfalg/covers/cech.hpp"
#include "tmfalg/covers/fiber.hpp"
#include "tmfalg/covers/tmf_mu.hpp"
#include "tmfalg/elliptic/curve.hpp"
#include "tmfalg/elliptic/formal_group.hpp"
#include "tmfalg/elliptic/regular.hpp"
#include "tmfalg/hopf/algebroid.hpp"
#include "tmfalg/hopf/cobar.hpp"
#include "tmfalg/hopf/ku_cp2.hpp"
#include "tmfalg/steenrod/verify.hpp"

namespace tmfalg::cli {

/// Usage errors: unknown verb, bad option values.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string verb, sub;
    std::string format = "json";           // json, tsv, svg
    std::string output;                    // empty: stdout
    std::optional<std::uint64_t> prime;    // verb-specific default when absent
    std::optional<int> cutoff;             // weight / degree cutoff, verb-specific default
    std::uint64_t seed = 20240613;

    // curve
    std::string curve = "a1,a2,a3,a4,a6";
    long n = 2;
    int order = 0;                         // 0: verb default
    int height = 1;
    std::string modulo;                    // comma-separated generators set to zero in reports
    int random = 0;                        // random integer curves for the c4^3 - c6^2 = 1728 Delta check
    // covers
    bool cusp = false;
    std::string field = "F2";
    std::string weights = "1,3";
    std::string twists;                    // "a..b"
    std::string names;                     // "alpha1,alpha3"
    int stages = 4;
    bool specialize = false;
    // hopf
    std::string presentation = "weierstrass";
    std::string coefficients = "Z";
    int s_max = 2;
    bool extended = false;
    std::size_t limit = 20000;
    // steenrod
    std::string element;
    std::string target;
    std::string of = "A";
    // chart
    std::string input;
};

struct Result {
    json data;
    std::optional<Table> table;
    std::optional<std::string> svg;
    bool ok = true;                        // false when an invariant check failed
};

namespace detail {

inline std::pair<int, int> parse_range(const std::string& text, std::pair<int, int> fallback)
{
    if (text.empty())
        return fallback;
    std::smatch m;
    static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    if (!std::regex_match(text, m, re))
        throw UsageError("range '" + text + "' must look like a..b");
    const int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (a > b)
        throw UsageError("empty range '" + text + "'");
    return {a, b};
}

inline std::vector<std::string> split(const std::string& text, char sep = ',')
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        cur.erase(0, cur.find_first_not_of(" \t"));
        cur.erase(cur.find_last_not_of(" \t") + 1);
        if (!cur.empty())
            out.push_back(cur);
    }
    return out;
}

inline int cutoff_or(const RunConfig& c, int fallback)
{
    const int v = c.cutoff.value_or(fallback);
    if (v <= 0)
        throw UsageError("cutoff must be positive");
    return v;
}

inline std::uint64_t prime_or(const RunConfig& c, std::uint64_t fallback)
{
    const auto p = c.prime.value_or(fallback);
    if (p != 0 && !is_prime(p))
        throw UsageError(std::to_string(p) + " is not prime");
    return p;
}

inline json poly_list(const std::vector<Polynomial>& xs)
{
    json a = json::array();
    for (const auto& x : xs)
        a.push_back(x.to_string());
    return a;
}

inline json regularity_json(const RegularityReport& r)
{
    json ranks = json::object();
    for (const auto& [w, d] : r.quotient_ranks)
        ranks[std::to_string(w)] = d;
    json out{{"regular", r.regular},
             {"cutoff", r.cutoff},
             {"field", r.field},
             {"hilbert_series_match", r.hilbert_series_match},
             {"zero_dimensional", r.zero_dimensional},
             {"total_rank", r.total_rank},
             {"notes", r.notes}};
    if (r.failure)
        out["failure"] = {{"index", r.failure->index}, {"weight", r.failure->weight}};
    return out;
}

// ---- curve

inline Result run_curve(const RunConfig& c)
{
    const std::uint64_t modulus = c.prime && (c.sub == "invariants" || c.sub == "fgl" || c.sub == "nseries")
                                      ? prime_or(c, 0)
                                      : 0;
    const auto curve = parse_curve(c.curve, modulus);
    const auto mod = split(c.modulo);
    auto reduce = [&](const Polynomial& p) { return mod.empty() ? p : modulo_generators(p, mod); };
    Result r;
    r.data["curve"] = curve.to_string();
    if (modulus)
        r.data["modulus"] = modulus;

    if (c.sub == "invariants") {
        const auto inv = invariants(curve);
        const std::vector<std::pair<std::string, const Polynomial*>> named{
            {"b2", &inv.b2}, {"b4", &inv.b4}, {"b6", &inv.b6}, {"b8", &inv.b8},
            {"c4", &inv.c4}, {"c6", &inv.c6}, {"discriminant", &inv.discriminant}};
        Table t{{"invariant", "value"}, {}};
        for (const auto& [name, p] : named) {
            r.data["invariants"][name] = reduce(*p).to_string();
            t.rows.push_back({name, reduce(*p).to_string()});
        }
        const bool identity =
            inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6 == mpz_class(1728) * inv.discriminant;
        r.data["identity_c4^3-c6^2=1728*Delta"] = identity;
        r.ok = identity;
        if (c.random > 0) {
            std::mt19937_64 rng(c.seed);
            std::uniform_int_distribution<long> coeff(-50, 50);
            auto ring = Ring::make({});
            int good = 0;
            for (int i = 0; i < c.random; ++i) {
                std::array<Polynomial, 5> a;
                for (auto& x : a)
                    x = Polynomial::constant(ring, coeff(rng));
                const auto v = invariants(make_curve(ring, a));
                good += v.c4 * v.c4 * v.c4 - v.c6 * v.c6 == mpz_class(1728) * v.discriminant;
            }
            r.data["random_curves"] = {{"count", c.random}, {"seed", c.seed}, {"identity_holds", good}};
            r.ok = r.ok && good == c.random;
        }
        r.table = t;
        return r;
    }
    if (c.sub == "fgl") {
        const int order = c.order ? c.order : 4;
        const auto f = fgl_from_curve(curve, order);
        Table t{{"i", "j", "coefficient"}, {}};
        json coeffs = json::array();
        for (int total = 1; total <= order; ++total)
            for (int i = total; i >= 0; --i) {
                const auto a = reduce(f.coefficient(i, total - i));
                if (a.is_zero())
                    continue;
                coeffs.push_back({{"i", i}, {"j", total - i}, {"coefficient", a.to_string()}});
                t.rows.push_back({std::to_string(i), std::to_string(total - i), a.to_string()});
            }
        r.data["order"] = order;
        r.data["coefficients"] = coeffs;
        r.table = t;
        return r;
    }
    if (c.sub == "nseries") {
        const int order = c.order ? c.order : 4;
        const auto f = fgl_from_curve(curve, order);
        const auto coeffs = series_coefficients(f, n_series(f, c.n));
        Table t{{"power", "coefficient"}, {}};
        json list = json::array();
        for (std::size_t k = 1; k < coeffs.size(); ++k) {
            const auto a = reduce(coeffs[k]);
            list.push_back({{"power", k}, {"coefficient", a.to_string()}});
            t.rows.push_back({std::to_string(k), a.to_string()});
        }
        r.data["n"] = c.n;
        r.data["order"] = order;
        r.data["coefficients"] = list;
        r.table = t;
        return r;
    }
    if (c.sub == "hasse") {
        const auto p = prime_or(c, 2);
        const auto h = hasse_coefficients(curve, p, c.height, c.order);
        Table t{{"i", "v_i"}, {}};
        json list = json::array();
        for (std::size_t i = 0; i < h.v.size(); ++i) {
            const auto v = reduce(h.v[i]);
            list.push_back({{"i", i}, {"v", v.to_string()}, {"v_mod_p", v.reduced_mod(p).to_string()}});
            t.rows.push_back({std::to_string(i), v.to_string()});
        }
        r.data["prime"] = p;
        r.data["order"] = h.order;
        r.data["v"] = list;
        if (!mod.empty())
            r.data["modulo"] = mod;
        r.table = t;
        return r;
    }
    if (c.sub == "landweber") {
        const auto p = prime_or(c, 2);
        const auto rep = landweber_report(curve, p, c.height, cutoff_or(c, 48), c.order);
        r.data["prime"] = p;
        r.data["v"] = poly_list(rep.v);
        r.data["regularity"] = regularity_json(rep.regularity);
        r.data["c4_power"] = rep.c4_power ? json(*rep.c4_power) : json(nullptr);
        r.data["discriminant_power"] = rep.discriminant_power ? json(*rep.discriminant_power) : json(nullptr);
        r.data["cusp_containment"] = rep.cusp_containment;
        r.data["notes"] = rep.notes;
        r.table = Table{{"check", "value"},
                        {{"regular", rep.regularity.regular ? "true" : "false"},
                         {"total_rank", std::to_string(rep.regularity.total_rank)},
                         {"cusp_containment", rep.cusp_containment ? "true" : "false"}}};
        return r;
    }
    throw UsageError("unknown curve verb '" + c.sub + "' (expected invariants, fgl, nseries, hasse, landweber)");
}

// ---- covers

inline Result run_fiber(const RunConfig& c)
{
    const auto p = prime_or(c, 2);
    const auto field = FieldSpec::parse(c.field);
    WeierstrassCurve curve;
    if (c.cusp) {
        auto ring = Ring::make({}, field.characteristic);
        std::array<Polynomial, 5> a;
        for (auto& x : a)
            x = Polynomial(ring);
        curve = make_curve(ring, a);
    } else {
        curve = parse_curve(c.curve, field.characteristic);
    }
    const auto fa = cover_fiber(curve, p, field, cutoff_or(c, 30));
    Result r;
    json rels = json::array();
    for (const auto& x : fa.relations)
        rels.push_back(x.to_string());
    r.data = {{"prime", p},
              {"field", field.to_string()},
              {"curve", curve.to_string()},
              {"rank", fa.rank()},
              {"basis", fa.basis_names()},
              {"relations", rels},
              {"associative", fa.associative},
              {"commutative", fa.commutative},
              {"unital", fa.unital},
              {"filtration_bound", fa.filtration_bound}};
    r.ok = fa.associative && fa.commutative && fa.unital;
    Table t{{"index", "basis"}, {}};
    for (std::size_t i = 0; i < fa.rank(); ++i)
        t.rows.push_back({std::to_string(i), fa.basis_names()[i]});
    r.table = t;
    return r;
}

inline TwoRowPage weighted_page(const RunConfig& c)
{
    const auto w = split(c.weights);
    if (w.size() != 2)
        throw UsageError("--weights needs two integers, e.g. 1,3");
    const auto [lo, hi] = parse_range(c.twists, {-6, 6});
    std::array<std::string, 2> names{"", ""};
    if (!c.names.empty()) {
        const auto n = split(c.names);
        if (n.size() != 2)
            throw UsageError("--names needs two names");
        names = {n[0], n[1]};
    }
    return cech_weighted_projective({std::stoi(w[0]), std::stoi(w[1])}, lo, hi, prime_or(c, 2), names);
}

inline Result run_cech(const RunConfig& c)
{
    const auto page = weighted_page(c);
    page.validate();
    return {page_to_json(page), page_table(page), std::nullopt, true};
}

inline Result run_descent(const RunConfig& c)
{
    const auto table = descent_assemble(weighted_page(c));
    return {homotopy_to_json(table), homotopy_table(table), std::nullopt, true};
}

inline Result run_tmf_mu(const RunConfig& c)
{
    TmfMuOptions opt;
    opt.prime = prime_or(c, 2);
    const auto [lo, hi] = parse_range(c.twists, {opt.twist_min, opt.twist_max});
    opt.twist_min = lo;
    opt.twist_max = hi;
    opt.stages = c.stages;
    opt.specialize = c.specialize;
    if (c.cutoff)
        opt.en_cutoff = *c.cutoff;
    const auto res = tmf_mu_page(opt);
    Result r{page_to_json(res.page), page_table(res.page), std::nullopt, true};
    r.data["certificate"] = regularity_json(res.certificate);
    r.data["en_cutoff"] = res.en_cutoff;
    r.data["demanded_en"] = res.demanded_en;
    return r;
}

// ---- hopf

inline BigradedChart hopf_chart(const RunConfig& c)
{
    const auto h = builtin_algebroid(c.presentation);
    const auto [lo, hi] = parse_range(c.twists, {-4, 4});
    if (c.s_max < 0)
        throw UsageError("--s-max must be nonnegative");
    return cobar_chart(h, c.extended ? Comodule::Kind::extended : Comodule::Kind::twist, lo, hi, c.s_max,
                       Coefficients::parse(c.coefficients), c.limit);
}

inline Result run_hopf(const RunConfig& c)
{
    Result r;
    if (c.sub == "synthesize") {
        const auto h = builtin_algebroid(c.presentation);
        json checks = json::array();
        Table t{{"axiom", "ok", "detail"}, {}};
        for (const auto& a : h.verify()) {
            checks.push_back({{"name", a.name}, {"ok", a.ok}, {"detail", a.detail}});
            t.rows.push_back({a.name, a.ok ? "true" : "false", a.detail});
            r.ok = r.ok && a.ok;
        }
        json eta = json::object(), delta = json::object(), chi = json::object();
        for (std::size_t a = 0; a < h.a_size(); ++a)
            eta[h.A->generator(a).name] = h.eta_R[a].to_string();
        for (std::size_t g = 0; g < h.g_size(); ++g) {
            const auto& name = h.gamma->generator(h.a_size() + g).name;
            delta[name] = h.delta[g].to_string();
            chi[name] = h.chi[g].to_string();
        }
        r.data = {{"name", h.name}, {"eta_R", eta}, {"delta", delta}, {"chi", chi},
                  {"axioms", checks}, {"notes", h.notes}};
        r.table = t;
        return r;
    }
    if (c.sub == "cobar") {
        const auto chart = hopf_chart(c);
        r.data = chart_to_json(chart);
        r.data["presentation"] = c.presentation;
        r.data["comodule"] = c.extended ? "extended" : "twist";
        r.table = chart_table(chart);
        r.svg = chart_svg(chart);
        if (c.extended) {
            // extended comodules are acyclic above s = 0
            for (const auto& [st, cell] : chart.cells)
                if (st.first > 0)
                    r.ok = false;
        }
        return r;
    }
    if (c.sub == "h0") {
        const auto h = builtin_algebroid(c.presentation);
        const auto [lo, hi] = parse_range(c.twists, {-4, 4});
        Table t{{"twist", "rank_oracle", "rank_cobar", "generators"}, {}};
        json rows = json::array();
        for (int j = lo; j <= hi; ++j) {
            const auto oracle = invariants_h0(h, j);
            const auto cobar = cobar_cohomology(h, {Comodule::Kind::twist, j}, 0, {}, c.limit);
            const bool agree = cobar.groups[0].rank == static_cast<unsigned long>(oracle.size()) &&
                               cobar.groups[0].torsion.empty();
            r.ok = r.ok && agree;
            rows.push_back({{"twist", j},
                            {"rank_oracle", oracle.size()},
                            {"rank_cobar", big(cobar.groups[0].rank)},
                            {"agree", agree},
                            {"generators", poly_list(oracle)}});
            std::vector<std::string> g;
            for (const auto& x : oracle)
                g.push_back(x.to_string());
            t.rows.push_back({std::to_string(j), std::to_string(oracle.size()), cobar.groups[0].rank.get_str(),
                              join(g)});
        }
        r.data = {{"presentation", c.presentation}, {"twists", rows}};
        r.table = t;
        return r;
    }
    if (c.sub == "kucp2") {
        const auto k = ku_cp2_involution();
        auto mat = [](const IntegerMatrix& m) {
            json rows = json::array();
            for (std::size_t i = 0; i < m.rows(); ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < m.cols(); ++j)
                    row.push_back(big(m(i, j)));
                rows.push_back(row);
            }
            return rows;
        };
        r.data = {{"basis", {"alpha", "beta"}},
                  {"matrix", mat(k.matrix)},
                  {"witness_basis", {"alpha", "-alpha + beta"}},
                  {"change", mat(k.change)},
                  {"in_witness_basis", mat(k.in_witness)},
                  {"is_involution", k.is_involution},
                  {"witness_is_basis", k.witness_is_basis},
                  {"witness_is_swap", k.witness_is_swap}};
        r.ok = k.is_involution && k.witness_is_basis && k.witness_is_swap;
        r.table = Table{{"check", "value"},
                        {{"is_involution", k.is_involution ? "true" : "false"},
                         {"witness_is_swap", k.witness_is_swap ? "true" : "false"}}};
        return r;
    }
    throw UsageError("unknown hopf verb '" + c.sub + "' (expected synthesize, cobar, h0, kucp2)");
}

// ---- steenrod

inline Polynomial parse_steenrod(const DualSteenrod& a, const std::string& text)
{
    // xibarK is expanded to its conjugate before parsing
    static const std::regex bar(R"(xibar(\d+))");
    std::string expanded;
    auto begin = std::sregex_iterator(text.begin(), text.end(), bar);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        expanded += text.substr(last, static_cast<std::size_t>(it->position()) - last);
        expanded += "(" + a.conj_xi(std::stoi((*it)[1])).to_string() + ")";
        last = static_cast<std::size_t>(it->position() + it->length());
    }
    expanded += text.substr(last);
    return parse_polynomial(a.ring(), expanded);
}

inline SubalgebraSpec named_spec(const DualSteenrod& a, const std::string& name)
{
    if (name == "ko")
        return ko_homology(a);
    if (name == "ku")
        return bp_n_homology(a, 1);
    if (name == "tmf")
        return tmf_homology(a);
    if (name == "hz" || name == "HZ")
        return bp_n_homology(a, 0);
    if (name == "squares")
        return squares_spec(a);
    if (name == "trivial")
        return trivial_spec(a);
    if (name == "A")
        return whole_algebra(a);
    if (name.rfind("bp:", 0) == 0)
        return bp_n_homology(a, std::stoi(name.substr(3)));
    throw UsageError("unknown subalgebra '" + name + "' (expected ko, ku, tmf, hz, bp:<n>, squares, trivial, A)");
}

inline json closure_json(const ClosureReport& c)
{
    json out{{"name", c.name}, {"closed", c.closed}, {"checked_through", c.cutoff}, {"monomials_checked", c.checked}};
    if (!c.closed)
        out["witness"] = {{"element", *c.witness_element}, {"left", *c.witness_left}, {"right", *c.witness_right}};
    return out;
}

inline json freeness_json(const FreenessReport& f)
{
    return {{"big", f.big},
            {"small", f.small},
            {"checked_through", f.cutoff},
            {"expected_cells", f.expected_cells},
            {"found_cells", f.found_cells},
            {"lifts", f.lifts},
            {"series_identity", f.series_identity},
            {"contained", f.contained},
            {"generated", f.generated},
            {"free", f.free},
            {"ok", f.ok()},
            {"failure", f.failure}};
}

inline json uniqueness_json(const UniquenessReport& u)
{
    json steps = json::array();
    for (const auto& s : u.steps)
        steps.push_back({{"degree", s.degree},
                         {"target_dim", s.target_dim},
                         {"candidate_dim", s.candidate_dim},
                         {"forced", s.forced},
                         {"matches", s.matches},
                         {"candidates", s.candidates}});
    json decoys = json::array();
    for (const auto& d : u.decoys)
        decoys.push_back({{"element", d.element},
                          {"degree", d.degree},
                          {"excluded", d.excluded},
                          {"witness", d.excluded ? json{{"left", d.left}, {"right", d.right}} : json(nullptr)}});
    return {{"target", u.target},
            {"depth", u.depth},
            {"lowest_degree", u.lowest_degree},
            {"forced_generator", u.forced_generator ? json(*u.forced_generator) : json(nullptr)},
            {"steps", steps},
            {"decoys", decoys},
            {"ok", u.ok()}};
}

inline Result run_steenrod(const RunConfig& c)
{
    if (c.prime && *c.prime != 2)
        throw UsageError("the dual Steenrod algebra is implemented at p = 2 only");
    const int cutoff = cutoff_or(c, 64);
    const DualSteenrod a(cutoff);
    Result r;
    r.data["checked_through"] = cutoff;

    if (c.sub == "conjugate" || c.sub == "coproduct") {
        if (c.element.empty())
            throw UsageError("--element is required");
        const auto x = parse_steenrod(a, c.element);
        const auto y = c.sub == "conjugate" ? a.conjugate(x) : a.coproduct(x);
        r.data["element"] = x.to_string();
        r.data[c.sub] = y.to_string();
        if (c.sub == "conjugate") {
            r.data["chi_squared_is_identity"] = a.conjugate(y) == x;
            r.ok = a.conjugate(y) == x;
        }
        r.table = Table{{"element", c.sub}, {{x.to_string(), y.to_string()}}};
        return r;
    }
    if (c.sub == "verify") {
        const std::string target = c.target.empty() ? "tmf" : c.target;
        Table t{{"check", "ok", "detail"}, {}};
        auto record = [&](const std::string& name, bool ok, const std::string& detail, json body) {
            r.data["checks"][name] = std::move(body);
            t.rows.push_back({name, ok ? "true" : "false", detail});
            r.ok = r.ok && ok;
        };
        bool antipode = true;
        for (const auto& d : a.antipode_defects())
            antipode = antipode && d.is_zero();
        record("antipode", antipode, "k <= " + std::to_string(a.generators()),
               {{"holds", antipode}, {"k_max", a.generators()}, {"xibar2", a.conj_xi(std::min(2, a.generators())).to_string()}});

        const auto spec = named_spec(a, target);
        r.data["target"] = target;
        r.data["generators"] = json::array();
        for (const auto& g : spec.generators)
            r.data["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
        const auto closure = comodule_closure_check(a, spec);
        record("closure", closure.closed, std::to_string(closure.checked) + " monomials", closure_json(closure));

        auto freeness = [&](const SubalgebraSpec& small, std::vector<int> cells) {
            const auto f = freeness_rank_check(a, spec, small, std::move(cells));
            std::vector<std::string> found;
            for (int d : f.found_cells)
                found.push_back(std::to_string(d));
            record("freeness_over_" + small.name, f.ok(), "cells {" + join(found) + "}", freeness_json(f));
        };
        auto probe = [&](std::vector<Polynomial> decoys) {
            const auto u = uniqueness_probe(a, whole_algebra(a), spec, 16, decoys);
            record("uniqueness", u.ok(), "forced " + u.forced_generator.value_or("nothing"), uniqueness_json(u));
        };
        if (target == "ku")
            freeness(ko_homology(a), {0, 2});
        if (target == "bp:2")
            freeness(tmf_homology(a), {0, 2, 4, 6, 6, 8, 10, 12});
        if (target == "ko")
            probe({});
        if (target == "tmf") {
            probe({a.xi(1).pow(6) * a.conj_xi(2).pow(2)});
            const auto q = quotient_pattern(a, spec);
            json coeffs = json::array();
            for (int d = 0; d <= q.top_degree(); ++d)
                coeffs.push_back(big(q[d]));
            const bool ok = q.nonnegative() && q.total() == 64 && q.top_degree() == 23;
            record("pattern_quotient", ok, "total " + q.total().get_str() + ", top degree " +
                                               std::to_string(q.top_degree()),
                   {{"coefficients", coeffs}, {"total", big(q.total())}, {"top_degree", q.top_degree()},
                    {"nonnegative", q.nonnegative()}});
        }
        r.table = t;
        return r;
    }
    if (c.sub == "primitives") {
        PrimitiveReport p;
        const int through = cutoff;
        if (c.of == "A")
            p = hopf_primitives(a, through);
        else if (c.of.rfind("A/", 0) == 0)
            p = quotient_primitives(a, named_spec(a, c.of.substr(2)), through);
        else
            p = subcomodule_primitives(a, named_spec(a, c.of), through);
        Table t{{"degree", "representative"}, {}};
        json classes = json::array();
        for (const auto& [d, reps] : p.classes)
            for (const auto& x : reps) {
                classes.push_back({{"degree", d}, {"representative", x}});
                t.rows.push_back({std::to_string(d), x});
            }
        r.data["of"] = p.label;
        r.data["kind"] = p.kind == PrimitiveKind::hopf ? "hopf" : p.kind == PrimitiveKind::quotient ? "quotient"
                                                                                                      : "comodule";
        r.data["classes"] = classes;
        r.table = t;
        return r;
    }
    throw UsageError("unknown steenrod verb '" + c.sub + "' (expected conjugate, coproduct, verify, primitives)");
}

// ---- chart

inline Result run_chart(const RunConfig& c)
{
    if (c.sub != "render")
        throw UsageError("unknown chart verb '" + c.sub + "' (expected render)");
    BigradedChart chart;
    std::vector<ChartArrow> arrows;
    if (!c.input.empty()) {
        std::ifstream f(c.input);
        if (!f)
            throw UsageError("cannot read " + c.input);
        const auto j = json::parse(f);
        chart = chart_from_json(j);
        for (const auto& a : j.value("arrows", json::array()))
            arrows.push_back({a.at("s0").get<int>(), a.at("t0").get<int>(), a.at("s1").get<int>(),
                              a.at("t1").get<int>()});
    } else {
        chart = hopf_chart(c);
    }
    Result r{chart_to_json(chart), chart_table(chart), chart_svg(chart, arrows), true};
    return r;
}

} // namespace detail

inline Result run(const RunConfig& c)
{
    if (c.verb == "curve")
        return detail::run_curve(c);
    if (c.verb == "cover") {
        if (c.sub != "fiber")
            throw UsageError("unknown cover verb '" + c.sub + "' (expected fiber)");
        return detail::run_fiber(c);
    }
    if (c.verb == "cech")
        return detail::run_cech(c);
    if (c.verb == "descent")
        return detail::run_descent(c);
    if (c.verb == "tmf-mu")
        return detail::run_tmf_mu(c);
    if (c.verb == "hopf")
        return detail::run_hopf(c);
    if (c.verb == "steenrod")
        return detail::run_steenrod(c);
    if (c.verb == "chart")
        return detail::run_chart(c);
    throw UsageError("unknown verb '" + c.verb + "'");
}

/// Serialized output in the requested format.
inline std::string render(const Result& r, const std::string& format)
{
    if (format == "json")
        return r.data.dump(2) + "\n";
    if (format == "tsv") {
        if (!r.table)
            throw UsageError("this command has no tabular form");
        return to_tsv(*r.table);
    }
    if (format == "svg") {
        if (!r.svg)
            throw UsageError("only chart-producing commands render SVG");
        return *r.svg;
    }
    throw UsageError("unknown format '" + format + "' (expected json, tsv, svg)");
}

/// Relative output paths are placed under $TMFALG_OUTPUT_DIR when it is set.
inline std::filesystem::path output_path(const std::string& output)
{
    std::filesystem::path p(output);
    if (p.is_relative())
        if (const char* dir = std::getenv("TMFALG_OUTPUT_DIR"); dir && *dir)
            return std::filesystem::path(dir) / p;
    return p;
}

/// Runs, writes, and returns the exit status: 0 ok, 1 a check failed, 2 usage or engine error.
inline int execute(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    try {
        const auto r = run(c);
        const auto text = render(r, c.format);
        if (c.output.empty())
            out << text;
        else
            write_atomic(output_path(c.output), text);
        if (!r.ok)
            err << "tmfalg: a check failed in '" << c.verb << (c.sub.empty() ? "" : " " + c.sub) << "'\n";
        return r.ok ? 0 : 1;
    } catch (const UsageError& e) {
        err << "tmfalg: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "tmfalg: " << c.verb << (c.sub.empty() ? "" : " " + c.sub) << ": " << e.what() << "\n";
        return 2;
    }
}

} // namespace tmfalg::cli
