#include <iostream>

#include <CLI11.hpp>

#include "tmfalg/cli/dispatch.hpp"

using tmfalg::cli::RunConfig;

namespace {

void add_common(CLI::App* app, RunConfig& c)
{
    app->add_option("--format", c.format, "json, tsv or svg")->check(CLI::IsMember({"json", "tsv", "svg"}));
    app->add_option("-o,--output", c.output, "output file (relative paths go under $TMFALG_OUTPUT_DIR)");
    app->add_option("--cutoff", c.cutoff, "weight or degree cutoff");
    app->add_option("--prime", c.prime, "prime");
    app->add_option("--seed", c.seed, "seed for randomized checks");
}

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, RunConfig& c,
               const std::string& verb, const std::string& sub)
{
    auto* app = parent->add_subcommand(name, help);
    add_common(app, c);
    app->callback([&c, verb, sub] {
        c.verb = verb;
        c.sub = sub;
    });
    return app;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact algebra for topological modular forms: curves, covers, descent, Hopf algebroids, "
                 "dual Steenrod algebra"};
    app.require_subcommand(1);
    RunConfig c;

    auto* curve = app.add_subcommand("curve", "Weierstrass curves and their formal groups");
    curve->require_subcommand(1);
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"invariants", "b_i, c4, c6, Delta"},
             {"fgl", "formal group law coefficients"},
             {"nseries", "[n]-series coefficients"},
             {"hasse", "v_i = coefficient of z^(p^i) in [p](z)"},
             {"landweber", "regularity of (p, v_1, .., v_h) and cusp containment"}}) {
        auto* s = leaf(curve, name, help, c, "curve", name);
        s->add_option("--curve", c.curve, "a1,a2,a3,a4,a6");
        s->add_option("--n", c.n, "multiplier for nseries");
        s->add_option("--order", c.order, "truncation order");
        s->add_option("--height", c.height, "largest i for hasse / landweber");
        s->add_option("--modulo", c.modulo, "generators set to zero in the report, e.g. a2");
        s->add_option("--random", c.random, "also check c4^3 - c6^2 = 1728 Delta on this many random curves");
    }

    auto* cover = app.add_subcommand("cover", "covers of the moduli stack");
    cover->require_subcommand(1);
    auto* fiber = leaf(cover, "fiber", "fiber of the cover over a curve", c, "cover", "fiber");
    fiber->add_flag("--cusp", c.cusp, "use the cuspidal curve y^2 = x^3");
    fiber->add_option("--curve", c.curve, "a1,a2,a3,a4,a6 (constants)");
    fiber->add_option("--field", c.field, "Q or Fp");

    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"cech", "two-row Cech page of a weighted projective line"},
             {"descent", "homotopy groups assembled from the Cech page"}}) {
        auto* s = leaf(&app, name, help, c, name, "");
        s->add_option("--weights", c.weights, "w1,w2");
        s->add_option("--twists", c.twists, "range a..b");
        s->add_option("--names", c.names, "names of the two coordinates");
    }

    auto* mu = leaf(&app, "tmf-mu", "two-row page for Tmf smash MU", c, "tmf-mu", "");
    mu->add_option("--twists", c.twists, "range a..b");
    mu->add_option("--stages", c.stages, "Koszul stages");
    mu->add_flag("--specialize", c.specialize, "set a2 = a4 = a6 = e_n = 0");

    auto* hopf = app.add_subcommand("hopf", "Hopf algebroids and cobar complexes");
    hopf->require_subcommand(1);
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"synthesize", "structure maps and axiom checks"},
             {"cobar", "cobar cohomology chart"},
             {"h0", "H^0 against the invariants oracle"},
             {"kucp2", "the involution on KU^0(CP^2)"}}) {
        auto* s = leaf(hopf, name, help, c, "hopf", name);
        s->add_option("--presentation", c.presentation, "weierstrass, mqd or z2_group");
        s->add_option("--twists", c.twists, "range a..b");
        s->add_option("--s-max", c.s_max, "largest cohomological degree");
        s->add_option("--coefficients", c.coefficients, "Z, Z/p or Z_(p)");
        s->add_flag("--extended", c.extended, "use the extended comodules");
        s->add_option("--limit", c.limit, "largest cochain basis");
    }

    auto* st = app.add_subcommand("steenrod", "mod 2 dual Steenrod algebra");
    st->require_subcommand(1);
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"conjugate", "Hopf conjugate of an element"},
             {"coproduct", "coproduct of an element"},
             {"verify", "closure, freeness and uniqueness checks for a homology"},
             {"primitives", "primitives of A, A/C or a subcomodule"}}) {
        auto* s = leaf(st, name, help, c, "steenrod", name);
        s->add_option("--element", c.element, "polynomial in xi1, xi2, ... (xibarK allowed)");
        s->add_option("--target", c.target, "ko, ku, tmf, hz or bp:<n>");
        s->add_option("--of", c.of, "A, A/<subalgebra>, or a subalgebra name");
    }

    auto* chart = app.add_subcommand("chart", "chart rendering");
    chart->require_subcommand(1);
    auto* render = leaf(chart, "render", "render a chart (from --input JSON or a cobar run)", c, "chart", "render");
    render->add_option("--input", c.input, "chart JSON as written by hopf cobar");
    render->add_option("--presentation", c.presentation, "weierstrass, mqd or z2_group");
    render->add_option("--twists", c.twists, "range a..b");
    render->add_option("--s-max", c.s_max, "largest cohomological degree");
    render->add_option("--coefficients", c.coefficients, "Z, Z/p or Z_(p)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return tmfalg::cli::execute(c, std::cout, std::cerr);
}
