#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmfalg/covers/cech.hpp"
#include "tmfalg/hopf/cobar.hpp"

namespace tmfalg::cli {

using json = nlohmann::json;

/// Header plus rows of already formatted cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::string to_tsv(const Table& t)
{
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += '\t';
            for (char c : cells[i])
                out += (c == '\t' || c == '\n') ? ' ' : c;
        }
        out += '\n';
    };
    line(t.header);
    for (const auto& r : t.rows)
        line(r);
    return out;
}

inline json big(const mpz_class& z)
{
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

inline mpz_class parse_big(const json& j)
{
    if (j.is_number_integer())
        return mpz_class(static_cast<long>(j.get<long long>()));
    if (j.is_string())
        return mpz_class(j.get<std::string>());
    throw AlgebraError("expected an integer, got " + j.dump());
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ")
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? sep : "") + xs[i];
    return out;
}

inline std::string join(const std::vector<mpz_class>& xs, const std::string& sep = ",")
{
    std::vector<std::string> s;
    for (const auto& x : xs)
        s.push_back(x.get_str());
    return join(s, sep);
}

// ---- charts

inline json chart_to_json(const BigradedChart& c)
{
    json cells = json::array();
    for (const auto& [st, cell] : c.cells) {
        json t = json::array();
        for (const auto& o : cell.torsion)
            t.push_back(big(o));
        cells.push_back({{"s", st.first}, {"t", st.second}, {"rank", big(cell.rank)}, {"torsion", t}});
    }
    return {{"coefficients", c.coefficients},
            {"s_max", c.s_max},
            {"t_min", c.t_min},
            {"t_max", c.t_max},
            {"cells", cells}};
}

inline BigradedChart chart_from_json(const json& j)
{
    BigradedChart c;
    c.coefficients = j.value("coefficients", std::string("Z"));
    c.s_max = j.at("s_max").get<int>();
    c.t_min = j.at("t_min").get<int>();
    c.t_max = j.at("t_max").get<int>();
    for (const auto& cell : j.at("cells")) {
        ChartCell v;
        v.rank = parse_big(cell.at("rank"));
        for (const auto& o : cell.value("torsion", json::array()))
            v.torsion.push_back(parse_big(o));
        c.set(cell.at("s").get<int>(), cell.at("t").get<int>(), v);
    }
    return c;
}

inline Table chart_table(const BigradedChart& c)
{
    Table t{{"s", "t", "t_minus_s", "rank", "torsion"}, {}};
    for (const auto& [st, cell] : c.cells)
        t.rows.push_back({std::to_string(st.first), std::to_string(st.second), std::to_string(st.second - st.first),
                          cell.rank.get_str(), join(cell.torsion)});
    return t;
}

/// A differential or extension arrow between chart cells, given as input data.
struct ChartArrow {
    int s0, t0, s1, t1;
};

/// x = t - s, y = s. Box per free summand, dot per Z/2, labeled dot for other orders.
inline std::string chart_svg(const BigradedChart& c, const std::vector<ChartArrow>& arrows = {})
{
    constexpr int unit = 40, margin = 40;
    int x_min = c.t_min - c.s_max, x_max = c.t_max;
    const int width = (x_max - x_min) * unit + 2 * margin;
    const int height = c.s_max * unit + 2 * margin;
    auto px = [&](int x) { return margin + (x - x_min) * unit; };
    auto py = [&](int s) { return height - margin - s * unit; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    o << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int x = x_min; x <= x_max; ++x)
        o << "<line x1=\"" << px(x) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x) << "\" y2=\"" << py(c.s_max)
          << "\"/>\n";
    for (int s = 0; s <= c.s_max; ++s)
        o << "<line x1=\"" << px(x_min) << "\" y1=\"" << py(s) << "\" x2=\"" << px(x_max) << "\" y2=\"" << py(s)
          << "\"/>\n";
    o << "</g>\n<g font-family=\"monospace\" font-size=\"10\" fill=\"#666666\">\n";
    for (int x = x_min; x <= x_max; ++x)
        o << "<text x=\"" << px(x) - 3 << "\" y=\"" << py(0) + 15 << "\">" << x << "</text>\n";
    for (int s = 0; s <= c.s_max; ++s)
        o << "<text x=\"" << margin - 20 << "\" y=\"" << py(s) + 3 << "\">" << s << "</text>\n";
    o << "</g>\n";

    o << "<g stroke=\"black\" stroke-width=\"1.5\">\n";
    for (const auto& a : arrows)
        o << "<line x1=\"" << px(a.t0 - a.s0) << "\" y1=\"" << py(a.s0) << "\" x2=\"" << px(a.t1 - a.s1)
          << "\" y2=\"" << py(a.s1) << "\"/>\n";
    o << "</g>\n";

    for (const auto& [st, cell] : c.cells) {
        const int cx = px(st.second - st.first), cy = py(st.first);
        o << "<g data-s=\"" << st.first << "\" data-t=\"" << st.second << "\">\n";
        // glyphs spread horizontally around the lattice point
        std::vector<std::string> glyphs;
        if (cell.rank.fits_slong_p())
            for (long i = 0; i < cell.rank.get_si() && i < 8; ++i)
                glyphs.push_back("box");
        for (const auto& t : cell.torsion)
            glyphs.push_back(t == 2 ? "dot" : t.get_str());
        const int n = static_cast<int>(glyphs.size());
        for (int i = 0; i < n; ++i) {
            const int gx = cx + (2 * i - (n - 1)) * 6;
            if (glyphs[i] == "box")
                o << "<rect x=\"" << gx - 5 << "\" y=\"" << cy - 5
                  << "\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"black\"/>\n";
            else if (glyphs[i] == "dot")
                o << "<circle cx=\"" << gx << "\" cy=\"" << cy << "\" r=\"4\" fill=\"black\"/>\n";
            else
                o << "<circle cx=\"" << gx << "\" cy=\"" << cy << "\" r=\"4\" fill=\"black\"/>\n<text x=\"" << gx + 5
                  << "\" y=\"" << cy - 5 << "\" font-family=\"monospace\" font-size=\"9\">" << glyphs[i]
                  << "</text>\n";
        }
        if (!cell.rank.fits_slong_p() || cell.rank > 8)
            o << "<text x=\"" << cx + 6 << "\" y=\"" << cy + 12 << "\" font-family=\"monospace\" font-size=\"9\">"
              << cell.rank.get_str() << "</text>\n";
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

// ---- two-row pages and homotopy tables

inline json page_to_json(const TwoRowPage& p)
{
    json entries = json::array();
    for (const auto& [j, e] : p.entries) {
        json stages = json::array();
        for (const auto& r : e.h1_stage_ranks)
            stages.push_back(big(r));
        json row{{"twist", j},
                 {"h0", {{"rank", big(e.h0_rank)}, {"generators", e.h0}}},
                 {"h1", {{"rank", big(e.h1_rank)}, {"generators", e.h1}}},
                 {"generators_listed", e.generators_listed},
                 {"stable", e.stable}};
        if (!e.h1_torsion.empty()) {
            json t = json::array();
            for (const auto& o : e.h1_torsion)
                t.push_back(big(o));
            row["h1"]["torsion"] = t;
        }
        if (!stages.empty())
            row["h1"]["stage_ranks"] = stages;
        entries.push_back(row);
    }
    return {{"base", p.base}, {"label", p.label}, {"notes", p.notes}, {"entries", entries}};
}

inline Table page_table(const TwoRowPage& p)
{
    Table t{{"twist", "h0_rank", "h1_rank", "h0", "h1"}, {}};
    for (const auto& [j, e] : p.entries)
        t.rows.push_back({std::to_string(j), e.h0_rank.get_str(), e.h1_rank.get_str(),
                          e.generators_listed ? join(e.h0) : "", e.generators_listed ? join(e.h1) : ""});
    return t;
}

inline json homotopy_to_json(const HomotopyTable& h)
{
    json groups = json::array();
    for (const auto& [d, g] : h.groups) {
        json t = json::array();
        for (const auto& o : g.torsion)
            t.push_back(big(o));
        groups.push_back({{"degree", d}, {"rank", big(g.rank)}, {"torsion", t}, {"generators", g.generators}});
    }
    return {{"base", h.base}, {"label", h.label}, {"graded_rank_only", h.graded_rank_only}, {"groups", groups}};
}

inline Table homotopy_table(const HomotopyTable& h)
{
    Table t{{"degree", "rank", "torsion", "generators"}, {}};
    for (const auto& [d, g] : h.groups)
        t.rows.push_back({std::to_string(d), g.rank.get_str(), join(g.torsion), join(g.generators, "; ")});
    return t;
}

// ---- files

/// Writes through a temporary file in the same directory and renames it into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f)
            throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path);
}

} // namespace tmfalg::cli
