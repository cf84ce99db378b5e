#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tmfalg/algebra/linalg.hpp"
#include "tmfalg/algebra/matrix.hpp"
#include "tmfalg/hopf/algebroid.hpp"

namespace tmfalg {

/// Z (p = 0), Z/p, or Z_(p) (local: torsion orders keep only their p-part).
struct Coefficients {
    std::uint64_t p = 0;
    bool local = false;

    static Coefficients parse(const std::string& text)
    {
        if (text == "Z")
            return {};
        auto prime_of = [&](const std::string& digits) {
            auto p = std::stoull(digits);
            if (!is_prime(p))
                throw AlgebraError("coefficients '" + text + "': " + digits + " is not prime");
            return p;
        };
        if (text.rfind("Z/", 0) == 0)
            return {prime_of(text.substr(2)), false};
        if (text.rfind("Z_(", 0) == 0 && text.back() == ')')
            return {prime_of(text.substr(3, text.size() - 4)), true};
        throw AlgebraError("unknown coefficients '" + text + "' (expected Z, Z/p or Z_(p))");
    }

    std::string to_string() const
    {
        if (!p)
            return "Z";
        return local ? "Z_(" + std::to_string(p) + ")" : "Z/" + std::to_string(p);
    }
};

struct ChartCell {
    mpz_class rank = 0;              // free rank (dimension over Z/p)
    std::vector<mpz_class> torsion;  // cyclic orders, each > 1

    bool empty() const { return rank == 0 && torsion.empty(); }
    friend bool operator==(const ChartCell&, const ChartCell&) = default;
};

/// E_2^{s,t}; cells outside the window or empty are not stored.
struct BigradedChart {
    int s_max = 0;
    int t_min = 0;
    int t_max = 0;
    std::string coefficients = "Z";
    std::map<std::pair<int, int>, ChartCell> cells; // (s, t)

    void set(int s, int t, const ChartCell& c)
    {
        if (s < 0 || s > s_max || t < t_min || t > t_max)
            throw AlgebraError("chart cell (" + std::to_string(s) + ", " + std::to_string(t) +
                               ") is outside the window");
        for (const auto& o : c.torsion)
            if (o <= 1)
                throw AlgebraError("torsion orders must exceed 1");
        if (c.empty())
            cells.erase({s, t});
        else
            cells[{s, t}] = c;
    }

    ChartCell at(int s, int t) const
    {
        auto it = cells.find({s, t});
        return it == cells.end() ? ChartCell{} : it->second;
    }

    friend bool operator==(const BigradedChart&, const BigradedChart&) = default;
};

/// omega^j: A with coaction u^j; extended: Gamma itself (coaction Delta),
/// restricted to the weight of omega^j.
struct Comodule {
    enum class Kind { twist, extended };
    Kind kind = Kind::twist;
    int j = 0;

    std::string to_string() const
    {
        return (kind == Kind::twist ? "omega^" : "Gamma(x)omega^") + std::to_string(j);
    }
};

struct CobarResult {
    std::vector<ChartCell> groups;            // H^s for s = 0..s_max
    std::vector<std::size_t> cochain_ranks;   // normalized cochains per s = 0..s_max+1
    bool d_squared_zero = true;
};

namespace detail {

class CobarComplex {
public:
    CobarComplex(const HopfAlgebroid& h, Comodule m, std::size_t limit) : h_(h), m_(m), limit_(limit) {}

    int weight() const { return m_.j * h_.omega_weight; }
    int blocks(int s) const { return m_.kind == Comodule::Kind::twist ? s : s + 1; }
    RingPtr ring(int s) const { return h_.tensor(blocks(s)); }

    const std::vector<Monomial>& basis(int s)
    {
        if (auto it = bases_.find(s); it != bases_.end())
            return it->second;
        auto T = ring(s);
        std::vector<int> bound(T->size(), -1); // -1: limited by weight
        for (std::size_t v = 0; v < T->size(); ++v) {
            if (v < h_.a_size()) {
                if (T->weight(v) <= 0)
                    throw AlgebraError("cobar needs positive weights on A");
                continue;
            }
            const std::size_t g = (v - h_.a_size()) % h_.g_size();
            if (h_.idempotent[g])
                bound[v] = 1;
            else if (T->weight(v) <= 0)
                throw AlgebraError("non-idempotent Gamma generator of weight <= 0");
        }
        std::vector<Monomial> out;
        std::vector<int> e(T->size(), 0);
        std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t v, std::int64_t left) {
            if (v == T->size()) {
                if (left != 0)
                    return;
                for (int b = 1; b <= s; ++b) {
                    bool any = false;
                    for (std::size_t g = 0; g < h_.g_size(); ++g)
                        any = any || e[h_.g_index(g, b)] > 0;
                    if (!any)
                        return;
                }
                out.push_back(Monomial::from_exponents(*T, e));
                if (out.size() > limit_)
                    throw AlgebraError("cobar window too large: more than " + std::to_string(limit_) +
                                       " cochains in degree " + std::to_string(s));
                return;
            }
            const int w = T->weight(v);
            for (int x = 0; (bound[v] < 0 || x <= bound[v]) && std::int64_t(x) * w <= left; ++x) {
                e[v] = x;
                rec(v + 1, left - std::int64_t(x) * w);
                if (w == 0 && bound[v] < 0)
                    break;
            }
            e[v] = 0;
        };
        rec(0, weight());
        std::sort(out.begin(), out.end());
        auto& index = index_[s];
        for (std::size_t i = 0; i < out.size(); ++i)
            index[out[i]] = i;
        return bases_.emplace(s, std::move(out)).first->second;
    }

    Polynomial differential(const Polynomial& x, int s)
    {
        auto& faces = faces_[s];
        const int nb = blocks(s);
        if (faces.empty())
            for (int i = 0; i <= nb; ++i)
                faces.push_back(h_.coface(nb, i));
        Polynomial out(h_.tensor(nb + 1));
        for (int i = 0; i <= nb; ++i)
            out += faces[i](x) * mpz_class(i % 2 ? -1 : 1);
        if (m_.kind == Comodule::Kind::twist) {
            auto u = h_.place(h_.omega_power(m_.j), nb + 1, nb + 1);
            out += (x.embedded(h_.tensor(nb + 1)) * u) * mpz_class((nb + 1) % 2 ? -1 : 1);
        }
        return h_.normal_form(out);
    }

    /// Coordinates of a cochain in degree s (throws if not normalized).
    std::map<std::size_t, mpz_class> coordinates(const Polynomial& p, int s)
    {
        basis(s);
        const auto& index = index_[s];
        std::map<std::size_t, mpz_class> out;
        for (const auto& [m, c] : p.terms()) {
            auto it = index.find(m);
            if (it == index.end())
                throw AlgebraError("cobar differential left the normalized complex at " + m.to_string(*p.ring()));
            out[it->second] = c;
        }
        return out;
    }

    /// Rows: d of each basis element of degree s in coordinates of degree s+1.
    const std::vector<std::map<std::size_t, mpz_class>>& matrix(int s)
    {
        if (auto it = matrices_.find(s); it != matrices_.end())
            return it->second;
        std::vector<std::map<std::size_t, mpz_class>> rows;
        const auto& B = basis(s);
        basis(s + 1);
        auto T = ring(s);
        for (const auto& m : B)
            rows.push_back(coordinates(differential(Polynomial::monomial(T, m), s), s + 1));
        return matrices_.emplace(s, std::move(rows)).first->second;
    }

private:
    const HopfAlgebroid& h_;
    Comodule m_;
    std::size_t limit_;
    std::map<int, std::vector<Monomial>> bases_;
    std::map<int, std::map<Monomial, std::size_t>> index_;
    std::map<int, std::vector<RingMap>> faces_;
    std::map<int, std::vector<std::map<std::size_t, mpz_class>>> matrices_;
};

struct RankData {
    std::size_t rank = 0;
    std::vector<mpz_class> torsion;
};

inline RankData differential_rank(const std::vector<std::map<std::size_t, mpz_class>>& rows, std::size_t cols,
                                  const Coefficients& k)
{
    RankData out;
    if (rows.empty() || cols == 0)
        return out;
    if (k.p && !k.local) {
        PrimeField F(k.p);
        std::vector<std::vector<PrimeField::Element>> dense(rows.size(),
                                                            std::vector<PrimeField::Element>(cols, F.zero()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (const auto& [j, c] : rows[i])
                dense[i][j] = F.from_integer(c);
        out.rank = field_rank(F, dense, cols);
        return out;
    }
    SparseIntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [j, c] : rows[i])
            m.add(i, j, c);
    const auto factors = invariant_factors(std::move(m));
    out.rank = factors.size();
    for (auto f : factors) {
        if (k.local)
            f = prime_part(f, k.p);
        if (f > 1)
            out.torsion.push_back(f);
    }
    return out;
}

} // namespace detail

/// Normalized cobar cohomology H^s(M) for s = 0..s_max.
inline CobarResult cobar_cohomology(const HopfAlgebroid& h, const Comodule& m, int s_max,
                                    const Coefficients& k = {}, std::size_t limit = 20000)
{
    if (s_max < 0)
        throw AlgebraError("s_max must be nonnegative");
    detail::CobarComplex C(h, m, limit);
    CobarResult out;
    std::vector<detail::RankData> ranks;
    for (int s = 0; s <= s_max + 1; ++s)
        out.cochain_ranks.push_back(C.basis(s).size());
    for (int s = 0; s <= s_max; ++s)
        ranks.push_back(detail::differential_rank(C.matrix(s), out.cochain_ranks[s + 1], k));
    // d o d = 0 on every assembled degree
    for (int s = 0; s + 1 <= s_max; ++s) {
        const auto& first = C.matrix(s);
        const auto& second = C.matrix(s + 1);
        for (const auto& row : first) {
            std::map<std::size_t, mpz_class> acc;
            for (const auto& [j, c] : row)
                for (const auto& [l, v] : second[j])
                    acc[l] += c * v;
            for (const auto& [l, v] : acc)
                if (v != 0)
                    out.d_squared_zero = false;
        }
    }
    if (!out.d_squared_zero)
        throw AlgebraError("cobar differential does not square to zero for " + m.to_string());
    for (int s = 0; s <= s_max; ++s) {
        ChartCell cell;
        std::size_t incoming = s ? ranks[s - 1].rank : 0;
        cell.rank = static_cast<unsigned long>(out.cochain_ranks[s] - ranks[s].rank - incoming);
        if (s)
            cell.torsion = ranks[s - 1].torsion;
        out.groups.push_back(std::move(cell));
    }
    return out;
}

/// Chart of H^s(omega^j) (or of the extended comodule) at t = 2j.
inline BigradedChart cobar_chart(const HopfAlgebroid& h, Comodule::Kind kind, int j_min, int j_max, int s_max,
                                 const Coefficients& k = {}, std::size_t limit = 20000)
{
    BigradedChart chart;
    chart.s_max = s_max;
    chart.t_min = 2 * j_min;
    chart.t_max = 2 * j_max;
    chart.coefficients = k.to_string();
    for (int j = j_min; j <= j_max; ++j) {
        auto res = cobar_cohomology(h, {kind, j}, s_max, k, limit);
        for (int s = 0; s <= s_max; ++s)
            chart.set(s, 2 * j, res.groups[s]);
    }
    return chart;
}

/// Oracle for H^0(omega^j): kernel of a |-> eta_R(a) - u^j a on the weight
/// piece of A, by integer linear algebra. Returns a Z-basis.
inline std::vector<Polynomial> invariants_h0(const HopfAlgebroid& h, int j)
{
    const int w = j * h.omega_weight;
    std::vector<Monomial> source;
    if (w == 0)
        source.push_back(Monomial{});
    else if (w > 0)
        source = monomials_of_weight(*h.A, w);
    if (source.empty())
        return {};
    const auto u = h.omega_power(j);
    std::vector<Polynomial> images;
    std::map<Monomial, std::size_t> rows;
    for (const auto& m : source) {
        const auto a = Polynomial::monomial(h.A, m);
        std::vector<Polynomial> eta = h.eta_R;
        auto img = h.normal_form(a.substitute(eta, h.gamma) - a.embedded(h.gamma) * u);
        for (const auto& [mm, c] : img.terms())
            rows.emplace(mm, rows.size());
        images.push_back(std::move(img));
    }
    IntegerMatrix M(rows.size(), source.size());
    for (std::size_t c = 0; c < images.size(); ++c)
        for (const auto& [mm, v] : images[c].terms())
            M(rows.at(mm), c) = v;
    std::vector<Polynomial> out;
    if (rows.empty()) {
        for (const auto& m : source)
            out.push_back(Polynomial::monomial(h.A, m));
        return out;
    }
    for (const auto& col : integer_kernel(M)) {
        Polynomial p(h.A);
        for (std::size_t i = 0; i < col.size(); ++i)
            p.add_term(source[i], col[i]);
        out.push_back(std::move(p));
    }
    return out;
}

/// H^s(Z/2; Z with the generator acting by (-1)^j).
inline ChartCell z2_group_cohomology(int s, int j)
{
    ChartCell c;
    const bool even = j % 2 == 0;
    if (s == 0) {
        if (even)
            c.rank = 1;
    } else if ((s - j) % 2 == 0) {
        c.torsion = {2};
    }
    return c;
}

} // namespace tmfalg
