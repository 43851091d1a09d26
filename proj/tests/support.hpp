#ifndef SALVETTI_TESTS_SUPPORT_HPP
#define SALVETTI_TESTS_SUPPORT_HPP

#include <salvetti/salvetti.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace support
{

using namespace salvetti;

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".arr"; }

struct Fixture
{
    std::string name;
    Arrangement arrangement;
    std::optional<RPoint> basepoint;
};

inline Fixture load(const std::string& name)
{
    std::string text = read_file(fixture_path(name));
    return Fixture{name, parse_arrangement(text), parse_basepoint_hint(text)};
}

inline const std::vector<std::string>& fixture_names()
{
    static const std::vector<std::string> names{"empty", "one_line", "boolean2", "euclidean", "deconed_a3"};
    return names;
}

inline RPoint point(std::initializer_list<Rational> xs) { return RPoint(xs); }

inline Rational q(long n, long d = 1) { return Rational(n, d); }

/// Random arrangement of m distinct hyperplanes in R^n with integer
/// coefficients in [-range, range].
inline Arrangement random_arrangement(std::mt19937& rng, std::size_t n, std::size_t m, int range = 5)
{
    std::uniform_int_distribution<int> co(-range, range);
    std::vector<Hyperplane> hs;
    while (hs.size() < m) {
        RVector a(n);
        bool zero = true;
        for (auto& x : a) {
            x = co(rng);
            zero = zero && x == 0;
        }
        if (zero)
            continue;
        Hyperplane h = Hyperplane::canonical(a, Rational(co(rng)));
        if (std::find(hs.begin(), hs.end(), h) == hs.end())
            hs.push_back(h);
    }
    return Arrangement(n, hs);
}

/// A random rational hint; the caller makes it generic.
inline RPoint random_point(std::mt19937& rng, std::size_t n)
{
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 7);
    RPoint p(n);
    for (auto& x : p)
        x = Rational(num(rng), den(rng));
    return p;
}

/// Three distinct generic points.
inline std::vector<RPoint> generic_points(const Geometry& g, std::mt19937& rng, std::size_t k = 3)
{
    std::vector<RPoint> out;
    while (out.size() < k) {
        RPoint x = find_generic_point(g, random_point(rng, g.dimension()));
        if (std::find(out.begin(), out.end(), x) == out.end())
            out.push_back(x);
    }
    return out;
}

/// Chamber adjacency distances from c by BFS over walls.
inline std::map<std::size_t, std::size_t> chamber_graph_distances(const Geometry& g, std::size_t c)
{
    const FacePoset& fp = g.faces;
    std::map<std::size_t, std::size_t> dist{{c, 0}};
    std::deque<std::size_t> queue{c};
    while (!queue.empty()) {
        std::size_t d = queue.front();
        queue.pop_front();
        for (std::size_t w : fp.upper_covers(d)) {
            std::size_t e = fp.opposite(d, w);
            if (dist.emplace(e, dist[d] + 1).second)
                queue.push_back(e);
        }
    }
    return dist;
}

/// Parses sums of monomials such as "1 - t4", "t2*t4 - t4" or "-t1*t3".
inline LaurentPoly parse_laurent(std::size_t vars, const std::string& text)
{
    LaurentPoly out(vars);
    std::istringstream in(text);
    std::string tok;
    int sign = 1;
    while (in >> tok) {
        if (tok == "+" || tok == "-") {
            sign = tok == "-" ? -1 : 1;
            continue;
        }
        if (tok[0] == '-') {
            sign = -sign;
            tok = tok.substr(1);
        }
        Monomial e(vars, 0);
        long coeff = 1;
        std::istringstream factors(tok);
        std::string f;
        while (std::getline(factors, f, '*')) {
            if (f[0] == 't')
                e.at(std::stoul(f.substr(1)) - 1) += 1;
            else
                coeff *= std::stol(f);
        }
        out += LaurentPoly::monomial(vars, e, Integer(sign * coeff));
        sign = 1;
    }
    return out;
}

/// Substitutes t_i -> t_{perm[i]}.
inline LaurentPoly rename_variables(const LaurentPoly& p, const std::vector<std::size_t>& perm)
{
    LaurentPoly out(p.variables());
    for (const auto& [e, c] : p.terms()) {
        Monomial r(p.variables(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            r.at(perm.at(i)) += e[i];
        out += LaurentPoly::monomial(p.variables(), r, c);
    }
    return out;
}

/// Index of the hyperplane nearest to x.
inline std::size_t nearest_hyperplane(const Arrangement& a, const RPoint& x)
{
    std::size_t best = 0;
    Rational best_d = -1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational v = a[i].evaluate(x);
        Rational d = v * v / squared_norm(a[i].normal);
        if (best_d < 0 || d < best_d) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

/// A sparse matrix with string labels, used to compare against tables.
using LabeledMatrix = std::map<std::pair<std::string, std::string>, LaurentPoly>;

/// True when b = diag(r) * a * diag(c) for units r and c, given a
/// bijective relabelling of rows and columns.
inline bool equal_up_to_units(const LabeledMatrix& a, const LabeledMatrix& b, std::vector<std::string> rows,
                              std::vector<std::string> cols)
{
    auto entry = [](const LabeledMatrix& m, const std::string& r, const std::string& c) -> std::optional<LaurentPoly> {
        auto it = m.find({r, c});
        if (it == m.end() || it->second.is_zero())
            return std::nullopt;
        return it->second;
    };
    for (const auto& r : rows)
        for (const auto& c : cols)
            if (entry(a, r, c).has_value() != entry(b, r, c).has_value())
                return false;

    // the unit from a to b on each entry must factor as row * column;
    // solve along a spanning forest of the nonzero pattern, then check all.
    std::map<std::string, LaurentPoly> ru, cu;
    std::size_t vars = 0;
    for (const auto& [k, v] : a)
        vars = std::max(vars, v.variables());
    for (const auto& [k, v] : b)
        vars = std::max(vars, v.variables());
    for (const auto& root : rows) {
        if (ru.count(root))
            continue;
        ru[root] = LaurentPoly::constant(vars, 1);
        std::deque<std::pair<bool, std::string>> queue{{true, root}};
        while (!queue.empty()) {
            auto [is_row, label] = queue.front();
            queue.pop_front();
            for (const auto& other : is_row ? cols : rows) {
                const std::string& r = is_row ? label : other;
                const std::string& c = is_row ? other : label;
                auto ea = entry(a, r, c);
                if (!ea)
                    continue;
                auto& known = is_row ? cu : ru;
                if (known.count(other))
                    continue;
                auto ratio = unit_ratio(*entry(b, r, c), *ea);
                if (!ratio)
                    return false;
                const LaurentPoly& mine = is_row ? ru.at(label) : cu.at(label);
                known[other] = *ratio * mine.unit_inverse();
                queue.push_back({!is_row, other});
            }
        }
    }
    for (const auto& r : rows)
        for (const auto& c : cols) {
            auto ea = entry(a, r, c);
            if (!ea)
                continue;
            LaurentPoly rc = ru.at(r) * (cu.count(c) ? cu.at(c) : LaurentPoly::constant(vars, 1));
            if (!(rc * *ea == *entry(b, r, c)))
                return false;
        }
    return true;
}

} // namespace support

#endif
