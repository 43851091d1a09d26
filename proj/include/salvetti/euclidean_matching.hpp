#ifndef SALVETTI_EUCLIDEAN_MATCHING_HPP
#define SALVETTI_EUCLIDEAN_MATCHING_HPP

#include "salvetti_complex.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace salvetti
{

class PreconditionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// How chambers at equal distance from the base point are ordered.
enum class TieBreak
{
    lexicographic,
    reverse_lexicographic,
};

struct ChamberOrder
{
    RPoint x0;
    std::vector<std::size_t> chambers;        // face ids, nearest first
    std::vector<std::size_t> position;        // per face id; meaningful for chambers
    std::vector<ChamberProjection> projection;  // per face id; meaningful for chambers
};

inline ChamberOrder euclidean_order(const Geometry& g, const RPoint& x0, TieBreak tie = TieBreak::lexicographic)
{
    if (!is_generic(g.flats, x0))
        throw PreconditionError("base point " + to_string(x0) + " is not generic");
    ChamberOrder o;
    o.x0 = x0;
    FlatDistances d = FlatDistances::compute(g.flats, x0);
    o.projection.resize(g.faces.size());
    o.position.assign(g.faces.size(), 0);
    for (std::size_t c : g.faces.chambers()) {
        o.projection[c] = project_chamber(g, d, c);
        o.chambers.push_back(c);
    }
    std::sort(o.chambers.begin(), o.chambers.end(), [&](std::size_t a, std::size_t b) {
        const Rational& da = o.projection[a].squared;
        const Rational& db = o.projection[b].squared;
        if (da != db)
            return da < db;
        const auto& sa = g.faces[a].sign;
        const auto& sb = g.faces[b].sign;
        return tie == TieBreak::lexicographic ? sa < sb : sb < sa;
    });
    for (std::size_t i = 0; i < o.chambers.size(); ++i)
        o.position[o.chambers[i]] = i;
    return o;
}

/// A matched pair: `high` has `low` in its boundary.
struct MatchedPair
{
    std::size_t high;
    std::size_t low;
    bool operator==(const MatchedPair&) const = default;
};

struct FiberKey
{
    std::size_t chamber;   // C
    std::size_t opposite;  // E
    auto operator<=>(const FiberKey&) const = default;
};

struct EuclideanMatching
{
    ChamberOrder order;
    std::size_t base_chamber = 0;            // C0
    std::vector<std::size_t> critical_face;  // F_C per chamber face id
    std::vector<std::size_t> critical_flat;  // X_C per chamber face id
    std::vector<std::size_t> n_class;        // per cell
    std::vector<FiberKey> eta;               // per cell
    std::map<FiberKey, std::vector<std::size_t>> fibers;
    std::vector<MatchedPair> pairs;
    std::vector<std::size_t> critical;       // cell ids; one per chamber
    std::vector<std::optional<std::size_t>> partner;  // per cell

    bool is_critical(std::size_t cell) const { return !partner[cell].has_value(); }
};

namespace detail
{

/// Directed graph on cells `nodes` with Hasse edges among them; matched
/// edges point upwards. True iff it has no directed cycle.
inline bool matching_is_acyclic(const SalvettiComplex& s, const std::vector<std::size_t>& nodes,
                                const std::map<std::size_t, std::size_t>& up)
{
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        local[nodes[i]] = i;
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t b : s.boundary(nodes[i])) {
            auto it = local.find(b);
            if (it == local.end())
                continue;
            auto m = up.find(b);
            if (m != up.end() && m->second == nodes[i])
                adj[it->second].push_back(i);
            else
                adj[i].push_back(it->second);
        }
    std::vector<int> state(nodes.size(), 0);
    for (std::size_t r = 0; r < nodes.size(); ++r) {
        if (state[r])
            continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{r, 0}};
        state[r] = 1;
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            if (k < adj[v].size()) {
                std::size_t w = adj[v][k++];
                if (state[w] == 1)
                    return false;
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

inline bool search_perfect_matching(const SalvettiComplex& s, const std::vector<std::size_t>& cells,
                                    std::map<std::size_t, std::size_t>& mate, std::map<std::size_t, std::size_t>& up)
{
    const std::set<std::size_t> members(cells.begin(), cells.end());
    std::function<bool()> rec = [&]() -> bool {
        std::size_t best = cells.size();
        std::vector<std::size_t> best_options;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            std::size_t c = cells[i];
            if (mate.count(c))
                continue;
            std::vector<std::size_t> options;
            for (std::size_t b : s.boundary(c))
                if (members.count(b) && !mate.count(b))
                    options.push_back(b);
            for (std::size_t b : s.coboundary(c))
                if (members.count(b) && !mate.count(b))
                    options.push_back(b);
            if (best == cells.size() || options.size() < best_options.size()) {
                best = i;
                best_options = std::move(options);
                if (best_options.empty())
                    return false;
            }
        }
        if (best == cells.size())
            return true;
        std::size_t c = cells[best];
        for (std::size_t o : best_options) {
            std::size_t high = s[c].dim > s[o].dim ? c : o;
            std::size_t low = high == c ? o : c;
            mate[c] = o;
            mate[o] = c;
            up[low] = high;
            if (matching_is_acyclic(s, cells, up) && rec())
                return true;
            mate.erase(c);
            mate.erase(o);
            up.erase(low);
        }
        return false;
    };
    return rec();
}

} // namespace detail

/// Perfect acyclic matching on a fiber. When the flat X_C is a plane the
/// fiber is a visible path e1 v1 e2 ... e_k below the top cell T, matched as
/// (v_i, e_i) for i < k and (e_k, T); otherwise a backtracking search.
inline std::vector<MatchedPair> fiber_matching(const SalvettiComplex& s, const std::vector<std::size_t>& cells,
                                               std::size_t plane_dimension)
{
    std::vector<MatchedPair> out;
    if (cells.size() % 2)
        throw std::logic_error("fiber of odd size has no perfect matching");

    if (plane_dimension == 2) {
        std::size_t low_dim = s[cells.front()].dim;
        for (std::size_t c : cells)
            low_dim = std::min(low_dim, s[c].dim);
        std::vector<std::size_t> top, edges, vertices;
        for (std::size_t c : cells)
            (s[c].dim == low_dim ? top : s[c].dim == low_dim + 1 ? edges : vertices).push_back(c);
        bool path_shaped = top.size() == 1 && edges.size() == vertices.size() + 1;
        std::map<std::size_t, std::vector<std::size_t>> nbr;
        for (std::size_t v : vertices)
            for (std::size_t e : edges)
                if (s.in_boundary(e, v)) {
                    nbr[v].push_back(e);
                    nbr[e].push_back(v);
                }
        for (std::size_t v : vertices)
            path_shaped = path_shaped && nbr[v].size() == 2;
        std::size_t start = cells.size();
        for (std::size_t e : edges)
            if (nbr[e].size() <= 1 && start == cells.size())
                start = e;  // edges are in id order, so this is the smallest endpoint
        if (path_shaped && start != cells.size()) {
            std::vector<MatchedPair> path;
            std::size_t e = start, prev_v = cells.size();
            std::size_t visited = 1;
            for (;;) {
                std::size_t v = cells.size();
                for (std::size_t w : nbr[e])
                    if (w != prev_v)
                        v = w;
                if (v == cells.size())
                    break;
                path.push_back({v, e});
                std::size_t next = nbr[v][0] == e ? nbr[v][1] : nbr[v][0];
                prev_v = v;
                e = next;
                visited += 2;
                if (visited > cells.size())
                    break;
            }
            path.push_back({e, top.front()});
            if (path.size() * 2 == cells.size() && s.in_boundary(top.front(), e))
                return path;
        }
    }

    std::map<std::size_t, std::size_t> mate, up;
    if (!detail::search_perfect_matching(s, cells, mate, up))
        throw std::logic_error("fiber without perfect acyclic matching");
    for (auto [low, high] : up)
        out.push_back({high, low});
    return out;
}

/// The cells <E^F, F> with E precedes-or-equals F, F inside X_C and
/// supp(F) within s(C, E).
inline std::vector<std::size_t> fiber(const Geometry& g, const SalvettiComplex& s, std::size_t xc_flat,
                                      std::size_t c, std::size_t e)
{
    std::vector<std::size_t> out;
    IndexSet sep = g.faces.separators(c, e);
    IndexSet xs = g.flats[xc_flat].support;
    if (!xs.subset_of(sep))
        return out;
    for (std::size_t f : g.faces.closure(e)) {
        IndexSet fs = g.faces[f].support;
        if (xs.subset_of(fs) && fs.subset_of(sep))
            out.push_back(s.at(g.faces.opposite(e, f), f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// First chamber C of the order with C.F = D.
inline std::size_t n_class_scan(const Geometry& g, const SalvettiComplex& s, const ChamberOrder& o, std::size_t cell)
{
    for (std::size_t c : o.chambers)
        if (g.faces.project_face(c, s[cell].face) == s[cell].chamber)
            return c;
    throw std::logic_error("cell in no S(C)");
}

/// The unique chamber C with C.F = D and F inside X_C.
inline std::size_t n_class_by_flat(const Geometry& g, const SalvettiComplex& s, const std::vector<std::size_t>& xc,
                                   std::size_t cell)
{
    std::optional<std::size_t> found;
    const auto& [d, f, dim] = s[cell];
    for (std::size_t c : g.faces.chambers()) {
        if (g.faces.project_face(c, f) != d)
            continue;
        if (!g.flats[xc[c]].support.subset_of(g.faces[f].support))
            continue;
        if (found)
            throw std::logic_error("cell in two N-classes");
        found = c;
    }
    if (!found)
        throw std::logic_error("cell in no N-class");
    return *found;
}

inline EuclideanMatching assemble_matching(const Geometry& g, const SalvettiComplex& s, const RPoint& x0,
                                           TieBreak tie = TieBreak::lexicographic)
{
    EuclideanMatching m;
    m.order = euclidean_order(g, x0, tie);
    m.base_chamber = m.order.chambers.front();
    m.critical_face.assign(g.faces.size(), 0);
    m.critical_flat.assign(g.faces.size(), 0);
    for (std::size_t c : g.faces.chambers()) {
        m.critical_face[c] = m.order.projection[c].face;
        m.critical_flat[c] = g.faces[m.critical_face[c]].flat;
    }

    m.n_class.assign(s.size(), 0);
    m.eta.assign(s.size(), FiberKey{0, 0});
    for (std::size_t i = 0; i < s.size(); ++i) {
        m.n_class[i] = n_class_scan(g, s, m.order, i);
        m.eta[i] = FiberKey{m.n_class[i], g.faces.opposite(s[i].chamber, s[i].face)};
        m.fibers[m.eta[i]].push_back(i);
    }

    m.partner.assign(s.size(), std::nullopt);
    for (const auto& [key, cells] : m.fibers) {
        std::size_t c = key.chamber;
        std::size_t fc = m.critical_face[c];
        if (key.opposite == g.faces.opposite(c, fc)) {
            if (cells.size() != 1 || s[cells[0]].chamber != c || s[cells[0]].face != fc)
                throw std::logic_error("special fiber is not the single critical cell");
            m.critical.push_back(cells[0]);
            continue;
        }
        std::size_t dim = g.flats[m.critical_flat[c]].space.dimension();
        for (const auto& p : fiber_matching(s, cells, dim)) {
            m.pairs.push_back(p);
            m.partner[p.high] = p.low;
            m.partner[p.low] = p.high;
        }
    }
    std::sort(m.critical.begin(), m.critical.end());
    std::sort(m.pairs.begin(), m.pairs.end(), [](const MatchedPair& a, const MatchedPair& b) {
        return std::tie(a.high, a.low) < std::tie(b.high, b.low);
    });
    return m;
}

/// Definition check: J(C) is the principal ideal of flats inside X_C.
inline bool audit_principal_ideals(const Geometry& g, const EuclideanMatching& m)
{
    for (std::size_t k = 0; k < m.order.chambers.size(); ++k) {
        std::size_t c = m.order.chambers[k];
        IndexSet xs = g.flats[m.critical_flat[c]].support;
        for (const auto& x : g.flats.flats()) {
            bool in_j = true;
            for (std::size_t j = 0; j < k && in_j; ++j)
                in_j = x.support.intersects(g.faces.separators(c, m.order.chambers[j]));
            if (in_j != xs.subset_of(x.support))
                return false;
        }
    }
    return true;
}

struct VerificationReport
{
    static constexpr std::array<const char*, 6> names{
        "pairs are covers", "cells matched at most once", "acyclic", "fiber homogeneous", "critical cells",
        "finite alternating paths"};

    std::array<bool, 6> passed{true, true, true, true, true, true};
    std::vector<std::string> violations;
    std::size_t alternating_paths = 0;

    bool ok() const { return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; }); }

    void fail(std::size_t check, std::string what)
    {
        passed[check] = false;
        violations.push_back("check " + std::to_string(check + 1) + ": " + std::move(what));
    }
};

/// Runs the six checks on an arbitrary list of pairs against the fiber map
/// and projections of `m`.
inline VerificationReport verify_matching(const SalvettiComplex& s, const EuclideanMatching& m,
                                          const std::vector<MatchedPair>& pairs)
{
    VerificationReport r;
    std::vector<int> uses(s.size(), 0);
    std::map<std::size_t, std::size_t> up;
    std::vector<std::optional<std::size_t>> partner(s.size());
    for (const auto& p : pairs) {
        if (p.high >= s.size() || p.low >= s.size() || s[p.high].dim != s[p.low].dim + 1 ||
            !s.in_boundary(p.low, p.high))
            r.fail(0, s.label(p.high) + " / " + s.label(p.low));
        if (p.high < s.size() && p.low < s.size()) {
            ++uses[p.high];
            ++uses[p.low];
            up[p.low] = p.high;
            partner[p.high] = p.low;
            partner[p.low] = p.high;
        }
        if (p.high < s.size() && p.low < s.size() && !(m.eta[p.high] == m.eta[p.low]))
            r.fail(3, s.label(p.high) + " / " + s.label(p.low));
    }
    for (std::size_t i = 0; i < s.size(); ++i)
        if (uses[i] > 1)
            r.fail(1, s.label(i) + " in " + std::to_string(uses[i]) + " pairs");

    std::vector<std::size_t> all(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        all[i] = i;
    if (!detail::matching_is_acyclic(s, all, up))
        r.fail(2, "directed cycle in the modified Hasse diagram");

    std::vector<std::size_t> expected;
    for (std::size_t c : m.order.chambers)
        expected.push_back(s.at(c, m.critical_face[c]));
    std::sort(expected.begin(), expected.end());
    std::vector<std::size_t> found;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (uses[i] == 0)
            found.push_back(i);
    if (found != expected)
        r.fail(4, std::to_string(found.size()) + " unmatched cells, expected " + std::to_string(expected.size()));

    // paths(t) counts alternating paths from a (dim k-1) cell t to critical cells
    std::vector<int> state(s.size(), 0);
    std::vector<std::size_t> count(s.size(), 0);
    bool cyclic = false;
    std::function<std::size_t(std::size_t)> paths = [&](std::size_t t) -> std::size_t {
        if (state[t] == 2)
            return count[t];
        if (state[t] == 1) {
            cyclic = true;
            return 0;
        }
        state[t] = 1;
        std::size_t n = 0;
        if (!partner[t]) {
            n = 1;
        } else if (s[*partner[t]].dim == s[t].dim + 1) {
            for (std::size_t b : s.boundary(*partner[t]))
                if (b != t)
                    n += paths(b);
        }
        state[t] = 2;
        return count[t] = n;
    };
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!partner[i])
            for (std::size_t b : s.boundary(i))
                r.alternating_paths += paths(b);
    if (cyclic)
        r.fail(5, "an alternating path revisits a cell");
    return r;
}

inline VerificationReport verify_matching(const SalvettiComplex& s, const EuclideanMatching& m)
{
    return verify_matching(s, m, m.pairs);
}

} // namespace salvetti

#endif
